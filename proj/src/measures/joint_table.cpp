#include "genbounds/measures/joint_table.hpp"

#include <cmath>

#include "genbounds/errors.hpp"

namespace genbounds::measures {

JointTable::JointTable(Support w_support, Support z_support, std::vector<double> p)
    : w_support_(std::move(w_support)), z_support_(std::move(z_support)), p_(std::move(p)) {
    if (w_support_.empty() || z_support_.empty()) {
        throw ValidationError("joint table: empty alphabet");
    }
    if (p_.size() != w_support_.size() * z_support_.size()) {
        throw ValidationError("joint table: matrix size does not match alphabets");
    }
    double sum = 0.0;
    for (double v : p_) {
        if (!(v >= 0.0)) throw ValidationError("joint table: negative or non-finite entry");
        sum += v;
    }
    if (std::abs(sum - 1.0) > kProbSumTol) {
        throw ValidationError("joint table: entries sum to " + std::to_string(sum) +
                              ", outside tolerance");
    }
    for (double& v : p_) v /= sum;
}

JointTable JointTable::product(const DiscreteDist& w, const DiscreteDist& z) {
    std::vector<double> p(w.size() * z.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
        for (std::size_t j = 0; j < z.size(); ++j) {
            p[i * z.size() + j] = w.prob(i) * z.prob(j);
        }
    }
    return JointTable(w.support(), z.support(), std::move(p));
}

JointTable JointTable::average(std::span<const JointTable> tables) {
    if (tables.empty()) throw ValidationError("joint table average: no tables");
    const JointTable& first = tables.front();
    std::vector<double> p(first.data().size(), 0.0);
    const double w = 1.0 / static_cast<double>(tables.size());
    for (const JointTable& t : tables) {
        if (!t.same_alphabets(first)) {
            throw AlphabetMismatch("joint table average: alphabets differ");
        }
        for (std::size_t k = 0; k < p.size(); ++k) p[k] += w * t.data()[k];
    }
    return JointTable(first.w_support(), first.z_support(), std::move(p));
}

DiscreteDist JointTable::marginal_w() const {
    std::vector<double> m(w_support_.size(), 0.0);
    for (std::size_t i = 0; i < w_support_.size(); ++i) {
        for (std::size_t j = 0; j < z_support_.size(); ++j) m[i] += at(i, j);
    }
    return DiscreteDist(w_support_, std::move(m));
}

DiscreteDist JointTable::marginal_z() const {
    std::vector<double> m(z_support_.size(), 0.0);
    for (std::size_t i = 0; i < w_support_.size(); ++i) {
        for (std::size_t j = 0; j < z_support_.size(); ++j) m[j] += at(i, j);
    }
    return DiscreteDist(z_support_, std::move(m));
}

DiscreteDist JointTable::conditional_w_given_z(std::size_t zj) const {
    if (zj >= z_support_.size()) throw IndexOutOfRange("conditional: z index out of range");
    double mass = 0.0;
    for (std::size_t i = 0; i < w_support_.size(); ++i) mass += at(i, zj);
    if (mass <= 0.0) {
        throw ValidationError("conditional: zero-probability sample point '" +
                              z_support_[zj].label + "'");
    }
    std::vector<double> c(w_support_.size());
    for (std::size_t i = 0; i < w_support_.size(); ++i) c[i] = at(i, zj) / mass;
    return DiscreteDist(w_support_, std::move(c));
}

DiscreteDist JointTable::flatten() const {
    Support pairs;
    pairs.reserve(p_.size());
    for (const auto& w : w_support_) {
        for (const auto& z : z_support_) {
            pairs.emplace_back(w.label + "|" + z.label);
        }
    }
    return DiscreteDist(std::move(pairs), p_);
}

}  // namespace genbounds::measures
