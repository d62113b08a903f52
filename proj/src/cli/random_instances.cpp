#include "genbounds/cli/random_instances.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace genbounds::cli {

using measures::DiscreteDist;
using measures::JointTable;
using measures::Point;
using measures::Support;

Support indexed_support(const std::string& prefix, std::size_t size) {
    Support s;
    s.reserve(size);
    for (std::size_t i = 0; i < size; ++i) {
        s.emplace_back(prefix + std::to_string(i), std::vector<double>{static_cast<double>(i)});
    }
    return s;
}

Support random_support_1d(Rng& rng, std::size_t size, double lo, double hi) {
    Support s;
    s.reserve(size);
    for (std::size_t i = 0; i < size; ++i) {
        s.emplace_back("x" + std::to_string(i), std::vector<double>{rng.uniform(lo, hi)});
    }
    return s;
}

namespace {

std::vector<double> random_simplex(Rng& rng, std::size_t size, double min_weight) {
    std::vector<double> v(size);
    double sum = 0.0;
    for (double& x : v) {
        x = min_weight + rng.uniform();
        sum += x;
    }
    for (double& x : v) x /= sum;
    return v;
}

}  // namespace

DiscreteDist random_dist(Rng& rng, Support support, double min_weight) {
    auto probs = random_simplex(rng, support.size(), min_weight);
    return DiscreteDist(std::move(support), std::move(probs));
}

JointTable random_joint(Rng& rng, std::size_t w_size, std::size_t z_size, double min_weight) {
    auto p = random_simplex(rng, w_size * z_size, min_weight);
    return JointTable(indexed_support("w", w_size), indexed_support("z", z_size), std::move(p));
}

avgjoint::LearnerSpec random_learner(Rng& rng, std::size_t w_size, std::size_t z_size, int n,
                                     bool iid, double min_weight) {
    Support w = indexed_support("w", w_size);
    Support z = indexed_support("z", z_size);
    std::size_t tuples = 1;
    for (int i = 0; i < n; ++i) tuples *= z_size;

    std::vector<double> cond;
    cond.reserve(tuples * w_size);
    for (std::size_t t = 0; t < tuples; ++t) {
        auto row = random_simplex(rng, w_size, min_weight);
        cond.insert(cond.end(), row.begin(), row.end());
    }

    if (iid) {
        auto p_z = random_simplex(rng, z_size, min_weight);
        return avgjoint::LearnerSpec::iid(n, std::move(z), p_z, std::move(w), std::move(cond));
    }
    auto p_s = random_simplex(rng, tuples, min_weight);
    return avgjoint::LearnerSpec(n, std::move(z), std::move(w), std::move(p_s), std::move(cond));
}

avgjoint::LearnerSpec relabeled_learner(Rng& rng, const avgjoint::LearnerSpec& base,
                                        double min_weight) {
    std::vector<double> p_s(base.tuple_count());
    for (std::size_t t = 0; t < p_s.size(); ++t) p_s[t] = base.p_s(t);
    std::vector<double> cond;
    cond.reserve(base.tuple_count() * base.w_size());
    for (std::size_t t = 0; t < base.tuple_count(); ++t) {
        auto row = random_simplex(rng, base.w_size(), min_weight);
        cond.insert(cond.end(), row.begin(), row.end());
    }
    return avgjoint::LearnerSpec(base.n(), base.z_support(), base.w_support(), std::move(p_s),
                                 std::move(cond));
}

avgjoint::LearnerSpec random_symmetric_learner(Rng& rng, std::size_t w_size, std::size_t z_size,
                                               int n, double min_weight) {
    Support w = indexed_support("w", w_size);
    Support z = indexed_support("z", z_size);
    std::size_t tuples = 1;
    for (int i = 0; i < n; ++i) tuples *= z_size;

    // one conditional row per sorted sample multiset
    std::map<std::vector<std::size_t>, std::vector<double>> rows;
    std::vector<double> cond(tuples * w_size);
    avgjoint::LearnerSpec probe = random_learner(rng, w_size, z_size, n, true, min_weight);
    for (std::size_t t = 0; t < tuples; ++t) {
        std::vector<std::size_t> digits;
        for (int i = 0; i < n; ++i) digits.push_back(probe.digit(t, i));
        std::sort(digits.begin(), digits.end());
        auto it = rows.find(digits);
        if (it == rows.end()) {
            it = rows.emplace(digits, random_simplex(rng, w_size, min_weight)).first;
        }
        std::copy(it->second.begin(), it->second.end(),
                  cond.begin() + static_cast<std::ptrdiff_t>(t * w_size));
    }
    auto p_z = random_simplex(rng, z_size, min_weight);
    return avgjoint::LearnerSpec::iid(n, std::move(z), p_z, std::move(w), std::move(cond));
}

avgjoint::LossTable random_loss(Rng& rng, std::size_t w_size, std::size_t z_size, double a,
                                double b) {
    std::vector<double> values(w_size * z_size);
    for (double& v : values) v = rng.uniform(a, b);
    return avgjoint::LossTable(a, b, w_size, z_size, std::move(values));
}

std::vector<double> random_lipschitz_witness(Rng& rng, const measures::Support& support) {
    std::vector<std::size_t> order(support.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return support[a].coord[0] < support[b].coord[0];
    });
    std::vector<double> g(support.size(), 0.0);
    g[order[0]] = rng.uniform(-1.0, 1.0);
    for (std::size_t k = 1; k < order.size(); ++k) {
        const double gap = support[order[k]].coord[0] - support[order[k - 1]].coord[0];
        g[order[k]] = g[order[k - 1]] + rng.uniform(-gap, gap);
    }
    return g;
}

std::vector<double> random_witness(Rng& rng, std::size_t size, double lo, double hi) {
    std::vector<double> g(size);
    for (double& x : g) x = rng.uniform(lo, hi);
    return g;
}

}  // namespace genbounds::cli
