#include "genbounds/avgjoint/learner.hpp"

#include <cmath>

#include "genbounds/errors.hpp"
#include "genbounds/measures/measures.hpp"

namespace genbounds::avgjoint {

namespace {

std::size_t checked_tuple_count(int n, std::size_t z_size, const SizeCaps& caps) {
    if (n < 1) throw ValidationError("learner: sample count must be >= 1");
    std::size_t count = 1;
    for (int i = 0; i < n; ++i) {
        if (count > caps.max_tuples / z_size) {
            throw SizeCapExceeded("learner: |Z|^n exceeds enumeration cap of " +
                                  std::to_string(caps.max_tuples));
        }
        count *= z_size;
    }
    return count;
}

}  // namespace

LearnerSpec::LearnerSpec(int n, Support z_support, Support w_support, std::vector<double> p_s,
                         std::vector<double> p_w_given_s, SizeCaps caps)
    : n_(n), z_support_(std::move(z_support)), w_support_(std::move(w_support)),
      p_s_(std::move(p_s)), p_w_given_s_(std::move(p_w_given_s)) {
    if (z_support_.empty() || w_support_.empty()) {
        throw ValidationError("learner: empty alphabet");
    }
    const std::size_t tuples = checked_tuple_count(n_, z_support_.size(), caps);
    if (p_s_.size() != tuples) {
        throw ValidationError("learner: p_s has " + std::to_string(p_s_.size()) +
                              " entries, expected |Z|^n = " + std::to_string(tuples));
    }
    if (p_w_given_s_.size() != tuples * w_support_.size()) {
        throw ValidationError("learner: conditional table size mismatch");
    }

    double total = 0.0;
    for (double p : p_s_) {
        if (!(p >= 0.0)) throw ValidationError("learner: negative entry in p_s");
        total += p;
    }
    if (std::abs(total - 1.0) > measures::kProbSumTol) {
        throw ValidationError("learner: p_s sums to " + std::to_string(total));
    }
    for (double& p : p_s_) p /= total;

    for (std::size_t s = 0; s < tuples; ++s) {
        double row = 0.0;
        for (std::size_t w = 0; w < w_support_.size(); ++w) {
            const double p = p_w_given_s_[s * w_support_.size() + w];
            if (!(p >= 0.0)) throw ValidationError("learner: negative conditional probability");
            row += p;
        }
        if (std::abs(row - 1.0) > measures::kProbSumTol) {
            throw ValidationError("learner: conditional row for tuple " + std::to_string(s) +
                                  " sums to " + std::to_string(row));
        }
        for (std::size_t w = 0; w < w_support_.size(); ++w) {
            p_w_given_s_[s * w_support_.size() + w] /= row;
        }
    }
}

LearnerSpec LearnerSpec::iid(int n, Support z_support, const std::vector<double>& p_z,
                             Support w_support, std::vector<double> p_w_given_s, SizeCaps caps) {
    if (p_z.size() != z_support.size()) {
        throw ValidationError("learner: p_z length does not match z_support");
    }
    const std::size_t z = z_support.size();
    const std::size_t tuples = checked_tuple_count(n, z, caps);
    std::vector<double> p_s(tuples, 1.0);
    for (std::size_t t = 0; t < tuples; ++t) {
        std::size_t rem = t;
        for (int i = n - 1; i >= 0; --i) {
            p_s[t] *= p_z[rem % z];
            rem /= z;
        }
    }
    return LearnerSpec(n, std::move(z_support), std::move(w_support), std::move(p_s),
                       std::move(p_w_given_s), caps);
}

std::size_t LearnerSpec::digit(std::size_t tuple, int i) const {
    const std::size_t z = z_support_.size();
    std::size_t div = 1;
    for (int k = n_ - 1 - i; k > 0; --k) div *= z;
    return (tuple / div) % z;
}

DiscreteDist LearnerSpec::sample_marginal(int i) const {
    if (i < 0 || i >= n_) throw IndexOutOfRange("sample_marginal: position out of range");
    std::vector<double> m(z_support_.size(), 0.0);
    for (std::size_t t = 0; t < p_s_.size(); ++t) m[digit(t, i)] += p_s_[t];
    return DiscreteDist(z_support_, std::move(m));
}

bool LearnerSpec::is_iid(double tol) const {
    std::vector<DiscreteDist> marginals;
    marginals.reserve(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) marginals.push_back(sample_marginal(i));
    for (int i = 1; i < n_; ++i) {
        for (std::size_t z = 0; z < z_support_.size(); ++z) {
            if (std::abs(marginals[0].prob(z) - marginals[static_cast<std::size_t>(i)].prob(z)) >
                tol) {
                return false;
            }
        }
    }
    for (std::size_t t = 0; t < p_s_.size(); ++t) {
        double prod = 1.0;
        for (int i = 0; i < n_; ++i) prod *= marginals[0].prob(digit(t, i));
        if (std::abs(prod - p_s_[t]) > tol) return false;
    }
    return true;
}

LossTable::LossTable(double a, double b, std::size_t w_size, std::size_t z_size,
                     std::vector<double> values)
    : a_(a), b_(b), w_size_(w_size), z_size_(z_size), values_(std::move(values)) {
    if (!(a_ >= 0.0)) throw ValidationError("loss: range must be nonnegative, got a = " +
                                            std::to_string(a_));
    if (!(b_ > a_)) throw ValidationError("loss: must have b > a");
    if (values_.size() != w_size_ * z_size_) {
        throw ValidationError("loss: value matrix size mismatch");
    }
    for (double v : values_) {
        if (!(v >= a_ - 1e-15) || !(v <= b_ + 1e-15)) {
            throw ValidationError("loss: entry " + std::to_string(v) +
                                  " outside declared range [" + std::to_string(a_) + ", " +
                                  std::to_string(b_) + "]");
        }
    }
}

JointTable per_sample_joint(const LearnerSpec& learner, int i) {
    if (i < 1 || i > learner.n()) {
        throw IndexOutOfRange("per_sample_joint: i = " + std::to_string(i) +
                              " outside 1.." + std::to_string(learner.n()));
    }
    const int pos = i - 1;
    const std::size_t nw = learner.w_size();
    const std::size_t nz = learner.z_size();
    std::vector<double> p(nw * nz, 0.0);
    for (std::size_t t = 0; t < learner.tuple_count(); ++t) {
        const double ps = learner.p_s(t);
        if (ps == 0.0) continue;
        const std::size_t zj = learner.digit(t, pos);
        for (std::size_t w = 0; w < nw; ++w) {
            p[w * nz + zj] += ps * learner.p_w_given_s(t, w);
        }
    }
    return JointTable(learner.w_support(), learner.z_support(), std::move(p));
}

AverageJoint average_joint(const LearnerSpec& learner) {
    std::vector<JointTable> per;
    per.reserve(static_cast<std::size_t>(learner.n()));
    for (int i = 1; i <= learner.n(); ++i) per.push_back(per_sample_joint(learner, i));
    JointTable avg = JointTable::average(per);
    DiscreteDist pw = avg.marginal_w();
    DiscreteDist pz = avg.marginal_z();
    return AverageJoint{std::move(avg), std::move(pw), std::move(pz), std::move(per)};
}

bool is_symmetric(const LearnerSpec& learner, double tol) {
    const JointTable first = per_sample_joint(learner, 1);
    const DiscreteDist mz_first = first.marginal_z();
    for (int i = 2; i <= learner.n(); ++i) {
        const JointTable other = per_sample_joint(learner, i);
        const DiscreteDist mz_other = other.marginal_z();
        for (std::size_t z = 0; z < learner.z_size(); ++z) {
            // conditionals are undefined at zero-mass sample values
            if (mz_first.prob(z) <= 0.0 || mz_other.prob(z) <= 0.0) continue;
            for (std::size_t w = 0; w < learner.w_size(); ++w) {
                const double a = first.at(w, z) / mz_first.prob(z);
                const double b = other.at(w, z) / mz_other.prob(z);
                if (std::abs(a - b) > tol) return false;
            }
        }
    }
    return true;
}

namespace {

void require_loss_shape(const LearnerSpec& learner, const LossTable& loss) {
    if (loss.w_size() != learner.w_size() || loss.z_size() != learner.z_size()) {
        throw AlphabetMismatch("loss table shape does not match learner alphabets");
    }
}

double empirical_risk(const LearnerSpec& learner, const LossTable& loss, std::size_t tuple,
                      std::size_t w) {
    double acc = 0.0;
    for (int i = 0; i < learner.n(); ++i) acc += loss.at(w, learner.digit(tuple, i));
    return acc / static_cast<double>(learner.n());
}

}  // namespace

double gen_error_direct(const LearnerSpec& learner, const LossTable& loss) {
    require_loss_shape(learner, loss);
    const std::size_t nw = learner.w_size();
    // population risk per hypothesis: L_P(w) = E_{P_S}[L_E(w, S)]
    std::vector<double> pop(nw, 0.0);
    for (std::size_t t = 0; t < learner.tuple_count(); ++t) {
        const double ps = learner.p_s(t);
        if (ps == 0.0) continue;
        for (std::size_t w = 0; w < nw; ++w) pop[w] += ps * empirical_risk(learner, loss, t, w);
    }
    double gen = 0.0;
    for (std::size_t t = 0; t < learner.tuple_count(); ++t) {
        const double ps = learner.p_s(t);
        if (ps == 0.0) continue;
        for (std::size_t w = 0; w < nw; ++w) {
            const double pw = learner.p_w_given_s(t, w);
            if (pw == 0.0) continue;
            gen += ps * pw * (pop[w] - empirical_risk(learner, loss, t, w));
        }
    }
    return gen;
}

double avg_emp_risk(const JointTable& joint, const LossTable& loss) {
    if (loss.w_size() != joint.w_size() || loss.z_size() != joint.z_size()) {
        throw AlphabetMismatch("loss table shape does not match joint table");
    }
    double acc = 0.0;
    for (std::size_t w = 0; w < joint.w_size(); ++w) {
        for (std::size_t z = 0; z < joint.z_size(); ++z) {
            acc += joint.at(w, z) * loss.at(w, z);
        }
    }
    return acc;
}

double gen_error_via_avg(const LearnerSpec& learner, const LossTable& loss) {
    require_loss_shape(learner, loss);
    const AverageJoint avg = average_joint(learner);
    const JointTable prod = JointTable::product(avg.hypothesis_marginal, avg.sample_marginal);
    return avg_emp_risk(prod, loss) - avg_emp_risk(avg.joint, loss);
}

double emp_risk_diff(const LearnerSpec& a, const LearnerSpec& b, const LossTable& loss) {
    if (!a.same_alphabets(b)) throw AlphabetMismatch("emp_risk_diff: alphabets differ");
    if (a.n() != b.n()) {
        throw DataDistMismatch("emp_risk_diff: learners have different sample counts; compare "
                               "their average joints with avg_emp_risk instead");
    }
    for (std::size_t t = 0; t < a.tuple_count(); ++t) {
        if (std::abs(a.p_s(t) - b.p_s(t)) > 1e-12) {
            throw DataDistMismatch("emp_risk_diff: learners do not share p_s");
        }
    }
    require_loss_shape(a, loss);
    const JointTable ja = average_joint(a).joint;
    const JointTable jb = average_joint(b).joint;
    return avg_emp_risk(ja, loss) - avg_emp_risk(jb, loss);
}

double dataset_mutual_information(const LearnerSpec& learner) {
    // I(W; S) by direct enumeration: sum_s sum_w P_S(s) P(w|s) log(P(w|s)/P_W(w))
    const std::size_t nw = learner.w_size();
    std::vector<double> pw(nw, 0.0);
    for (std::size_t t = 0; t < learner.tuple_count(); ++t) {
        const double ps = learner.p_s(t);
        if (ps == 0.0) continue;
        for (std::size_t w = 0; w < nw; ++w) pw[w] += ps * learner.p_w_given_s(t, w);
    }
    double mi = 0.0;
    for (std::size_t t = 0; t < learner.tuple_count(); ++t) {
        const double ps = learner.p_s(t);
        if (ps == 0.0) continue;
        for (std::size_t w = 0; w < nw; ++w) {
            const double c = learner.p_w_given_s(t, w);
            if (c == 0.0) continue;
            mi += ps * c * std::log(c / pw[w]);
        }
    }
    return mi;
}

}  // namespace genbounds::avgjoint
