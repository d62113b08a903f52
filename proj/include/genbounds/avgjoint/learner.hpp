#pragma once

#include <cstddef>
#include <vector>

#include "genbounds/measures/joint_table.hpp"

namespace genbounds::avgjoint {

using measures::DiscreteDist;
using measures::JointTable;
using measures::Support;

struct SizeCaps {
    // reject learners whose tuple space |Z|^n exceeds this
    std::size_t max_tuples = 1'000'000;
};

// A randomized learning algorithm over finite alphabets: the law P_S of the
// n training samples as a free table over Z^n (no i.i.d. assumption), and
// one conditional distribution over hypotheses per sample tuple.
//
// Tuples are indexed in row-major order with the first sample most
// significant: index(s) = sum_i digit(s_i) * |Z|^(n-i).
class LearnerSpec {
  public:
    LearnerSpec(int n, Support z_support, Support w_support, std::vector<double> p_s,
                std::vector<double> p_w_given_s, SizeCaps caps = {});

    // Convenience constructor for i.i.d. samples: P_S = product of p_z.
    static LearnerSpec iid(int n, Support z_support, const std::vector<double>& p_z,
                           Support w_support, std::vector<double> p_w_given_s, SizeCaps caps = {});

    int n() const { return n_; }
    const Support& z_support() const { return z_support_; }
    const Support& w_support() const { return w_support_; }
    std::size_t z_size() const { return z_support_.size(); }
    std::size_t w_size() const { return w_support_.size(); }
    std::size_t tuple_count() const { return p_s_.size(); }

    double p_s(std::size_t tuple) const { return p_s_[tuple]; }
    double p_w_given_s(std::size_t tuple, std::size_t wi) const {
        return p_w_given_s_[tuple * w_support_.size() + wi];
    }

    // digit of sample position i (0-based) within a tuple index
    std::size_t digit(std::size_t tuple, int i) const;

    // True when P_S factorizes into n identical per-position marginals,
    // entrywise within tol.
    bool is_iid(double tol = 1e-9) const;

    // Marginal law of sample position i (0-based).
    DiscreteDist sample_marginal(int i) const;

    bool same_alphabets(const LearnerSpec& other) const {
        return measures::same_labels(z_support_, other.z_support_) &&
               measures::same_labels(w_support_, other.w_support_);
    }

  private:
    int n_;
    Support z_support_;
    Support w_support_;
    std::vector<double> p_s_;
    std::vector<double> p_w_given_s_;  // tuple-major, |Z|^n x |W|
};

// Nonnegative loss values l(w, z) with a declared range [a, b].
class LossTable {
  public:
    LossTable(double a, double b, std::size_t w_size, std::size_t z_size,
              std::vector<double> values);

    double a() const { return a_; }
    double b() const { return b_; }
    std::size_t w_size() const { return w_size_; }
    std::size_t z_size() const { return z_size_; }
    double at(std::size_t wi, std::size_t zj) const { return values_[wi * z_size_ + zj]; }
    const std::vector<double>& values() const { return values_; }

  private:
    double a_, b_;
    std::size_t w_size_, z_size_;
    std::vector<double> values_;
};

// Joint law of (W, Z_i) for sample position i in 1..n, by exact enumeration
// over Z^n.
JointTable per_sample_joint(const LearnerSpec& learner, int i);

struct AverageJoint {
    JointTable joint;                 // (1/n) sum of per-sample joints
    DiscreteDist hypothesis_marginal; // P_W
    DiscreteDist sample_marginal;     // average of the per-position sample laws
    std::vector<JointTable> per_sample;
};

AverageJoint average_joint(const LearnerSpec& learner);

// True when all per-sample conditionals P(W | Z_i = z) coincide with the
// first position's, up to tol. Sample values with zero marginal mass at
// some position are skipped there.
bool is_symmetric(const LearnerSpec& learner, double tol = 1e-9);

// Expected generalization error straight from its definition: expected
// population risk minus expected empirical risk, enumerated over Z^n.
double gen_error_direct(const LearnerSpec& learner, const LossTable& loss);

// Same quantity through the average joint: E_{P_W x avg P_Z}[l] minus
// E_{avg joint}[l].
double gen_error_via_avg(const LearnerSpec& learner, const LossTable& loss);

// Expected loss under a joint table (the average-joint empirical risk).
double avg_emp_risk(const JointTable& joint, const LossTable& loss);

// Difference of expected empirical risks of two learners sharing the same
// data distribution and alphabets.
double emp_risk_diff(const LearnerSpec& a, const LearnerSpec& b, const LossTable& loss);

// Full mutual information I(W; S) between hypothesis and the whole tuple.
double dataset_mutual_information(const LearnerSpec& learner);

}  // namespace genbounds::avgjoint
