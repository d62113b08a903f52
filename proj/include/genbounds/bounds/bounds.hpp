#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "genbounds/avgjoint/learner.hpp"
#include "genbounds/gaussian/gaussian.hpp"
#include "genbounds/measures/metric.hpp"

namespace genbounds::bounds {

// Regularity of the loss, declared by the caller. A bounded loss in [a, b]
// is (b - a)/2 sub-Gaussian under any distribution and (b - a)-Lipschitz
// under the indicator metric.
class LossRegularity {
  public:
    enum class Kind { kLipschitz, kBounded, kSubgaussian };

    static LossRegularity lipschitz(double l);
    static LossRegularity bounded(double a, double b);
    static LossRegularity subgaussian(double sigma);

    Kind kind() const { return kind_; }
    double sub_gaussian_sigma() const;  // bounded -> (b - a) / 2
    double lipschitz_constant() const;  // bounded -> b - a
    double a() const { return a_; }
    double b() const { return b_; }

  private:
    LossRegularity(Kind k, double a, double b, double s)
        : kind_(k), a_(a), b_(b), sigma_(s) {}
    Kind kind_;
    double a_ = 0.0, b_ = 0.0, sigma_ = 0.0;
};

// --- bound arithmetic (all inputs already in nats) ---

double avg_w_bound(double lipschitz, double expected_w);
double ind_w_bound(double lipschitz, std::span<const double> per_sample_expected_w);
double avg_tv_bound(double a, double b, double tv_value);
double ind_tv_bound(double a, double b, std::span<const double> per_sample_tv);
double avg_kl_bound(double sigma_sg, double d_value);
double ismi_bound(double sigma_sg, std::span<const double> mi_values);
// sqrt((2 sigma^2 / n) sum I(W; Z_i)); sits between the average-joint KL
// bound and the full-dataset bound.
double per_sample_kl_chain(double sigma_sg, std::span<const double> mi_values);
double js_avg_bound(double sigma_sg, double js_value);
double js_per_sample_bound(double sigma_sg, std::span<const double> js_values);
double lautum_avg_bound(double sigma_sg, double rev_kl);
double lautum_per_sample_bound(double sigma_sg, std::span<const double> lautum_values);
double emp_diff_bound(double sigma_sg, double d_ab);
double mi_dataset_bound(double sigma_sg, double i_ws, int n);

// --- assembled reports ---

struct BoundEntry {
    std::optional<double> value;
    std::string refusal;  // nonempty iff the bound's preconditions failed

    static BoundEntry of(double v) { return {v, {}}; }
    static BoundEntry refused(std::string why) { return {std::nullopt, std::move(why)}; }
};

// Fixed bound set; csv_header() fixes the column order.
struct BoundReport {
    double true_gen = 0.0;
    double ci = 0.0;
    BoundEntry ismi, avg_kl, ind_tv, avg_tv, ind_w, avg_w, js_avg, js_ps, lautum_avg, lautum_ps;

    static const std::vector<std::string>& names();
    const BoundEntry& entry(const std::string& name) const;
    BoundEntry& entry(const std::string& name);

    static std::string csv_header();
    std::string csv_row(double t) const;
};

struct DiscreteReportOptions {
    measures::Metric w_metric = measures::Metric::indicator();
    // Lipschitz constant matching w_metric; defaults to the loss range.
    std::optional<double> lipschitz;
    avgjoint::SizeCaps caps;
    double iid_tol = 1e-9;
};

BoundReport discrete_report(const avgjoint::LearnerSpec& learner,
                            const avgjoint::LossTable& loss,
                            const DiscreteReportOptions& opts = {});

// Tightest L with |l(w, z) - l(w', z)| <= L * metric(w, w') over the table.
double derive_lipschitz(const avgjoint::LossTable& loss, const measures::Metric& metric,
                        const measures::Support& w_support);

struct GaussianReportOptions {
    gaussian::QuadratureSpec quad;
    gaussian::MCSpec mc;
    bool mc_true_gen = true;  // false: quadrature true gen instead
};

BoundReport gaussian_report(const gaussian::MeanEstimationConfig& cfg,
                            const GaussianReportOptions& opts = {});

}  // namespace genbounds::bounds
