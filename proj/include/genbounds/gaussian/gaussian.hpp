#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace genbounds::gaussian {

struct BivariateGaussian {
    std::array<double, 2> mean{0.0, 0.0};
    // row-major [var_x, cov, cov, var_y]; must be symmetric positive definite
    std::array<double, 4> cov{1.0, 0.0, 0.0, 1.0};

    void validate() const;
    double det() const { return cov[0] * cov[3] - cov[1] * cov[2]; }
    double correlation() const;
    double pdf(double x, double y) const;
};

struct GaussianMixture2 {
    std::vector<double> weights;
    std::vector<BivariateGaussian> components;

    void validate() const;
    double pdf(double x, double y) const;
};

struct QuadratureSpec {
    enum class Scheme { kTrapezoid, kSimpson };

    double half_width_sigmas = 8.0;
    int points_per_axis = 1201;
    Scheme scheme = Scheme::kSimpson;

    void validate() const;
};

struct MCSpec {
    std::int64_t n_samples = 1'000'000;
    std::uint64_t seed = 1;

    void validate() const;
};

// The two-sample Gaussian mean estimation setting: samples Z_i drawn
// i.i.d. from N(beta, sigma^2), estimate W = t Z_1 + (1 - t) Z_2, loss
// truncated at c^2: l(w, z) = min((w - z)^2, c^2).
struct MeanEstimationConfig {
    double sigma = 10.0;
    double c = 2.0;
    double t = 0.5;
    double beta = 0.0;

    void validate() const;

    double mix_var() const { return t * t + (1.0 - t) * (1.0 - t); }  // Var W / sigma^2
    double rho(int i) const;  // correlation of (W, Z_i), i in {1, 2}
    double sub_gaussian_sigma() const { return 0.5 * c * c; }   // bounded in [0, c^2]
    double lipschitz_constant() const { return 2.0 * c; }       // slope cap of the loss in w
};

struct ValueWithError {
    double value = 0.0;
    double error = 0.0;  // difference between the two quadrature refinement levels
};

struct GenEstimate {
    double value = 0.0;
    double ci_halfwidth = 0.0;
};

// --- closed forms ---

// Joint law of (W, Z_i) for i in {1, 2}.
BivariateGaussian joint_of(const MeanEstimationConfig& cfg, int i);

double gaussian_entropy(double variance);                 // 1-D, nats
double gaussian_entropy(const BivariateGaussian& g);      // 2-D, nats

// Mutual information of a bivariate Gaussian with correlation rho.
double gaussian_mi(double rho);

// Lautum information (reverse KL of product vs joint) of the same pair.
double gaussian_lautum(double rho);

// --- uniform-grid quadrature over a QuadratureSpec window ---

ValueWithError mixture_entropy(const GaussianMixture2& m, const QuadratureSpec& q);
ValueWithError tv_2d(const GaussianMixture2& a, const GaussianMixture2& b,
                     const QuadratureSpec& q);
ValueWithError kl_2d(const GaussianMixture2& a, const GaussianMixture2& b,
                     const QuadratureSpec& q);

// --- the mean-estimation evaluator ---
//
// All pairwise quantities between {P_{W,Z_1}, P_{W,Z_2}, their average} and
// P_W x P_Z are evaluated on one shared grid, in coordinates where every
// density is axis-aligned (whiten the product, then rotate 45 degrees).
// Sharing nodes and positive weights keeps every convexity ordering exact
// at the numeric level, and the graded axis resolves the near-degenerate
// joint at extreme t.
struct DivergenceProfile {
    double rho1 = 0.0, rho2 = 0.0;
    double mi1 = 0.0, mi2 = 0.0;            // closed form
    double mi1_quad = 0.0, mi2_quad = 0.0;  // same values off the grid
    double lautum1 = 0.0, lautum2 = 0.0;    // closed form
    double tv1 = 0.0, tv2 = 0.0, tv_avg = 0.0;
    double d_avg = 0.0;                     // D(avg joint || P_W x P_Z)
    double d_avg_entropy_route = 0.0;       // h(P_W) + h(P_Z) - h(avg joint)
    double mix_entropy = 0.0;               // h of the average joint, original coordinates
    double js1 = 0.0, js2 = 0.0, js_avg = 0.0;
    double lautum_avg = 0.0;
    double exp_w_1 = 0.0, exp_w_2 = 0.0, exp_w_avg = 0.0;  // E_{P_Z} W1(cond, P_W)
    double exp_tv_cond_avg = 0.0;           // E_{P_Z} TV(cond of avg, P_W)
    double gen_quad = 0.0;                  // true generalization error off the grid
    double quad_error = 0.0;                // max refinement delta across outputs
};

DivergenceProfile mean_estimation_divergences(const MeanEstimationConfig& cfg,
                                              const QuadratureSpec& q);

// D(avg joint || P_W x P_Z) via the entropy decomposition, with the
// refinement delta as the error estimate.
ValueWithError avg_kl(const MeanEstimationConfig& cfg, const QuadratureSpec& q);

GenEstimate true_gen_error_mc(const MeanEstimationConfig& cfg, const MCSpec& mc);
GenEstimate true_gen_error_quad(const MeanEstimationConfig& cfg, const QuadratureSpec& q);

}  // namespace genbounds::gaussian
