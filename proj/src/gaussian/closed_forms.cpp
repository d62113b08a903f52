#include <cmath>

#include "genbounds/errors.hpp"
#include "genbounds/gaussian/gaussian.hpp"

namespace genbounds::gaussian {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

void BivariateGaussian::validate() const {
    if (std::abs(cov[1] - cov[2]) > 1e-12 * (1.0 + std::abs(cov[1]))) {
        throw NonPositiveDefinite("covariance is not symmetric");
    }
    if (!(cov[0] > 0.0) || !(cov[3] > 0.0) || !(det() > 0.0)) {
        throw NonPositiveDefinite("covariance is not positive definite");
    }
}

double BivariateGaussian::correlation() const {
    return cov[1] / std::sqrt(cov[0] * cov[3]);
}

double BivariateGaussian::pdf(double x, double y) const {
    const double dx = x - mean[0];
    const double dy = y - mean[1];
    const double d = det();
    const double quad = (cov[3] * dx * dx - 2.0 * cov[1] * dx * dy + cov[0] * dy * dy) / d;
    return std::exp(-0.5 * quad) / (kTwoPi * std::sqrt(d));
}

void GaussianMixture2::validate() const {
    if (weights.size() != components.size() || components.empty()) {
        throw ValidationError("mixture: weights and components must match and be nonempty");
    }
    double sum = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0)) throw ValidationError("mixture: negative weight");
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
        throw ValidationError("mixture: weights sum to " + std::to_string(sum));
    }
    for (const auto& c : components) c.validate();
}

double GaussianMixture2::pdf(double x, double y) const {
    double p = 0.0;
    for (std::size_t k = 0; k < components.size(); ++k) {
        p += weights[k] * components[k].pdf(x, y);
    }
    return p;
}

void QuadratureSpec::validate() const {
    if (!(half_width_sigmas >= 5.0)) {
        throw ValidationError("quadrature: half_width_sigmas must be >= 5");
    }
    if (points_per_axis < 3) throw ValidationError("quadrature: need at least 3 points per axis");
    if (scheme == Scheme::kSimpson && points_per_axis % 2 == 0) {
        throw ValidationError("quadrature: Simpson needs an odd point count");
    }
}

void MCSpec::validate() const {
    if (n_samples < 1000) throw ValidationError("mc: need at least 1000 samples");
}

void MeanEstimationConfig::validate() const {
    if (!(sigma > 0.0)) throw ValidationError("config: sigma must be positive");
    if (!(c > 0.0)) throw ValidationError("config: c must be positive");
    if (!(t > 0.0 && t < 1.0)) throw ValidationError("config: t must lie in (0, 1)");
}

double MeanEstimationConfig::rho(int i) const {
    const double k = std::sqrt(mix_var());
    if (i == 1) return t / k;
    if (i == 2) return (1.0 - t) / k;
    throw IndexOutOfRange("rho: sample index must be 1 or 2");
}

BivariateGaussian joint_of(const MeanEstimationConfig& cfg, int i) {
    cfg.validate();
    if (i != 1 && i != 2) throw IndexOutOfRange("joint_of: sample index must be 1 or 2");
    const double s2 = cfg.sigma * cfg.sigma;
    const double cw = (i == 1 ? cfg.t : 1.0 - cfg.t) * s2;  // Cov(W, Z_i)
    BivariateGaussian g;
    g.mean = {cfg.beta, cfg.beta};
    g.cov = {s2 * cfg.mix_var(), cw, cw, s2};
    g.validate();
    return g;
}

double gaussian_entropy(double variance) {
    if (!(variance > 0.0)) throw NonPositiveDefinite("entropy: variance must be positive");
    return 0.5 * std::log(kTwoPi * std::exp(1.0) * variance);
}

double gaussian_entropy(const BivariateGaussian& g) {
    g.validate();
    return std::log(kTwoPi * std::exp(1.0)) + 0.5 * std::log(g.det());
}

double gaussian_mi(double rho) {
    if (!(std::abs(rho) < 1.0)) {
        throw DegenerateCorrelation("mi: |rho| must be < 1, got " + std::to_string(rho));
    }
    return -0.5 * std::log1p(-rho * rho);
}

double gaussian_lautum(double rho) {
    if (!(std::abs(rho) < 1.0)) {
        throw DegenerateCorrelation("lautum: |rho| must be < 1, got " + std::to_string(rho));
    }
    const double r2 = rho * rho;
    return r2 / (1.0 - r2) + 0.5 * std::log1p(-r2);
}

}  // namespace genbounds::gaussian
