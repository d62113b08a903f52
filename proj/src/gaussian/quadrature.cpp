#include <cmath>
#include <limits>

#include "axis.hpp"
#include "genbounds/errors.hpp"
#include "genbounds/gaussian/gaussian.hpp"

namespace genbounds::gaussian {

namespace {

using detail::Axis;

struct Window {
    double lo_x, hi_x, lo_y, hi_y;
};

Window window_for(std::initializer_list<const GaussianMixture2*> mixtures, double half_width) {
    double sx = 0.0, sy = 0.0;
    double mlo_x = 0.0, mhi_x = 0.0, mlo_y = 0.0, mhi_y = 0.0;
    bool first = true;
    for (const auto* m : mixtures) {
        for (const auto& c : m->components) {
            sx = std::max(sx, std::sqrt(c.cov[0]));
            sy = std::max(sy, std::sqrt(c.cov[3]));
            if (first) {
                mlo_x = mhi_x = c.mean[0];
                mlo_y = mhi_y = c.mean[1];
                first = false;
            } else {
                mlo_x = std::min(mlo_x, c.mean[0]);
                mhi_x = std::max(mhi_x, c.mean[0]);
                mlo_y = std::min(mlo_y, c.mean[1]);
                mhi_y = std::max(mhi_y, c.mean[1]);
            }
        }
    }
    return {mlo_x - half_width * sx, mhi_x + half_width * sx, mlo_y - half_width * sy,
            mhi_y + half_width * sy};
}

// Mass a mixture places outside the window, by the per-axis Gaussian tail
// union bound. More than 1e-10 means the window cannot be trusted.
void check_window(const GaussianMixture2& m, const Window& w) {
    double outside = 0.0;
    for (std::size_t k = 0; k < m.components.size(); ++k) {
        const auto& c = m.components[k];
        const double sx = std::sqrt(c.cov[0]);
        const double sy = std::sqrt(c.cov[3]);
        double tail = detail::norm_tail((w.hi_x - c.mean[0]) / sx) +
                      detail::norm_tail((c.mean[0] - w.lo_x) / sx) +
                      detail::norm_tail((w.hi_y - c.mean[1]) / sy) +
                      detail::norm_tail((c.mean[1] - w.lo_y) / sy);
        outside += m.weights[k] * tail;
    }
    if (outside > 1e-10) {
        throw WindowTooSmall("quadrature window leaves tail mass " + std::to_string(outside));
    }
}

int coarse_points(const QuadratureSpec& q) {
    int n = (q.points_per_axis - 1) / 2 + 1;
    if (q.scheme == QuadratureSpec::Scheme::kSimpson && n % 2 == 0) ++n;
    return std::max(n, 3);
}

template <typename F>
double integrate_grid(const Window& w, int points, QuadratureSpec::Scheme scheme, F&& f) {
    const Axis ax = detail::uniform_axis(w.lo_x, w.hi_x, points, scheme);
    const Axis ay = detail::uniform_axis(w.lo_y, w.hi_y, points, scheme);
    double total = 0.0;
    for (std::size_t i = 0; i < ax.nodes.size(); ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < ay.nodes.size(); ++j) {
            row += ay.weights[j] * f(ax.nodes[i], ay.nodes[j]);
        }
        total += ax.weights[i] * row;
    }
    return total;
}

void check_normalization(const GaussianMixture2& m, const Window& w, int points,
                         QuadratureSpec::Scheme scheme, const char* label) {
    const double mass =
        integrate_grid(w, points, scheme, [&](double x, double y) { return m.pdf(x, y); });
    if (std::abs(mass - 1.0) > 1e-6) {
        throw NormalizationDrift(std::string(label) + " integrates to " + std::to_string(mass) +
                                 " on the grid; the resolution does not match the density");
    }
}

double entropy_on_grid(const GaussianMixture2& m, const Window& w, int points,
                       QuadratureSpec::Scheme scheme) {
    return integrate_grid(w, points, scheme, [&](double x, double y) {
        const double p = m.pdf(x, y);
        return p > 0.0 ? -p * std::log(p) : 0.0;
    });
}

// Every grid result is gated on reproducing a pure-Gaussian entropy to
// 1e-6 nats on the same grid.
void self_calibrate(const GaussianMixture2& m, const Window& w, int points,
                    QuadratureSpec::Scheme scheme) {
    for (const auto& c : m.components) {
        GaussianMixture2 single{{1.0}, {c}};
        const double grid = entropy_on_grid(single, w, points, scheme);
        const double exact = gaussian_entropy(c);
        if (std::abs(grid - exact) > 1e-6) {
            throw NumericGuard("quadrature self-calibration failed: component entropy off by " +
                               std::to_string(grid - exact));
        }
    }
}

}  // namespace

ValueWithError mixture_entropy(const GaussianMixture2& m, const QuadratureSpec& q) {
    m.validate();
    q.validate();
    const Window w = window_for({&m}, q.half_width_sigmas);
    check_window(m, w);
    check_normalization(m, w, q.points_per_axis, q.scheme, "mixture density");
    self_calibrate(m, w, q.points_per_axis, q.scheme);
    const double fine = entropy_on_grid(m, w, q.points_per_axis, q.scheme);
    const double coarse = entropy_on_grid(m, w, coarse_points(q), q.scheme);
    return {fine, std::abs(fine - coarse)};
}

ValueWithError tv_2d(const GaussianMixture2& a, const GaussianMixture2& b,
                     const QuadratureSpec& q) {
    a.validate();
    b.validate();
    q.validate();
    const Window w = window_for({&a, &b}, q.half_width_sigmas);
    check_window(a, w);
    check_window(b, w);
    check_normalization(a, w, q.points_per_axis, q.scheme, "first density");
    check_normalization(b, w, q.points_per_axis, q.scheme, "second density");
    auto integrand = [&](double x, double y) { return std::abs(a.pdf(x, y) - b.pdf(x, y)); };
    const double fine = 0.5 * integrate_grid(w, q.points_per_axis, q.scheme, integrand);
    const double coarse = 0.5 * integrate_grid(w, coarse_points(q), q.scheme, integrand);
    return {fine, std::abs(fine - coarse)};
}

ValueWithError kl_2d(const GaussianMixture2& a, const GaussianMixture2& b,
                     const QuadratureSpec& q) {
    a.validate();
    b.validate();
    q.validate();
    const Window w = window_for({&a, &b}, q.half_width_sigmas);
    check_window(a, w);
    check_window(b, w);
    check_normalization(a, w, q.points_per_axis, q.scheme, "first density");
    check_normalization(b, w, q.points_per_axis, q.scheme, "second density");
    auto integrand = [&](double x, double y) {
        const double pa = a.pdf(x, y);
        if (pa <= 0.0) return 0.0;
        double pb = b.pdf(x, y);
        if (pb <= 0.0) pb = std::numeric_limits<double>::min();
        return pa * std::log(pa / pb);
    };
    const double fine = integrate_grid(w, q.points_per_axis, q.scheme, integrand);
    const double coarse = integrate_grid(w, coarse_points(q), q.scheme, integrand);
    return {fine, std::abs(fine - coarse)};
}

}  // namespace genbounds::gaussian
