#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "genbounds/errors.hpp"
#include "genbounds/gaussian/gaussian.hpp"

namespace genbounds::gaussian::detail {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kLn2PiE = 2.8378770664093454835606594728112;  // log(2*pi*e)

inline double norm_pdf(double x, double mean, double sd) {
    const double z = (x - mean) / sd;
    return std::exp(-0.5 * z * z) / (sd * std::sqrt(kTwoPi));
}

inline double norm_cdf_std(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

// upper tail P(N(0,1) > z)
inline double norm_tail(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

struct Axis {
    std::vector<double> nodes;
    std::vector<double> weights;  // all positive
};

// Uniform nodes with trapezoid or Simpson weights.
inline Axis uniform_axis(double lo, double hi, int points, QuadratureSpec::Scheme scheme) {
    Axis ax;
    const double h = (hi - lo) / static_cast<double>(points - 1);
    ax.nodes.resize(static_cast<std::size_t>(points));
    ax.weights.assign(static_cast<std::size_t>(points), 0.0);
    for (int k = 0; k < points; ++k) ax.nodes[static_cast<std::size_t>(k)] = lo + h * k;
    if (scheme == QuadratureSpec::Scheme::kTrapezoid) {
        for (int k = 0; k < points; ++k) ax.weights[static_cast<std::size_t>(k)] = h;
        ax.weights.front() = 0.5 * h;
        ax.weights.back() = 0.5 * h;
    } else {
        for (int k = 0; k < points; ++k) {
            double c = (k == 0 || k == points - 1) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
            ax.weights[static_cast<std::size_t>(k)] = c * h / 3.0;
        }
    }
    return ax;
}

// Symmetric piecewise-uniform Simpson grid on [-H*s_max, H*s_max]. Each
// length scale s gets spacing s / pts_per_std out to H*s, so a mixture of
// very different widths is resolved everywhere without a dense global grid.
inline Axis graded_axis(std::vector<double> scales, double half_width, int pts_per_std) {
    std::sort(scales.begin(), scales.end());
    scales.erase(std::unique(scales.begin(), scales.end(),
                             [](double a, double b) { return std::abs(a - b) < 1e-9 * b; }),
                 scales.end());

    struct Segment {
        double lo, hi;
        int intervals;  // even
    };
    std::vector<Segment> pos;
    double prev = 0.0;
    for (double s : scales) {
        const double end = half_width * s;
        if (end <= prev * (1.0 + 1e-12)) continue;
        const double len = end - prev;
        int n = static_cast<int>(std::ceil(len / (s / pts_per_std)));
        n += n % 2;
        n = std::max(n, 2);
        pos.push_back({prev, end, n});
        prev = end;
    }

    std::vector<Segment> all;
    for (auto it = pos.rbegin(); it != pos.rend(); ++it) all.push_back({-it->hi, -it->lo, it->intervals});
    for (const auto& s : pos) all.push_back(s);

    Axis ax;
    for (const auto& seg : all) {
        const double h = (seg.hi - seg.lo) / seg.intervals;
        for (int k = 0; k <= seg.intervals; ++k) {
            const double x = seg.lo + h * k;
            double c = (k == 0 || k == seg.intervals) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
            const double w = c * h / 3.0;
            if (k == 0 && !ax.nodes.empty()) {
                ax.weights.back() += w;  // junction node shared with previous segment
            } else {
                ax.nodes.push_back(x);
                ax.weights.push_back(w);
            }
        }
    }
    return ax;
}

}  // namespace genbounds::gaussian::detail
