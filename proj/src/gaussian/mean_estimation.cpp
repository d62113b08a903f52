#include <algorithm>
#include <cmath>
#include <vector>

#include "axis.hpp"
#include "genbounds/errors.hpp"
#include "genbounds/gaussian/gaussian.hpp"
#include "genbounds/rng.hpp"

namespace genbounds::gaussian {

namespace {

using detail::Axis;

// In coordinates u = (w' + z')/sqrt(2), v = (w' - z')/sqrt(2), with w', z'
// the product-whitened variables, the product law is N(0, I) and the joint
// of (W, Z_i) is N(0, diag(1 + rho_i, 1 - rho_i)): correlation matrices
// share the +-45 degree eigenvectors whatever rho is. Every density in the
// problem is therefore axis-aligned on one shared grid.
struct FrameTotals {
    double nq = 0, np1 = 0, np2 = 0;
    double selfcal_q = 0;              // -sum q log q, exact value log(2*pi*e)
    double tv1 = 0, tv2 = 0, tva = 0;  // integrals of |density gaps|
    double dkl = 0;                    // sum M log(M/q)
    double hmix = 0;                   // -sum M log M
    double laut = 0;                   // sum q log(q/M)
    double js1 = 0, js2 = 0, jsa = 0;
    double mi1 = 0, mi2 = 0;
    double eq = 0, e1 = 0, e2 = 0;     // truncated-loss expectations
};

struct AxisTables {
    std::vector<double> q, p1, p2;     // densities per node
    std::vector<double> lq, lp1, lp2;  // their logs
};

AxisTables tabulate(const Axis& ax, double s1, double s2) {
    AxisTables t;
    const std::size_t n = ax.nodes.size();
    t.q.resize(n);
    t.p1.resize(n);
    t.p2.resize(n);
    t.lq.resize(n);
    t.lp1.resize(n);
    t.lp2.resize(n);
    const double c0 = -0.5 * std::log(detail::kTwoPi);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = ax.nodes[i];
        t.lq[i] = c0 - 0.5 * x * x;
        t.lp1[i] = c0 - std::log(s1) - 0.5 * (x / s1) * (x / s1);
        t.lp2[i] = c0 - std::log(s2) - 0.5 * (x / s2) * (x / s2);
        t.q[i] = std::exp(t.lq[i]);
        t.p1[i] = std::exp(t.lp1[i]);
        t.p2[i] = std::exp(t.lp2[i]);
    }
    return t;
}

FrameTotals run_frame(const MeanEstimationConfig& cfg, double half_width, int pts_per_std) {
    const double rho1 = cfg.rho(1);
    const double rho2 = cfg.rho(2);
    const double sw = cfg.sigma * std::sqrt(cfg.mix_var());
    const double ln2 = std::log(2.0);

    const Axis au = detail::graded_axis({1.0, std::sqrt(1.0 + rho1), std::sqrt(1.0 + rho2)},
                                        half_width, pts_per_std);
    const Axis av = detail::graded_axis({1.0, std::sqrt(1.0 - rho1), std::sqrt(1.0 - rho2)},
                                        half_width, pts_per_std);
    const AxisTables tu = tabulate(au, std::sqrt(1.0 + rho1), std::sqrt(1.0 + rho2));
    const AxisTables tv = tabulate(av, std::sqrt(1.0 - rho1), std::sqrt(1.0 - rho2));

    // w - z as a linear function of the frame coordinates
    const double alpha = (sw - cfg.sigma) / std::sqrt(2.0);
    const double gamma = (sw + cfg.sigma) / std::sqrt(2.0);
    const double cap = cfg.c * cfg.c;

    FrameTotals f;
    for (std::size_t i = 0; i < au.nodes.size(); ++i) {
        const double wu = au.weights[i];
        const double du = alpha * au.nodes[i];
        FrameTotals row;  // per-row accumulation keeps the big sums stable
        for (std::size_t j = 0; j < av.nodes.size(); ++j) {
            const double wv = av.weights[j];
            const double q = tu.q[i] * tv.q[j];
            const double p1 = tu.p1[i] * tv.p1[j];
            const double p2 = tu.p2[i] * tv.p2[j];
            const double m = 0.5 * (p1 + p2);
            const double lq = tu.lq[i] + tv.lq[j];
            const double lp1 = tu.lp1[i] + tv.lp1[j];
            const double lp2 = tu.lp2[i] + tv.lp2[j];
            const double lm = std::log(m);
            const double lmq = std::log(m + q);
            const double l1q = std::log(p1 + q);
            const double l2q = std::log(p2 + q);

            row.nq += wv * q;
            row.np1 += wv * p1;
            row.np2 += wv * p2;
            row.selfcal_q -= wv * q * lq;
            row.tv1 += wv * std::abs(p1 - q);
            row.tv2 += wv * std::abs(p2 - q);
            row.tva += wv * std::abs(m - q);
            row.dkl += wv * m * (lm - lq);
            row.hmix -= wv * m * lm;
            row.laut += wv * q * (lq - lm);
            row.js1 += wv * 0.5 * (p1 * (ln2 + lp1 - l1q) + q * (ln2 + lq - l1q));
            row.js2 += wv * 0.5 * (p2 * (ln2 + lp2 - l2q) + q * (ln2 + lq - l2q));
            row.jsa += wv * 0.5 * (m * (ln2 + lm - lmq) + q * (ln2 + lq - lmq));
            row.mi1 += wv * p1 * (lp1 - lq);
            row.mi2 += wv * p2 * (lp2 - lq);

            const double d = du + gamma * av.nodes[j];
            const double loss = std::min(d * d, cap);
            row.eq += wv * q * loss;
            row.e1 += wv * p1 * loss;
            row.e2 += wv * p2 * loss;
        }
        f.nq += wu * row.nq;
        f.np1 += wu * row.np1;
        f.np2 += wu * row.np2;
        f.selfcal_q += wu * row.selfcal_q;
        f.tv1 += wu * row.tv1;
        f.tv2 += wu * row.tv2;
        f.tva += wu * row.tva;
        f.dkl += wu * row.dkl;
        f.hmix += wu * row.hmix;
        f.laut += wu * row.laut;
        f.js1 += wu * row.js1;
        f.js2 += wu * row.js2;
        f.jsa += wu * row.jsa;
        f.mi1 += wu * row.mi1;
        f.mi2 += wu * row.mi2;
        f.eq += wu * row.eq;
        f.e1 += wu * row.e1;
        f.e2 += wu * row.e2;
    }
    return f;
}

void guard_frame(const FrameTotals& f, double half_width) {
    const double tail = 4.0 * detail::norm_tail(half_width);
    if (tail > 1e-10) {
        throw WindowTooSmall("frame window of " + std::to_string(half_width) +
                             " sigmas leaves tail mass " + std::to_string(tail));
    }
    for (double mass : {f.nq, f.np1, f.np2}) {
        if (std::abs(mass - 1.0) > 1e-6) {
            throw NormalizationDrift("frame density integrates to " + std::to_string(mass));
        }
    }
    if (std::abs(f.selfcal_q - detail::kLn2PiE) > 1e-6) {
        throw NumericGuard("quadrature self-calibration failed: unit-Gaussian entropy off by " +
                           std::to_string(f.selfcal_q - detail::kLn2PiE));
    }
}

// ---- conditional route: 1-D Wasserstein / TV between P(W | z) and P_W ----

struct CondTotals {
    double w1 = 0, w2 = 0, wavg = 0;  // E_{P_Z} W1(., P_W)
    double tv_cond = 0;               // E_{P_Z} TV(cond of the average, P_W)
};

// Union of uniform grids around each involved Gaussian, so both narrow
// conditionals and the wide marginal are resolved.
std::vector<double> cond_nodes(double m1, double s1, double m2, double s2, double mw, double sww,
                               double half_width, int pts_per_std) {
    std::vector<double> xs;
    auto add = [&](double m, double s) {
        const double h = s / pts_per_std;
        const int k = static_cast<int>(std::ceil(half_width * s / h));
        for (int i = -k; i <= k; ++i) xs.push_back(m + h * i);
    };
    add(m1, s1);
    add(m2, s2);
    add(mw, sww);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end(),
                         [&](double a, double b) { return std::abs(a - b) < 1e-9 * sww; }),
             xs.end());
    return xs;
}

CondTotals run_conditional(const MeanEstimationConfig& cfg, double half_width, int pts_per_std) {
    // P(W | Z_1 = z) = N(beta + t (z - beta), sigma^2 (1-t)^2)
    // P(W | Z_2 = z) = N(beta + (1-t)(z - beta), sigma^2 t^2)
    const double s1 = cfg.sigma * (1.0 - cfg.t);
    const double s2 = cfg.sigma * cfg.t;
    const double sw = cfg.sigma * std::sqrt(cfg.mix_var());

    const int zpoints = 2 * static_cast<int>(std::ceil(half_width * pts_per_std)) + 1;
    const Axis az = detail::uniform_axis(-half_width, half_width, zpoints,
                                         QuadratureSpec::Scheme::kSimpson);

    CondTotals out;
    for (std::size_t zi = 0; zi < az.nodes.size(); ++zi) {
        const double zs = az.nodes[zi];  // standardized sample value
        const double pz = detail::norm_pdf(zs, 0.0, 1.0);
        const double m1 = cfg.beta + cfg.t * cfg.sigma * zs;
        const double m2 = cfg.beta + (1.0 - cfg.t) * cfg.sigma * zs;
        const std::vector<double> xs =
            cond_nodes(m1, s1, m2, s2, cfg.beta, sw, half_width, pts_per_std);

        double w1 = 0, w2 = 0, wavg = 0, tvc = 0;
        double pf1 = 0, pf2 = 0, pfa = 0, pfw = 0, pd = 0;
        for (std::size_t k = 0; k < xs.size(); ++k) {
            const double f1 = detail::norm_cdf_std((xs[k] - m1) / s1);
            const double f2 = detail::norm_cdf_std((xs[k] - m2) / s2);
            const double fa = 0.5 * (f1 + f2);
            const double fw = detail::norm_cdf_std((xs[k] - cfg.beta) / sw);
            const double dens = std::abs(0.5 * (detail::norm_pdf(xs[k], m1, s1) +
                                                detail::norm_pdf(xs[k], m2, s2)) -
                                         detail::norm_pdf(xs[k], cfg.beta, sw));
            if (k > 0) {
                const double dx = xs[k] - xs[k - 1];
                w1 += 0.5 * dx * (std::abs(f1 - fw) + pf1);
                w2 += 0.5 * dx * (std::abs(f2 - fw) + pf2);
                wavg += 0.5 * dx * (std::abs(fa - fw) + pfa);
                tvc += 0.5 * dx * (dens + pd);
            }
            pf1 = std::abs(f1 - fw);
            pf2 = std::abs(f2 - fw);
            pfa = std::abs(fa - fw);
            pfw = fw;
            pd = dens;
        }
        out.w1 += az.weights[zi] * pz * w1;
        out.w2 += az.weights[zi] * pz * w2;
        out.wavg += az.weights[zi] * pz * wavg;
        out.tv_cond += az.weights[zi] * pz * 0.5 * tvc;
    }
    return out;
}

int frame_pts_per_std(const QuadratureSpec& q) {
    const int k = static_cast<int>(
        std::lround(q.points_per_axis / (2.0 * q.half_width_sigmas)));
    return std::max(8, k);
}

}  // namespace

DivergenceProfile mean_estimation_divergences(const MeanEstimationConfig& cfg,
                                              const QuadratureSpec& q) {
    cfg.validate();
    q.validate();
    const double H = q.half_width_sigmas;
    const int kappa = frame_pts_per_std(q);

    const FrameTotals fine = run_frame(cfg, H, kappa);
    guard_frame(fine, H);
    const FrameTotals coarse = run_frame(cfg, H, std::max(4, kappa / 2));

    const int kcond = std::max(8, kappa / 4);
    const CondTotals cond = run_conditional(cfg, H, kcond);
    const CondTotals cond_coarse = run_conditional(cfg, H, std::max(4, kcond / 2));

    const double sw = cfg.sigma * std::sqrt(cfg.mix_var());

    DivergenceProfile p;
    p.rho1 = cfg.rho(1);
    p.rho2 = cfg.rho(2);
    p.mi1 = gaussian_mi(p.rho1);
    p.mi2 = gaussian_mi(p.rho2);
    p.lautum1 = gaussian_lautum(p.rho1);
    p.lautum2 = gaussian_lautum(p.rho2);
    p.mi1_quad = fine.mi1;
    p.mi2_quad = fine.mi2;
    p.tv1 = 0.5 * fine.tv1;
    p.tv2 = 0.5 * fine.tv2;
    p.tv_avg = 0.5 * fine.tva;
    p.d_avg = fine.dkl;
    p.mix_entropy = fine.hmix + std::log(sw * cfg.sigma);
    p.d_avg_entropy_route = detail::kLn2PiE - fine.hmix;
    p.js1 = fine.js1;
    p.js2 = fine.js2;
    p.js_avg = fine.jsa;
    p.lautum_avg = fine.laut;
    p.exp_w_1 = cond.w1;
    p.exp_w_2 = cond.w2;
    p.exp_w_avg = cond.wavg;
    p.exp_tv_cond_avg = cond.tv_cond;
    p.gen_quad = fine.eq - 0.5 * (fine.e1 + fine.e2);

    double err = 0.0;
    auto upd = [&err](double a, double b) { err = std::max(err, std::abs(a - b)); };
    upd(p.tv1, 0.5 * coarse.tv1);
    upd(p.tv2, 0.5 * coarse.tv2);
    upd(p.tv_avg, 0.5 * coarse.tva);
    upd(p.d_avg, coarse.dkl);
    upd(p.js1, coarse.js1);
    upd(p.js2, coarse.js2);
    upd(p.js_avg, coarse.jsa);
    upd(p.lautum_avg, coarse.laut);
    upd(p.gen_quad, coarse.eq - 0.5 * (coarse.e1 + coarse.e2));
    upd(p.exp_w_1 / sw, cond_coarse.w1 / sw);
    upd(p.exp_w_2 / sw, cond_coarse.w2 / sw);
    upd(p.exp_w_avg / sw, cond_coarse.wavg / sw);
    p.quad_error = err;
    return p;
}

ValueWithError avg_kl(const MeanEstimationConfig& cfg, const QuadratureSpec& q) {
    cfg.validate();
    q.validate();
    const double H = q.half_width_sigmas;
    const int kappa = frame_pts_per_std(q);
    const FrameTotals fine = run_frame(cfg, H, kappa);
    guard_frame(fine, H);
    const FrameTotals coarse = run_frame(cfg, H, std::max(4, kappa / 2));
    // h(P_W) + h(P_Z) - h(avg joint); in frame coordinates that collapses
    // to log(2*pi*e) minus the mixture entropy
    const double fine_v = detail::kLn2PiE - fine.hmix;
    const double coarse_v = detail::kLn2PiE - coarse.hmix;
    return {fine_v, std::abs(fine_v - coarse_v)};
}

GenEstimate true_gen_error_quad(const MeanEstimationConfig& cfg, const QuadratureSpec& q) {
    const DivergenceProfile p = mean_estimation_divergences(cfg, q);
    return {p.gen_quad, p.quad_error};
}

GenEstimate true_gen_error_mc(const MeanEstimationConfig& cfg, const MCSpec& mc) {
    cfg.validate();
    mc.validate();
    Rng rng(mc.seed);
    const double cap = cfg.c * cfg.c;
    auto loss = [cap](double w, double z) {
        const double d = w - z;
        return std::min(d * d, cap);
    };
    double sum = 0.0, sumsq = 0.0;
    const auto n = mc.n_samples;
    for (std::int64_t k = 0; k < n; ++k) {
        const double z1 = cfg.beta + cfg.sigma * rng.normal();
        const double z2 = cfg.beta + cfg.sigma * rng.normal();
        const double w = cfg.t * z1 + (1.0 - cfg.t) * z2;
        // independent hypothesis and sample for the product term
        const double wp = cfg.t * (cfg.beta + cfg.sigma * rng.normal()) +
                          (1.0 - cfg.t) * (cfg.beta + cfg.sigma * rng.normal());
        const double zp = cfg.beta + cfg.sigma * rng.normal();
        const double x = loss(wp, zp) - 0.5 * (loss(w, z1) + loss(w, z2));
        sum += x;
        sumsq += x * x;
    }
    const double mean = sum / static_cast<double>(n);
    const double var = std::max(0.0, sumsq / static_cast<double>(n) - mean * mean);
    const double ci = 1.96 * std::sqrt(var / static_cast<double>(n));
    return {mean, ci};
}

}  // namespace genbounds::gaussian
