#include "genbounds/cli/verify.hpp"

#include <cmath>
#include <cstdio>
#include <functional>

#include "genbounds/bounds/bounds.hpp"
#include "genbounds/cli/random_instances.hpp"
#include "genbounds/errors.hpp"
#include "genbounds/gaussian/gaussian.hpp"
#include "genbounds/io/serialization.hpp"
#include "genbounds/measures/measures.hpp"

namespace genbounds::cli {

namespace {

namespace ms = measures;
namespace aj = avgjoint;
namespace gs = gaussian;
namespace bd = bounds;

// Collects per-property worst violations; a property passes when its worst
// observed slack is within tolerance and no exception fired.
class Suite {
  public:
    explicit Suite(VerifyReport& report) : report_(report) {}

    void run(const std::string& name, const std::function<std::string()>& body) {
        PropertyResult r;
        r.name = name;
        try {
            r.detail = body();
            r.pass = true;
        } catch (const std::exception& e) {
            r.pass = false;
            r.detail = e.what();
        }
        report_.properties.push_back(std::move(r));
    }

  private:
    VerifyReport& report_;
};

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

// max violation accumulator: checks `lhs <= rhs + tol` style claims
struct Worst {
    double slack = -1e300;  // max of lhs - rhs
    int cases = 0;

    void note(double lhs, double rhs) {
        slack = std::max(slack, lhs - rhs);
        ++cases;
    }
    std::string require(double tol) const {
        if (slack > tol) {
            throw Error("violated by " + fmt(slack) + " (tolerance " + fmt(tol) + ") over " +
                        std::to_string(cases) + " cases");
        }
        return std::to_string(cases) + " cases, worst slack " + fmt(slack);
    }
};

double entry(const bd::BoundReport& r, const std::string& name) {
    const bd::BoundEntry& e = r.entry(name);
    if (!e.value) throw Error("bound '" + name + "' refused: " + e.refusal);
    return *e.value;
}

void discrete_suite(Suite& suite, const VerifyOptions& opts) {
    const int count = opts.count;

    suite.run("prop1_identity", [&] {
        Rng rng(derive_seed(opts.seed, 101));
        Worst w;
        for (int k = 0; k < count; ++k) {
            auto learner = random_learner(rng, 2 + rng.integer(4), 2 + rng.integer(4),
                                          1 + static_cast<int>(rng.integer(3)), k % 2 == 0);
            auto loss = random_loss(rng, learner.w_size(), learner.z_size());
            const double a = aj::gen_error_direct(learner, loss);
            const double b = aj::gen_error_via_avg(learner, loss);
            w.note(std::abs(a - b), 0.0);
        }
        return w.require(1e-12);
    });

    suite.run("marginal_consistency", [&] {
        Rng rng(derive_seed(opts.seed, 102));
        Worst w;
        for (int k = 0; k < count; ++k) {
            auto learner = random_learner(rng, 2 + rng.integer(3), 2 + rng.integer(3),
                                          1 + static_cast<int>(rng.integer(3)), false);
            const auto avg = aj::average_joint(learner);
            for (const auto& per : avg.per_sample) {
                const auto mw = per.marginal_w();
                for (std::size_t i = 0; i < mw.size(); ++i) {
                    w.note(std::abs(mw.prob(i) - avg.hypothesis_marginal.prob(i)), 0.0);
                }
            }
        }
        return w.require(1e-12);
    });

    suite.run("symmetric_collapse", [&] {
        Rng rng(derive_seed(opts.seed, 103));
        Worst w;
        for (int k = 0; k < count; ++k) {
            auto learner = random_symmetric_learner(rng, 2 + rng.integer(3), 2 + rng.integer(3),
                                                    2 + static_cast<int>(rng.integer(2)), 0.02);
            if (!aj::is_symmetric(learner)) throw Error("symmetric learner not detected");
            const auto avg = aj::average_joint(learner);
            for (const auto& per : avg.per_sample) {
                for (std::size_t i = 0; i < per.data().size(); ++i) {
                    w.note(std::abs(per.data()[i] - avg.joint.data()[i]), 0.0);
                }
            }
            auto loss = random_loss(rng, learner.w_size(), learner.z_size());
            const auto report = bd::discrete_report(learner, loss);
            w.note(std::abs(entry(report, "avg_tv") - entry(report, "ind_tv")), 0.0);
            w.note(std::abs(entry(report, "avg_w") - entry(report, "ind_w")), 0.0);
            w.note(std::abs(entry(report, "avg_kl") - entry(report, "ismi")), 0.0);
            w.note(std::abs(entry(report, "js_avg") - entry(report, "js_ps")), 0.0);
            w.note(std::abs(entry(report, "lautum_avg") - entry(report, "lautum_ps")), 0.0);
        }
        return w.require(1e-9);
    });

    suite.run("tv_joint_convexity", [&] {
        Rng rng(derive_seed(opts.seed, 104));
        Worst w;
        for (int k = 0; k < count; ++k) {
            auto support = indexed_support("x", 2 + rng.integer(5));
            auto a = random_dist(rng, support), b = random_dist(rng, support);
            auto c = random_dist(rng, support), d = random_dist(rng, support);
            std::vector<double> mab(support.size()), mcd(support.size());
            for (std::size_t i = 0; i < support.size(); ++i) {
                mab[i] = 0.5 * (a.prob(i) + b.prob(i));
                mcd[i] = 0.5 * (c.prob(i) + d.prob(i));
            }
            const double lhs = ms::tv(ms::DiscreteDist(support, mab),
                                      ms::DiscreteDist(support, mcd));
            w.note(lhs, 0.5 * ms::tv(a, c) + 0.5 * ms::tv(b, d));
        }
        return w.require(1e-12);
    });

    suite.run("kl_pair_convexity", [&] {
        Rng rng(derive_seed(opts.seed, 105));
        Worst w;
        for (int k = 0; k < count; ++k) {
            auto support = indexed_support("x", 2 + rng.integer(5));
            auto a = random_dist(rng, support, 0.05), b = random_dist(rng, support, 0.05);
            auto c = random_dist(rng, support, 0.05), d = random_dist(rng, support, 0.05);
            std::vector<double> mab(support.size()), mcd(support.size());
            for (std::size_t i = 0; i < support.size(); ++i) {
                mab[i] = 0.5 * (a.prob(i) + b.prob(i));
                mcd[i] = 0.5 * (c.prob(i) + d.prob(i));
            }
            const double lhs = ms::kl(ms::DiscreteDist(support, mab),
                                      ms::DiscreteDist(support, mcd));
            w.note(lhs, 0.5 * ms::kl(a, c) + 0.5 * ms::kl(b, d));
        }
        return w.require(1e-12);
    });

    suite.run("w_mixture_convexity", [&] {
        Rng rng(derive_seed(opts.seed, 106));
        Worst w;
        const auto euclid = ms::Metric::euclidean();
        for (int k = 0; k < count; ++k) {
            auto support = random_support_1d(rng, 2 + rng.integer(5));
            auto p1 = random_dist(rng, support), p2 = random_dist(rng, support);
            auto q = random_dist(rng, support);
            std::vector<double> mix(support.size());
            for (std::size_t i = 0; i < support.size(); ++i) {
                mix[i] = 0.5 * (p1.prob(i) + p2.prob(i));
            }
            const double lhs = ms::wasserstein1(ms::DiscreteDist(support, mix), q, euclid);
            w.note(lhs, 0.5 * ms::wasserstein1(p1, q, euclid) +
                            0.5 * ms::wasserstein1(p2, q, euclid));
        }
        return w.require(1e-9);
    });

    suite.run("kr_duality_witness", [&] {
        Rng rng(derive_seed(opts.seed, 107));
        Worst w;
        const auto euclid = ms::Metric::euclidean();
        for (int k = 0; k < count; ++k) {
            auto support = random_support_1d(rng, 2 + rng.integer(6));
            auto p = random_dist(rng, support), q = random_dist(rng, support);
            const auto g = random_lipschitz_witness(rng, support);
            double gap = 0.0;
            for (std::size_t i = 0; i < support.size(); ++i) {
                gap += (p.prob(i) - q.prob(i)) * g[i];
            }
            w.note(gap, ms::wasserstein1(p, q, euclid));
        }
        return w.require(1e-12);
    });

    suite.run("dv_gap_le_kl", [&] {
        Rng rng(derive_seed(opts.seed, 108));
        Worst w;
        for (int k = 0; k < count; ++k) {
            auto support = indexed_support("x", 2 + rng.integer(5));
            auto p = random_dist(rng, support, 0.02), q = random_dist(rng, support, 0.02);
            const auto g = random_witness(rng, support.size());
            w.note(ms::dv_gap(p, q, g), ms::kl(p, q));
        }
        return w.require(1e-12);
    });

    suite.run("js_cap_symmetry_zero", [&] {
        Rng rng(derive_seed(opts.seed, 109));
        Worst w;
        const double ln2 = std::log(2.0);
        for (int k = 0; k < count; ++k) {
            auto support = indexed_support("x", 2 + rng.integer(5));
            auto p = random_dist(rng, support), q = random_dist(rng, support);
            w.note(ms::js(p, q), ln2);
            w.note(std::abs(ms::js(p, q) - ms::js(q, p)), 0.0);
            w.note(ms::js(p, p), 0.0);
            w.note(ms::tv(p, p), 0.0);
            w.note(ms::kl(p, p), 0.0);
            if (ms::tv(p, q) > 1e-6) {
                // distinct inputs must register as distinct
                w.note(1e-12 - ms::js(p, q), 0.0);
                w.note(1e-12 - ms::kl(p, q), 0.0);
            }
        }
        return w.require(1e-12);
    });

    suite.run("tv_equals_indicator_w", [&] {
        Rng rng(derive_seed(opts.seed, 110));
        Worst w;
        const auto ind = ms::Metric::indicator();
        for (int k = 0; k < count; ++k) {
            auto support = indexed_support("x", 2 + rng.integer(5));
            auto p = random_dist(rng, support), q = random_dist(rng, support);
            w.note(std::abs(ms::tv(p, q) - ms::wasserstein1(p, q, ind)), 0.0);  // identity route
            w.note(std::abs(ms::tv(p, q) - ms::wasserstein1_lp(p, q, ind)), 1e-12);  // LP route
        }
        return w.require(0.0);
    });

    suite.run("w_lp_vs_cdf", [&] {
        Rng rng(derive_seed(opts.seed, 111));
        Worst w;
        const auto euclid = ms::Metric::euclidean();
        for (int k = 0; k < count; ++k) {
            auto support = random_support_1d(rng, 2 + rng.integer(6));
            auto p = random_dist(rng, support), q = random_dist(rng, support);
            w.note(std::abs(ms::wasserstein1_lp(p, q, euclid) - ms::wasserstein1_1d(p, q)), 0.0);
        }
        return w.require(1e-9);
    });

    suite.run("bound_validity", [&] {
        Rng rng(derive_seed(opts.seed, 112));
        Worst w;
        for (int k = 0; k < count; ++k) {
            auto learner = random_learner(rng, 2 + rng.integer(3), 2 + rng.integer(3),
                                          1 + static_cast<int>(rng.integer(3)), true, 0.02);
            auto loss = random_loss(rng, learner.w_size(), learner.z_size());
            const auto report = bd::discrete_report(learner, loss);
            const double gen = std::abs(report.true_gen);
            for (const auto& name : bd::BoundReport::names()) {
                w.note(gen, entry(report, name));
            }
        }
        return w.require(1e-9);
    });

    suite.run("cor_tv_ordering", [&] {
        Rng rng(derive_seed(opts.seed, 113));
        Worst w;
        for (int k = 0; k < count; ++k) {
            auto learner = random_learner(rng, 2 + rng.integer(3), 2 + rng.integer(3),
                                          2 + static_cast<int>(rng.integer(2)), true, 0.02);
            auto loss = random_loss(rng, learner.w_size(), learner.z_size());
            const auto report = bd::discrete_report(learner, loss);
            // the fault seam scales the average-joint TV bound
            w.note(opts.tv_fault_scale * entry(report, "avg_tv"), entry(report, "ind_tv"));
        }
        // exchangeable case: both sides coincide, so any scaling of the
        // average side breaks the ordering for certain
        auto symmetric = random_symmetric_learner(rng, 3, 3, 2, 0.02);
        auto loss = random_loss(rng, 3, 3);
        const auto report = bd::discrete_report(symmetric, loss);
        w.note(opts.tv_fault_scale * entry(report, "avg_tv"), entry(report, "ind_tv"));
        return w.require(1e-9);
    });

    suite.run("ordering_suite", [&] {
        Rng rng(derive_seed(opts.seed, 114));
        Worst w;
        for (int k = 0; k < count; ++k) {
            auto learner = random_learner(rng, 2 + rng.integer(3), 2 + rng.integer(3),
                                          2 + static_cast<int>(rng.integer(2)), true, 0.02);
            auto loss = random_loss(rng, learner.w_size(), learner.z_size());
            const auto report = bd::discrete_report(learner, loss);
            const double sigma_sg = 0.5 * (loss.b() - loss.a());
            const auto avg = aj::average_joint(learner);
            std::vector<double> mi;
            for (const auto& per : avg.per_sample) mi.push_back(ms::mutual_information(per));
            const double chain = bd::per_sample_kl_chain(sigma_sg, mi);
            const double dataset = bd::mi_dataset_bound(
                sigma_sg, aj::dataset_mutual_information(learner), learner.n());

            w.note(entry(report, "avg_w"), entry(report, "ind_w"));
            w.note(entry(report, "avg_tv"), entry(report, "ind_tv"));
            w.note(entry(report, "avg_kl"), chain);
            w.note(entry(report, "ismi"), chain);
            w.note(chain, dataset);
            w.note(entry(report, "js_avg"), entry(report, "js_ps"));
            w.note(entry(report, "lautum_avg"), entry(report, "lautum_ps"));
        }
        return w.require(1e-9);
    });

    suite.run("emp_diff_bound_validity", [&] {
        Rng rng(derive_seed(opts.seed, 115));
        Worst w;
        for (int k = 0; k < count; ++k) {
            auto a = random_learner(rng, 2 + rng.integer(3), 2 + rng.integer(3),
                                    1 + static_cast<int>(rng.integer(3)), k % 2 == 0, 0.02);
            auto b = relabeled_learner(rng, a, 0.02);
            auto loss = random_loss(rng, a.w_size(), a.z_size());
            const double diff = aj::emp_risk_diff(a, b, loss);
            const double sigma_sg = 0.5 * (loss.b() - loss.a());
            const double d_ab = ms::kl(aj::average_joint(a).joint.flatten(),
                                       aj::average_joint(b).joint.flatten());
            w.note(std::abs(diff), bd::emp_diff_bound(sigma_sg, d_ab));
            w.note(std::abs(diff + aj::emp_risk_diff(b, a, loss)), 0.0);
        }
        return w.require(1e-9);
    });

    suite.run("bound_monotonicity", [&] {
        Rng rng(derive_seed(opts.seed, 116));
        Worst w;
        for (int k = 0; k < count; ++k) {
            const double d = rng.uniform(0.0, 2.0);
            const double d2 = d + rng.uniform(0.0, 1.0);
            const double s = rng.uniform(0.1, 3.0);
            w.note(bd::avg_kl_bound(s, d), bd::avg_kl_bound(s, d2));
            w.note(bd::avg_tv_bound(0.0, s, std::min(d, 1.0) * 0.5),
                   bd::avg_tv_bound(0.0, s, std::min(d2, 1.9) * 0.5));
            // linear scaling in the range, square-root scaling in sigma
            const double c = rng.uniform(1.0, 3.0);
            w.note(std::abs(bd::avg_tv_bound(0.0, c * s, 0.3) - c * bd::avg_tv_bound(0.0, s, 0.3)),
                   0.0);
            w.note(std::abs(bd::avg_kl_bound(c * s, d) - c * bd::avg_kl_bound(s, d)), 0.0);
            w.note(std::abs(bd::avg_kl_bound(s, c * c * d) - c * bd::avg_kl_bound(s, d)), 1e-12);
        }
        return w.require(1e-12);
    });
}

void gaussian_suite(Suite& suite, const VerifyOptions& opts) {
    const gs::QuadratureSpec quad;  // defaults

    suite.run("quadrature_self_calibration", [&] {
        gs::MeanEstimationConfig cfg;
        cfg.t = 0.37;
        const auto profile = gs::mean_estimation_divergences(cfg, quad);  // guards run inside
        gs::BivariateGaussian g = gs::joint_of(cfg, 1);
        const auto me = gs::mixture_entropy(gs::GaussianMixture2{{1.0}, {g}}, quad);
        Worst w;
        w.note(std::abs(me.value - gs::gaussian_entropy(g)), 0.0);
        w.note(std::abs(profile.d_avg - profile.d_avg_entropy_route), 0.0);
        return w.require(1e-6);
    });

    suite.run("gaussian_mi_vs_quadrature", [&] {
        Worst w;
        for (double rho : {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9}) {
            gs::BivariateGaussian joint;
            joint.cov = {1.0, rho, rho, 1.0};
            gs::BivariateGaussian prod;  // identity covariance
            const auto quadrature = gs::kl_2d(gs::GaussianMixture2{{1.0}, {joint}},
                                              gs::GaussianMixture2{{1.0}, {prod}}, quad);
            w.note(std::abs(quadrature.value - gs::gaussian_mi(rho)), 0.0);
        }
        return w.require(1e-5);
    });

    suite.run("tv_2d_closed_form_shift", [&] {
        gs::BivariateGaussian a, b;
        b.mean = {2.0, 0.0};
        const auto tv = gs::tv_2d(gs::GaussianMixture2{{1.0}, {a}},
                                  gs::GaussianMixture2{{1.0}, {b}}, quad);
        Worst w;
        w.note(std::abs(tv.value - std::erf(1.0 / std::sqrt(2.0))), 0.0);
        return w.require(1e-6);
    });

    suite.run("t_reflection_symmetry", [&] {
        Worst w;
        for (double t : {0.15, 0.3, 0.45}) {
            gs::MeanEstimationConfig a, b;
            a.t = t;
            b.t = 1.0 - t;
            const auto pa = gs::mean_estimation_divergences(a, quad);
            const auto pb = gs::mean_estimation_divergences(b, quad);
            w.note(std::abs(pa.tv_avg - pb.tv_avg), 0.0);
            w.note(std::abs(pa.d_avg - pb.d_avg), 0.0);
            w.note(std::abs(pa.js_avg - pb.js_avg), 0.0);
            w.note(std::abs(pa.tv1 - pb.tv2), 0.0);
            w.note(std::abs(pa.gen_quad - pb.gen_quad), 0.0);
        }
        return w.require(1e-9);
    });

    suite.run("avg_kl_convexity", [&] {
        Worst w;
        for (double t : {0.1, 0.25, 0.5, 0.65, 0.9}) {
            gs::MeanEstimationConfig cfg;
            cfg.t = t;
            const auto p = gs::mean_estimation_divergences(cfg, quad);
            w.note(p.d_avg, 0.5 * (p.mi1 + p.mi2) + 1e-6);
            w.note(std::abs(p.mi1_quad - p.mi1), 1e-5);
            w.note(std::abs(p.mi2_quad - p.mi2), 1e-5);
        }
        return w.require(0.0);
    });

    suite.run("tv_equality_route", [&] {
        Worst w;
        for (double t : {0.2, 0.5, 0.8}) {
            gs::MeanEstimationConfig cfg;
            cfg.t = t;
            const auto p = gs::mean_estimation_divergences(cfg, quad);
            w.note(std::abs(p.tv_avg - p.exp_tv_cond_avg), 0.0);
        }
        return w.require(1e-5);
    });

    suite.run("beta_translation_invariance", [&] {
        gs::MeanEstimationConfig a, b;
        a.t = b.t = 0.3;
        b.beta = 7.0;
        const auto pa = gs::mean_estimation_divergences(a, quad);
        const auto pb = gs::mean_estimation_divergences(b, quad);
        gs::MCSpec mc;
        mc.n_samples = 200000;
        mc.seed = derive_seed(opts.seed, 301);
        const auto ga = gs::true_gen_error_mc(a, mc);
        mc.seed = derive_seed(opts.seed, 302);
        const auto gb = gs::true_gen_error_mc(b, mc);
        Worst w;
        w.note(std::abs(pa.d_avg - pb.d_avg), 1e-9);
        w.note(std::abs(pa.gen_quad - pb.gen_quad), 1e-9);
        w.note(std::abs(ga.value - gb.value), ga.ci_halfwidth + gb.ci_halfwidth);
        return w.require(0.0);
    });

    suite.run("untruncated_limit", [&] {
        gs::MeanEstimationConfig cfg;
        cfg.t = 0.35;
        cfg.c = 1e6 * cfg.sigma;  // cap never binds; gen collapses to sigma^2
        const auto g = gs::true_gen_error_quad(cfg, quad);
        Worst w;
        w.note(std::abs(g.value - cfg.sigma * cfg.sigma), 0.0);
        return w.require(1e-4 * cfg.sigma * cfg.sigma);
    });

    suite.run("mc_quadrature_agreement", [&] {
        gs::MeanEstimationConfig cfg;
        cfg.t = 0.3;
        const auto q = gs::true_gen_error_quad(cfg, quad);
        gs::MCSpec mc;
        mc.seed = derive_seed(opts.seed, 303);
        const auto m = gs::true_gen_error_mc(cfg, mc);
        Worst w;
        w.note(std::abs(q.value - m.value), m.ci_halfwidth + q.ci_halfwidth + 1e-3);
        return w.require(0.0);
    });

    suite.run("gaussian_bound_validity", [&] {
        Worst w;
        for (double t : {0.05, 0.3, 0.5, 0.7, 0.95}) {
            gs::MeanEstimationConfig cfg;
            cfg.t = t;
            bd::GaussianReportOptions gopts;
            gopts.mc_true_gen = false;
            const auto report = bd::gaussian_report(cfg, gopts);
            for (const auto& name : bd::BoundReport::names()) {
                w.note(std::abs(report.true_gen), entry(report, name) + report.ci + 1e-6);
            }
        }
        return w.require(0.0);
    });

    suite.run("nonnegative_outputs", [&] {
        Worst w;
        for (double t : {0.1, 0.5, 0.9}) {
            gs::MeanEstimationConfig cfg;
            cfg.t = t;
            const auto p = gs::mean_estimation_divergences(cfg, quad);
            for (double v : {p.tv1, p.tv2, p.tv_avg, p.d_avg, p.js1, p.js2, p.js_avg,
                             p.lautum_avg, p.exp_w_1, p.exp_w_2, p.exp_w_avg}) {
                w.note(-v, 0.0);
            }
            for (double v : {p.tv1, p.tv2, p.tv_avg}) w.note(v, 1.0);
        }
        return w.require(1e-12);
    });
}

}  // namespace

bool VerifyReport::all_pass() const {
    for (const auto& p : properties) {
        if (!p.pass) return false;
    }
    return true;
}

nlohmann::ordered_json VerifyReport::to_json() const {
    nlohmann::ordered_json j;
    j["suite"] = suite;
    auto arr = nlohmann::ordered_json::array();
    for (const auto& p : properties) {
        arr.push_back({{"name", p.name}, {"pass", p.pass}, {"detail", p.detail}});
    }
    j["properties"] = std::move(arr);
    return j;
}

VerifyReport run_verify(const std::string& suite_name, const VerifyOptions& opts) {
    if (suite_name != "discrete" && suite_name != "gaussian" && suite_name != "all") {
        throw ConfigError("unknown suite '" + suite_name + "'; expected discrete|gaussian|all");
    }
    VerifyReport report;
    report.suite = suite_name;
    if (opts.count <= 0) return report;

    Suite suite(report);
    if (suite_name == "discrete" || suite_name == "all") discrete_suite(suite, opts);
    if (suite_name == "gaussian" || suite_name == "all") gaussian_suite(suite, opts);
    return report;
}

}  // namespace genbounds::cli
