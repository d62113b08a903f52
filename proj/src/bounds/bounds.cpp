#include "genbounds/bounds/bounds.hpp"

#include <cmath>
#include <cstdio>

#include "genbounds/errors.hpp"
#include "genbounds/measures/measures.hpp"

namespace genbounds::bounds {

namespace {

constexpr double kLn2 = 0.6931471805599453094172321214582;

// Exact zero and -1e-17 from exact discrete arithmetic are both "zero";
// anything clearly negative is a caller bug.
double checked_divergence(double v, const char* what) {
    if (v < -1e-9) {
        throw NegativeDivergence(std::string(what) + " is negative: " + std::to_string(v));
    }
    return std::max(v, 0.0);
}

double checked_js(double v) {
    if (v < -1e-9 || v > kLn2 + 1e-9) {
        throw JsOutOfRange("Jensen-Shannon value outside [0, log 2]: " + std::to_string(v));
    }
    return std::min(std::max(v, 0.0), kLn2);
}

}  // namespace

LossRegularity LossRegularity::lipschitz(double l) {
    if (!(l > 0.0)) throw ValidationError("regularity: Lipschitz constant must be positive");
    return LossRegularity(Kind::kLipschitz, 0.0, 0.0, l);
}

LossRegularity LossRegularity::bounded(double a, double b) {
    if (!(b > a)) throw ValidationError("regularity: bounded needs b > a");
    return LossRegularity(Kind::kBounded, a, b, 0.0);
}

LossRegularity LossRegularity::subgaussian(double sigma) {
    if (!(sigma > 0.0)) throw ValidationError("regularity: sub-Gaussian constant must be positive");
    return LossRegularity(Kind::kSubgaussian, 0.0, 0.0, sigma);
}

double LossRegularity::sub_gaussian_sigma() const {
    switch (kind_) {
        case Kind::kBounded:
            return 0.5 * (b_ - a_);  // Hoeffding
        case Kind::kSubgaussian:
        case Kind::kLipschitz:
            return sigma_;
    }
    return sigma_;
}

double LossRegularity::lipschitz_constant() const {
    switch (kind_) {
        case Kind::kBounded:
            return b_ - a_;  // under the indicator metric
        case Kind::kLipschitz:
        case Kind::kSubgaussian:
            return sigma_;
    }
    return sigma_;
}

double avg_w_bound(double lipschitz, double expected_w) {
    return lipschitz * checked_divergence(expected_w, "expected Wasserstein");
}

double ind_w_bound(double lipschitz, std::span<const double> per_sample_expected_w) {
    double s = 0.0;
    for (double w : per_sample_expected_w) s += checked_divergence(w, "expected Wasserstein");
    return lipschitz * s / static_cast<double>(per_sample_expected_w.size());
}

double avg_tv_bound(double a, double b, double tv_value) {
    return (b - a) * checked_divergence(tv_value, "total variation");
}

double ind_tv_bound(double a, double b, std::span<const double> per_sample_tv) {
    double s = 0.0;
    for (double v : per_sample_tv) s += checked_divergence(v, "total variation");
    return (b - a) * s / static_cast<double>(per_sample_tv.size());
}

double avg_kl_bound(double sigma_sg, double d_value) {
    return std::sqrt(2.0 * sigma_sg * sigma_sg * checked_divergence(d_value, "KL divergence"));
}

double ismi_bound(double sigma_sg, std::span<const double> mi_values) {
    double s = 0.0;
    for (double mi : mi_values) {
        s += std::sqrt(2.0 * sigma_sg * sigma_sg * checked_divergence(mi, "mutual information"));
    }
    return s / static_cast<double>(mi_values.size());
}

double per_sample_kl_chain(double sigma_sg, std::span<const double> mi_values) {
    double s = 0.0;
    for (double mi : mi_values) s += checked_divergence(mi, "mutual information");
    return std::sqrt(2.0 * sigma_sg * sigma_sg * s / static_cast<double>(mi_values.size()));
}

double js_avg_bound(double sigma_sg, double js_value) {
    return 2.0 * std::sqrt(2.0 * sigma_sg * sigma_sg * checked_js(js_value));
}

double js_per_sample_bound(double sigma_sg, std::span<const double> js_values) {
    double s = 0.0;
    for (double v : js_values) s += checked_js(v);
    return 2.0 * std::sqrt(2.0 * sigma_sg * sigma_sg * s /
                           static_cast<double>(js_values.size()));
}

double lautum_avg_bound(double sigma_sg, double rev_kl) {
    return std::sqrt(2.0 * sigma_sg * sigma_sg * checked_divergence(rev_kl, "reverse KL"));
}

double lautum_per_sample_bound(double sigma_sg, std::span<const double> lautum_values) {
    double s = 0.0;
    for (double v : lautum_values) s += checked_divergence(v, "Lautum information");
    return std::sqrt(2.0 * sigma_sg * sigma_sg * s /
                     static_cast<double>(lautum_values.size()));
}

double emp_diff_bound(double sigma_sg, double d_ab) {
    return std::sqrt(2.0 * sigma_sg * sigma_sg * checked_divergence(d_ab, "KL divergence"));
}

double mi_dataset_bound(double sigma_sg, double i_ws, int n) {
    if (n < 1) throw ValidationError("mi_dataset_bound: n must be >= 1");
    return std::sqrt(2.0 * sigma_sg * sigma_sg *
                     checked_divergence(i_ws, "dataset mutual information") /
                     static_cast<double>(n));
}

// --- report plumbing ---

const std::vector<std::string>& BoundReport::names() {
    static const std::vector<std::string> n{"ismi",   "avg_kl", "ind_tv",    "avg_tv",
                                            "ind_w",  "avg_w",  "js_avg",    "js_ps",
                                            "lautum_avg", "lautum_ps"};
    return n;
}

const BoundEntry& BoundReport::entry(const std::string& name) const {
    return const_cast<BoundReport*>(this)->entry(name);
}

BoundEntry& BoundReport::entry(const std::string& name) {
    if (name == "ismi") return ismi;
    if (name == "avg_kl") return avg_kl;
    if (name == "ind_tv") return ind_tv;
    if (name == "avg_tv") return avg_tv;
    if (name == "ind_w") return ind_w;
    if (name == "avg_w") return avg_w;
    if (name == "js_avg") return js_avg;
    if (name == "js_ps") return js_ps;
    if (name == "lautum_avg") return lautum_avg;
    if (name == "lautum_ps") return lautum_ps;
    throw ValidationError("unknown bound name '" + name + "'");
}

std::string BoundReport::csv_header() {
    return "t,true_gen,ci,ismi,avg_kl,ind_tv,avg_tv,ind_w,avg_w,js_avg,js_ps,lautum_avg,"
           "lautum_ps";
}

namespace {
std::string fmt10(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}
}  // namespace

std::string BoundReport::csv_row(double t) const {
    std::string row = fmt10(t) + "," + fmt10(true_gen) + "," + fmt10(ci);
    for (const auto& name : names()) {
        const BoundEntry& e = entry(name);
        row += ",";
        if (e.value) row += fmt10(*e.value);  // refusals and errors stay empty, never zero
    }
    return row;
}

double derive_lipschitz(const avgjoint::LossTable& loss, const measures::Metric& metric,
                        const measures::Support& w_support) {
    if (w_support.size() != loss.w_size()) {
        throw AlphabetMismatch("derive_lipschitz: support size does not match loss table");
    }
    double best = 0.0;
    for (std::size_t w = 0; w < loss.w_size(); ++w) {
        for (std::size_t w2 = w + 1; w2 < loss.w_size(); ++w2) {
            const double d = metric(w_support[w], w_support[w2]);
            if (d <= 0.0) continue;
            for (std::size_t z = 0; z < loss.z_size(); ++z) {
                best = std::max(best, std::abs(loss.at(w, z) - loss.at(w2, z)) / d);
            }
        }
    }
    return best;
}

BoundReport discrete_report(const avgjoint::LearnerSpec& learner,
                            const avgjoint::LossTable& loss,
                            const DiscreteReportOptions& opts) {
    using measures::JointTable;
    namespace aj = avgjoint;

    BoundReport report;
    report.true_gen = aj::gen_error_direct(learner, loss);
    report.ci = 0.0;  // exact enumeration

    const aj::AverageJoint avg = aj::average_joint(learner);
    const bool iid = learner.is_iid(opts.iid_tol);
    const double sigma_sg = 0.5 * (loss.b() - loss.a());
    const double lip = opts.lipschitz.value_or(loss.b() - loss.a());
    const int n = learner.n();

    const JointTable prod = JointTable::product(avg.hypothesis_marginal, avg.sample_marginal);
    const auto flat_avg = avg.joint.flatten();
    const auto flat_prod = prod.flatten();

    // average-joint bounds; these only need the average sample law
    report.avg_kl = BoundEntry::of(avg_kl_bound(sigma_sg, measures::kl(flat_avg, flat_prod)));
    report.js_avg = BoundEntry::of(js_avg_bound(sigma_sg, measures::js(flat_avg, flat_prod)));
    try {
        report.lautum_avg =
            BoundEntry::of(lautum_avg_bound(sigma_sg, measures::kl(flat_prod, flat_avg)));
    } catch (const AbsoluteContinuityViolation& e) {
        report.lautum_avg = BoundEntry::refused(e.what());
    }

    const std::string non_iid = "requires i.i.d. training samples";
    if (!iid) {
        report.ismi = BoundEntry::refused(non_iid);
        report.ind_tv = BoundEntry::refused(non_iid);
        report.avg_tv = BoundEntry::refused(non_iid);
        report.ind_w = BoundEntry::refused(non_iid);
        report.avg_w = BoundEntry::refused(non_iid);
        report.js_ps = BoundEntry::refused(non_iid);
        report.lautum_ps = BoundEntry::refused(non_iid);
        return report;
    }

    std::vector<double> mi(static_cast<std::size_t>(n));
    std::vector<double> tv_i(static_cast<std::size_t>(n));
    std::vector<double> js_i(static_cast<std::size_t>(n));
    std::vector<double> lautum_i(static_cast<std::size_t>(n));
    bool lautum_ok = true;
    std::string lautum_why;
    for (int i = 0; i < n; ++i) {
        const JointTable& ji = avg.per_sample[static_cast<std::size_t>(i)];
        const auto flat_i = ji.flatten();
        mi[static_cast<std::size_t>(i)] = measures::mutual_information(ji);
        tv_i[static_cast<std::size_t>(i)] = measures::tv(flat_i, flat_prod);
        js_i[static_cast<std::size_t>(i)] = measures::js(flat_i, flat_prod);
        if (lautum_ok) {
            try {
                lautum_i[static_cast<std::size_t>(i)] = measures::lautum_information(ji);
            } catch (const AbsoluteContinuityViolation& e) {
                lautum_ok = false;
                lautum_why = e.what();
            }
        }
    }

    report.ismi = BoundEntry::of(ismi_bound(sigma_sg, mi));
    report.ind_tv = BoundEntry::of(ind_tv_bound(loss.a(), loss.b(), tv_i));
    report.avg_tv =
        BoundEntry::of(avg_tv_bound(loss.a(), loss.b(), measures::tv(flat_avg, flat_prod)));
    report.js_ps = BoundEntry::of(js_per_sample_bound(sigma_sg, js_i));
    report.lautum_ps = lautum_ok
                           ? BoundEntry::of(lautum_per_sample_bound(sigma_sg, lautum_i))
                           : BoundEntry::refused(lautum_why);

    // conditional-route Wasserstein terms, weighted by the sample law
    const auto& pz = avg.sample_marginal;
    const auto& pw = avg.hypothesis_marginal;
    double exp_w_avg = 0.0;
    std::vector<double> exp_w_i(static_cast<std::size_t>(n), 0.0);
    for (std::size_t z = 0; z < pz.size(); ++z) {
        if (pz.prob(z) <= 0.0) continue;
        exp_w_avg += pz.prob(z) * measures::wasserstein1(avg.joint.conditional_w_given_z(z), pw,
                                                         opts.w_metric);
        for (int i = 0; i < n; ++i) {
            const JointTable& ji = avg.per_sample[static_cast<std::size_t>(i)];
            exp_w_i[static_cast<std::size_t>(i)] +=
                pz.prob(z) *
                measures::wasserstein1(ji.conditional_w_given_z(z), pw, opts.w_metric);
        }
    }
    report.avg_w = BoundEntry::of(avg_w_bound(lip, exp_w_avg));
    report.ind_w = BoundEntry::of(ind_w_bound(lip, exp_w_i));
    return report;
}

BoundReport gaussian_report(const gaussian::MeanEstimationConfig& cfg,
                            const GaussianReportOptions& opts) {
    namespace gs = gaussian;
    const gs::DivergenceProfile p = gs::mean_estimation_divergences(cfg, opts.quad);
    const double sigma_sg = cfg.sub_gaussian_sigma();
    const double lip = cfg.lipschitz_constant();
    const double c2 = cfg.c * cfg.c;

    BoundReport report;
    if (opts.mc_true_gen) {
        const gs::GenEstimate g = gs::true_gen_error_mc(cfg, opts.mc);
        report.true_gen = g.value;
        report.ci = g.ci_halfwidth;
    } else {
        report.true_gen = p.gen_quad;
        report.ci = p.quad_error;
    }

    const std::vector<double> mi{p.mi1, p.mi2};
    const std::vector<double> tv_i{p.tv1, p.tv2};
    const std::vector<double> js_i{p.js1, p.js2};
    const std::vector<double> lautum_i{p.lautum1, p.lautum2};
    const std::vector<double> w_i{p.exp_w_1, p.exp_w_2};

    report.ismi = BoundEntry::of(ismi_bound(sigma_sg, mi));
    report.avg_kl = BoundEntry::of(avg_kl_bound(sigma_sg, p.d_avg));
    report.ind_tv = BoundEntry::of(ind_tv_bound(0.0, c2, tv_i));
    report.avg_tv = BoundEntry::of(avg_tv_bound(0.0, c2, p.tv_avg));
    report.ind_w = BoundEntry::of(ind_w_bound(lip, w_i));
    report.avg_w = BoundEntry::of(avg_w_bound(lip, p.exp_w_avg));
    report.js_avg = BoundEntry::of(js_avg_bound(sigma_sg, p.js_avg));
    report.js_ps = BoundEntry::of(js_per_sample_bound(sigma_sg, js_i));
    report.lautum_avg = BoundEntry::of(lautum_avg_bound(sigma_sg, p.lautum_avg));
    report.lautum_ps = BoundEntry::of(lautum_per_sample_bound(sigma_sg, lautum_i));
    return report;
}

}  // namespace genbounds::bounds
