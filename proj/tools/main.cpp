#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "genbounds/cli/sweep.hpp"
#include "genbounds/cli/verify.hpp"
#include "genbounds/errors.hpp"
#include "genbounds/io/serialization.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumericGuard = 3;
constexpr int kExitVerifyFailed = 4;

namespace gb = genbounds;

// "a:b:count" or a comma-separated list
std::vector<double> parse_t_grid(const std::string& text) {
    std::vector<double> grid;
    if (text.find(':') != std::string::npos) {
        double lo, hi;
        int count;
        if (std::sscanf(text.c_str(), "%lf:%lf:%d", &lo, &hi, &count) != 3 || count < 1) {
            throw gb::ConfigError("cannot parse t grid '" + text + "' (want lo:hi:count)");
        }
        for (int i = 0; i < count; ++i) {
            grid.push_back(count == 1 ? lo : lo + (hi - lo) * i / (count - 1));
        }
        return grid;
    }
    std::string cur;
    for (char ch : text + ",") {
        if (ch == ',') {
            if (!cur.empty()) {
                grid.push_back(std::stod(cur));
                cur.clear();
            }
        } else {
            cur += ch;
        }
    }
    if (grid.empty()) throw gb::ConfigError("empty t grid");
    return grid;
}

int cmd_sweep(const std::string& t_grid_text, double sigma, double c, std::uint64_t seed,
              std::int64_t samples, int quad_points, double half_width,
              const std::string& out_csv, const std::string& out_svg,
              const std::vector<std::string>& bound_names, int jobs) {
    gb::cli::SweepConfig cfg;
    cfg.sigma = sigma;
    cfg.c = c;
    if (!t_grid_text.empty()) cfg.t_grid = parse_t_grid(t_grid_text);
    cfg.mc.seed = seed;
    cfg.mc.n_samples = samples;
    cfg.quad.points_per_axis = quad_points;
    cfg.quad.half_width_sigmas = half_width;
    cfg.out_csv = out_csv;
    if (!out_svg.empty()) cfg.out_svg = out_svg;
    cfg.bound_names = bound_names;
    cfg.jobs = jobs;

    const auto rows = gb::cli::run_sweep(cfg);
    std::size_t failed = 0;
    for (const auto& row : rows) {
        if (!row.error.empty()) ++failed;
    }
    if (failed > 0) {
        std::cerr << failed << " of " << rows.size() << " grid points failed\n";
        return kExitNumericGuard;
    }
    std::cerr << "wrote " << out_csv << " (" << rows.size() << " points)\n";
    return kExitOk;
}

int cmd_verify(const std::string& suite, std::uint64_t seed, int count, const std::string& out,
               double tv_fault_scale) {
    gb::cli::VerifyOptions opts;
    opts.seed = seed;
    opts.count = count;
    opts.tv_fault_scale = tv_fault_scale;
    const auto report = gb::cli::run_verify(suite, opts);
    const std::string text = report.to_json().dump(2) + "\n";
    if (out.empty()) {
        std::cout << text;
    } else {
        gb::io::write_file(out, text);
    }
    for (const auto& p : report.properties) {
        std::cerr << (p.pass ? "[PASS] " : "[FAIL] ") << p.name << ": " << p.detail << "\n";
    }
    return report.all_pass() ? kExitOk : kExitVerifyFailed;
}

int cmd_discrete(const std::string& learner_path, const std::string& loss_path,
                 const std::string& out, std::size_t max_tuples) {
    gb::avgjoint::SizeCaps caps;
    caps.max_tuples = max_tuples;
    const auto learner = gb::io::learner_from_json(gb::io::parse_file(learner_path), caps);
    const auto loss = gb::io::loss_from_json(gb::io::parse_file(loss_path));
    gb::bounds::DiscreteReportOptions opts;
    opts.caps = caps;
    const auto report = gb::bounds::discrete_report(learner, loss, opts);
    const std::string text = gb::io::to_json(report).dump(2) + "\n";
    if (out.empty()) {
        std::cout << text;
    } else {
        gb::io::write_file(out, text);
    }
    for (const auto& name : gb::bounds::BoundReport::names()) {
        const auto& e = report.entry(name);
        if (!e.value) std::cerr << name << " refused: " << e.refusal << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"generalization-error bounds toolkit"};
    app.require_subcommand(1);

    // sweep
    auto* sweep = app.add_subcommand("sweep", "sweep the Gaussian mean-estimation example over t");
    double sigma = 10.0, c = 2.0, half_width = 8.0;
    std::string t_grid_text;
    std::uint64_t seed = 1;
    std::int64_t samples = 1'000'000;
    int quad_points = 1201, jobs = 1;
    std::string out_csv = "sweep.csv", out_svg;
    std::vector<std::string> bound_names;
    sweep->add_option("--sigma", sigma, "sample standard deviation");
    sweep->add_option("--c", c, "loss truncation level (cap c^2)");
    sweep->add_option("--t-grid", t_grid_text, "grid as lo:hi:count or comma list (default 0.01..0.99)");
    sweep->add_option("--seed", seed, "Monte Carlo seed");
    sweep->add_option("--samples", samples, "Monte Carlo sample count");
    sweep->add_option("--quad-points", quad_points, "quadrature points per axis");
    sweep->add_option("--half-width", half_width, "quadrature window half width, in sigmas");
    sweep->add_option("--out", out_csv, "output CSV path");
    sweep->add_option("--svg", out_svg, "optional SVG chart path");
    sweep->add_option("--bounds", bound_names, "subset of bound columns to compute");
    sweep->add_option("--jobs", jobs, "parallel grid points");

    // verify
    auto* verify = app.add_subcommand("verify", "run the property suites on random instances");
    std::string suite = "all", verify_out;
    std::uint64_t verify_seed = 1;
    int count = 50;
    double tv_fault_scale = 1.0;
    verify->add_option("--suite", suite, "discrete|gaussian|all");
    verify->add_option("--seed", verify_seed, "instance seed");
    verify->add_option("--count", count, "random instances per property");
    verify->add_option("--out", verify_out, "write the JSON report here instead of stdout");
    verify->add_option("--inject-tv-fault", tv_fault_scale,
                       "scale the average-joint TV (mutation hook for testing the suite)")
        ->group("");  // hidden

    // discrete
    auto* discrete = app.add_subcommand("discrete", "bound report for a discrete learner");
    std::string learner_path, loss_path, discrete_out;
    std::size_t max_tuples = 1'000'000;
    discrete->add_option("--learner", learner_path, "learner JSON file")->required();
    discrete->add_option("--loss", loss_path, "loss table JSON file")->required();
    discrete->add_option("--out", discrete_out, "write the report here instead of stdout");
    discrete->add_option("--max-tuples", max_tuples, "enumeration cap on |Z|^n");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (sweep->parsed()) {
            return cmd_sweep(t_grid_text, sigma, c, seed, samples, quad_points, half_width,
                             out_csv, out_svg, bound_names, jobs);
        }
        if (verify->parsed()) {
            return cmd_verify(suite, verify_seed, count, verify_out, tv_fault_scale);
        }
        if (discrete->parsed()) {
            return cmd_discrete(learner_path, loss_path, discrete_out, max_tuples);
        }
    } catch (const genbounds::NumericGuard& e) {
        std::cerr << "numeric guard: " << e.what() << "\n";
        return kExitNumericGuard;
    } catch (const genbounds::InfeasibleLP& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return kExitNumericGuard;
    } catch (const genbounds::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitOk;
}
