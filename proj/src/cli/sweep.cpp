#include "genbounds/cli/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <thread>

#include "genbounds/errors.hpp"
#include "genbounds/io/serialization.hpp"
#include "genbounds/rng.hpp"

namespace genbounds::cli {

namespace {

const std::vector<std::string>& all_bounds() { return bounds::BoundReport::names(); }

std::vector<std::string> resolve_bounds(const std::vector<std::string>& requested) {
    if (requested.empty()) return all_bounds();
    for (const auto& name : requested) {
        try {
            bounds::BoundReport probe;
            probe.entry(name);
        } catch (const ValidationError&) {
            throw ConfigError("unknown bound name '" + name + "'");
        }
    }
    return requested;
}

bool selected(const std::vector<std::string>& names, const std::string& name) {
    for (const auto& n : names) {
        if (n == name) return true;
    }
    return false;
}

std::string fmt10(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

}  // namespace

void SweepConfig::validate() const {
    for (double t : t_grid) {
        if (!(t > 0.0 && t < 1.0)) {
            throw ConfigError("t grid value " + std::to_string(t) + " outside (0, 1)");
        }
    }
    if (jobs < 1) throw ConfigError("jobs must be >= 1");
    quad.validate();
    mc.validate();
}

std::vector<double> default_t_grid() {
    std::vector<double> grid;
    grid.reserve(99);
    for (int i = 1; i <= 99; ++i) grid.push_back(static_cast<double>(i) / 100.0);
    return grid;
}

std::vector<SweepRow> compute_sweep(const SweepConfig& cfg) {
    SweepConfig local = cfg;
    if (local.t_grid.empty()) local.t_grid = default_t_grid();
    local.validate();
    const auto names = resolve_bounds(local.bound_names);

    std::vector<SweepRow> rows(local.t_grid.size());
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= rows.size()) return;
            SweepRow& row = rows[i];
            row.t = local.t_grid[i];
            try {
                gaussian::MeanEstimationConfig point;
                point.sigma = local.sigma;
                point.c = local.c;
                point.t = row.t;
                bounds::GaussianReportOptions opts;
                opts.quad = local.quad;
                opts.mc = local.mc;
                opts.mc.seed = derive_seed(local.mc.seed, i);
                row.report = bounds::gaussian_report(point, opts);
                for (const auto& name : all_bounds()) {
                    if (!selected(names, name)) {
                        row.report.entry(name) = bounds::BoundEntry::refused("not requested");
                    }
                }
            } catch (const std::exception& e) {
                row.error = e.what();
            }
        }
    };

    if (local.jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        const int threads = std::min<int>(local.jobs, static_cast<int>(rows.size()));
        pool.reserve(static_cast<std::size_t>(threads));
        for (int k = 0; k < threads; ++k) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows,
                      const std::vector<std::string>& bound_names) {
    const auto names = resolve_bounds(bound_names);
    std::string out = bounds::BoundReport::csv_header() + "\n";
    for (const auto& row : rows) {
        if (!row.error.empty()) {
            // keep the grid point visible, leave every value cell empty
            out += fmt10(row.t);
            for (std::size_t k = 0; k < 2 + all_bounds().size(); ++k) out += ",";
            out += "\n";
            continue;
        }
        out += row.report.csv_row(row.t) + "\n";
    }
    return out;
}

namespace {

// Fixed palette, one entry per CSV value column.
const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
                          "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#aec7e8", "#ffbb78"};

std::string fmt2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

}  // namespace

std::string sweep_svg(const std::vector<SweepRow>& rows,
                      const std::vector<std::string>& bound_names) {
    const auto names = resolve_bounds(bound_names);

    // series = every value column, in CSV order
    std::vector<std::string> series{"true_gen", "ci"};
    for (const auto& n : all_bounds()) series.push_back(n);

    auto value_of = [&](const SweepRow& row, const std::string& name,
                        double& out) -> bool {
        if (!row.error.empty()) return false;
        if (name == "true_gen") {
            out = row.report.true_gen;
            return true;
        }
        if (name == "ci") {
            out = row.report.ci;
            return true;
        }
        if (!selected(names, name)) return false;
        const auto& e = row.report.entry(name);
        if (!e.value) return false;
        out = *e.value;
        return true;
    };

    double tmin = 1e300, tmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& row : rows) {
        tmin = std::min(tmin, row.t);
        tmax = std::max(tmax, row.t);
        for (const auto& name : series) {
            double v;
            if (value_of(row, name, v)) {
                ymin = std::min(ymin, v);
                ymax = std::max(ymax, v);
            }
        }
    }
    if (!(ymax > ymin)) {
        ymin -= 1.0;
        ymax += 1.0;
    }
    if (!(tmax > tmin)) {
        tmin -= 1.0;
        tmax += 1.0;
    }

    const double width = 900, height = 600;
    const double ml = 70, mr = 180, mt = 30, mb = 50;
    auto sx = [&](double t) { return ml + (t - tmin) / (tmax - tmin) * (width - ml - mr); };
    auto sy = [&](double y) { return height - mb - (y - ymin) / (ymax - ymin) * (height - mt - mb); };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 900 600\">\n";
    svg += "<rect width=\"900\" height=\"600\" fill=\"white\"/>\n";
    // axes
    svg += "<line x1=\"" + fmt2(ml) + "\" y1=\"" + fmt2(height - mb) + "\" x2=\"" +
           fmt2(width - mr) + "\" y2=\"" + fmt2(height - mb) +
           "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    svg += "<line x1=\"" + fmt2(ml) + "\" y1=\"" + fmt2(mt) + "\" x2=\"" + fmt2(ml) + "\" y2=\"" +
           fmt2(height - mb) + "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    for (int k = 0; k <= 5; ++k) {
        const double t = tmin + (tmax - tmin) * k / 5.0;
        const double y = ymin + (ymax - ymin) * k / 5.0;
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.3g", t);
        svg += "<text x=\"" + fmt2(sx(t)) + "\" y=\"" + fmt2(height - mb + 20) +
               "\" font-size=\"12\" text-anchor=\"middle\">" + buf + "</text>\n";
        std::snprintf(buf, sizeof(buf), "%.3g", y);
        svg += "<text x=\"" + fmt2(ml - 8) + "\" y=\"" + fmt2(sy(y) + 4) +
               "\" font-size=\"12\" text-anchor=\"end\">" + buf + "</text>\n";
    }
    svg += "<text x=\"" + fmt2((ml + width - mr) / 2) + "\" y=\"" + fmt2(height - 12) +
           "\" font-size=\"13\" text-anchor=\"middle\">t</text>\n";

    for (std::size_t s = 0; s < series.size(); ++s) {
        std::string pts;
        for (const auto& row : rows) {
            double v;
            if (!value_of(row, series[s], v)) continue;
            pts += fmt2(sx(row.t)) + "," + fmt2(sy(v)) + " ";
        }
        if (pts.empty()) continue;
        const char* color = kPalette[s % (sizeof(kPalette) / sizeof(kPalette[0]))];
        svg += "<polyline fill=\"none\" stroke=\"";
        svg += color;
        svg += "\" stroke-width=\"1.5\" points=\"" + pts + "\"/>\n";
        const double ly = mt + 18.0 * static_cast<double>(s);
        svg += "<line x1=\"" + fmt2(width - mr + 12) + "\" y1=\"" + fmt2(ly) + "\" x2=\"" +
               fmt2(width - mr + 36) + "\" y2=\"" + fmt2(ly) + "\" stroke=\"";
        svg += color;
        svg += "\" stroke-width=\"2\"/>\n";
        svg += "<text x=\"" + fmt2(width - mr + 42) + "\" y=\"" + fmt2(ly + 4) +
               "\" font-size=\"12\">" + series[s] + "</text>\n";
    }
    svg += "</svg>\n";
    return svg;
}

std::vector<SweepRow> run_sweep(const SweepConfig& cfg) {
    auto rows = compute_sweep(cfg);
    for (const auto& row : rows) {
        if (!row.error.empty()) {
            std::cerr << "sweep: t = " << row.t << " failed: " << row.error << "\n";
        }
    }
    if (!cfg.out_csv.empty()) {
        io::write_file(cfg.out_csv, sweep_csv(rows, cfg.bound_names));
    }
    if (cfg.out_svg) {
        io::write_file(*cfg.out_svg, sweep_svg(rows, cfg.bound_names));
    }
    return rows;
}

}  // namespace genbounds::cli
