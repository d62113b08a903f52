#pragma once

#include <optional>
#include <string>
#include <vector>

#include "genbounds/bounds/bounds.hpp"
#include "genbounds/gaussian/gaussian.hpp"

namespace genbounds::cli {

struct SweepConfig {
    double sigma = 10.0;
    double c = 2.0;
    std::vector<double> t_grid;  // defaults to 99 points 0.01..0.99
    gaussian::MCSpec mc;
    gaussian::QuadratureSpec quad;
    std::string out_csv;
    std::optional<std::string> out_svg;
    std::vector<std::string> bound_names;  // subset to compute; empty = all
    int jobs = 1;

    void validate() const;
};

std::vector<double> default_t_grid();

struct SweepRow {
    double t = 0.0;
    bounds::BoundReport report;
    std::string error;  // nonempty when the point failed; its cells stay empty
};

// One report per grid point. Per-point seeds derive from (seed, index), so
// the jobs count never changes the numbers.
std::vector<SweepRow> compute_sweep(const SweepConfig& cfg);

std::string sweep_csv(const std::vector<SweepRow>& rows,
                      const std::vector<std::string>& bound_names);

std::string sweep_svg(const std::vector<SweepRow>& rows,
                      const std::vector<std::string>& bound_names);

// Computes, then writes the CSV (and optional SVG). Returns the rows.
std::vector<SweepRow> run_sweep(const SweepConfig& cfg);

}  // namespace genbounds::cli
