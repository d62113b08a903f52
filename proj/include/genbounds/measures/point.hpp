#pragma once

#include <initializer_list>
#include <string>
#include <vector>

namespace genbounds::measures {

// A support point: a label that identifies it plus optional real
// coordinates used by geometric metrics. Labels are the identity;
// coordinates are payload.
struct Point {
    std::string label;
    std::vector<double> coord;

    Point() = default;
    explicit Point(std::string l) : label(std::move(l)) {}
    Point(std::string l, std::vector<double> c) : label(std::move(l)), coord(std::move(c)) {}

    bool has_coord() const { return !coord.empty(); }
};

using Support = std::vector<Point>;

Support make_support(const std::vector<std::string>& labels);

// 1-D support with coordinate = value and label = decimal rendering.
Support make_support_1d(const std::vector<double>& xs);

bool same_labels(const Support& a, const Support& b);

}  // namespace genbounds::measures
