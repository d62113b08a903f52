#pragma once

#include <functional>
#include <string>

#include "genbounds/measures/point.hpp"

namespace genbounds::measures {

// Symmetric nonnegative ground cost on support points.
class Metric {
  public:
    enum class Kind { kEuclidean, kIndicator, kCustom };

    static Metric euclidean();
    static Metric indicator();
    static Metric custom(std::function<double(const Point&, const Point&)> fn, std::string name);

    double operator()(const Point& a, const Point& b) const;

    Kind kind() const { return kind_; }
    const std::string& name() const { return name_; }

  private:
    Metric(Kind k, std::string name) : kind_(k), name_(std::move(name)) {}

    Kind kind_;
    std::string name_;
    std::function<double(const Point&, const Point&)> fn_;
};

}  // namespace genbounds::measures
