#include "genbounds/measures/metric.hpp"

#include <cmath>

#include "genbounds/errors.hpp"

namespace genbounds::measures {

Metric Metric::euclidean() { return Metric(Kind::kEuclidean, "euclidean"); }

Metric Metric::indicator() { return Metric(Kind::kIndicator, "indicator"); }

Metric Metric::custom(std::function<double(const Point&, const Point&)> fn, std::string name) {
    Metric m(Kind::kCustom, std::move(name));
    m.fn_ = std::move(fn);
    return m;
}

double Metric::operator()(const Point& a, const Point& b) const {
    switch (kind_) {
        case Kind::kIndicator:
            return a.label == b.label ? 0.0 : 1.0;
        case Kind::kEuclidean: {
            if (!a.has_coord() || !b.has_coord()) {
                throw MetricUndefined("euclidean metric: point '" +
                                      (a.has_coord() ? b.label : a.label) +
                                      "' has no coordinates");
            }
            if (a.coord.size() != b.coord.size()) {
                throw MetricUndefined("euclidean metric: coordinate dimensions differ");
            }
            double s = 0.0;
            for (std::size_t k = 0; k < a.coord.size(); ++k) {
                const double d = a.coord[k] - b.coord[k];
                s += d * d;
            }
            return std::sqrt(s);
        }
        case Kind::kCustom:
            return fn_(a, b);
    }
    return 0.0;  // unreachable
}

}  // namespace genbounds::measures
