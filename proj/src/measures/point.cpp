#include "genbounds/measures/point.hpp"

#include <cstdio>

namespace genbounds::measures {

Support make_support(const std::vector<std::string>& labels) {
    Support s;
    s.reserve(labels.size());
    for (const auto& l : labels) s.emplace_back(l);
    return s;
}

Support make_support_1d(const std::vector<double>& xs) {
    Support s;
    s.reserve(xs.size());
    for (double x : xs) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.17g", x);
        s.emplace_back(std::string(buf), std::vector<double>{x});
    }
    return s;
}

bool same_labels(const Support& a, const Support& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].label != b[i].label) return false;
    }
    return true;
}

}  // namespace genbounds::measures
