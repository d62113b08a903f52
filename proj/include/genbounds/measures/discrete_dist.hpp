#pragma once

#include <cstddef>
#include <vector>

#include "genbounds/measures/point.hpp"

namespace genbounds::measures {

// Probabilities must sum to 1 within this tolerance at construction;
// anything closer than that is renormalized, anything further is rejected.
inline constexpr double kProbSumTol = 1e-12;

// Finite probability distribution over labeled points.
class DiscreteDist {
  public:
    DiscreteDist(Support support, std::vector<double> probs);

    static DiscreteDist delta(Point p);
    static DiscreteDist uniform(Support support);

    const Support& support() const { return support_; }
    const std::vector<double>& probs() const { return probs_; }
    std::size_t size() const { return probs_.size(); }
    double prob(std::size_t i) const { return probs_[i]; }
    const Point& point(std::size_t i) const { return support_[i]; }

    bool same_support(const DiscreteDist& other) const {
        return same_labels(support_, other.support_);
    }

  private:
    Support support_;
    std::vector<double> probs_;
};

// Merge supports by label, zero-padding missing entries, so that the
// binary divergences (which require identical ordered supports) can be
// applied to distributions built over different alphabets.
std::pair<DiscreteDist, DiscreteDist> align(const DiscreteDist& p, const DiscreteDist& q);

}  // namespace genbounds::measures
