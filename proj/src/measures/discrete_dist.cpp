#include "genbounds/measures/discrete_dist.hpp"

#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include "genbounds/errors.hpp"

namespace genbounds::measures {

DiscreteDist::DiscreteDist(Support support, std::vector<double> probs)
    : support_(std::move(support)), probs_(std::move(probs)) {
    if (support_.size() != probs_.size()) {
        throw ValidationError("distribution: support and probability lengths differ (" +
                              std::to_string(support_.size()) + " vs " +
                              std::to_string(probs_.size()) + ")");
    }
    if (support_.empty()) throw ValidationError("distribution: empty support");

    std::unordered_set<std::string> seen;
    for (const auto& pt : support_) {
        if (!seen.insert(pt.label).second) {
            throw ValidationError("distribution: duplicate support label '" + pt.label + "'");
        }
    }

    double sum = 0.0;
    for (double p : probs_) {
        if (!(p >= 0.0)) {
            throw ValidationError("distribution: negative or non-finite probability " +
                                  std::to_string(p));
        }
        sum += p;
    }
    if (std::abs(sum - 1.0) > kProbSumTol) {
        throw ValidationError("distribution: probabilities sum to " + std::to_string(sum) +
                              ", outside tolerance " + std::to_string(kProbSumTol));
    }
    for (double& p : probs_) p /= sum;
}

DiscreteDist DiscreteDist::delta(Point p) {
    Support s;
    s.push_back(std::move(p));
    return DiscreteDist(std::move(s), {1.0});
}

DiscreteDist DiscreteDist::uniform(Support support) {
    std::vector<double> probs(support.size(), 1.0 / static_cast<double>(support.size()));
    return DiscreteDist(std::move(support), std::move(probs));
}

std::pair<DiscreteDist, DiscreteDist> align(const DiscreteDist& p, const DiscreteDist& q) {
    Support merged = p.support();
    std::unordered_map<std::string, std::size_t> index;
    index.reserve(merged.size() + q.size());
    for (std::size_t i = 0; i < merged.size(); ++i) index[merged[i].label] = i;
    for (std::size_t j = 0; j < q.size(); ++j) {
        auto it = index.find(q.point(j).label);
        if (it == index.end()) {
            index[q.point(j).label] = merged.size();
            merged.push_back(q.point(j));
        } else if (q.point(j).has_coord() && merged[it->second].has_coord() &&
                   q.point(j).coord != merged[it->second].coord) {
            throw SupportMismatch("align: label '" + q.point(j).label +
                                  "' carries different coordinates in the two supports");
        }
    }

    std::vector<double> pp(merged.size(), 0.0), qq(merged.size(), 0.0);
    for (std::size_t i = 0; i < p.size(); ++i) pp[i] = p.prob(i);
    for (std::size_t j = 0; j < q.size(); ++j) qq[index[q.point(j).label]] = q.prob(j);
    return {DiscreteDist(merged, std::move(pp)), DiscreteDist(merged, std::move(qq))};
}

}  // namespace genbounds::measures
