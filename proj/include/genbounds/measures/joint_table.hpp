#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "genbounds/measures/discrete_dist.hpp"
#include "genbounds/measures/point.hpp"

namespace genbounds::measures {

// Exact joint probability table over hypothesis alphabet W x sample
// alphabet Z. Row-major storage, p(w_i, z_j) = p_[i * |Z| + j].
class JointTable {
  public:
    JointTable(Support w_support, Support z_support, std::vector<double> p);

    static JointTable product(const DiscreteDist& w, const DiscreteDist& z);
    static JointTable average(std::span<const JointTable> tables);

    const Support& w_support() const { return w_support_; }
    const Support& z_support() const { return z_support_; }
    std::size_t w_size() const { return w_support_.size(); }
    std::size_t z_size() const { return z_support_.size(); }

    double at(std::size_t wi, std::size_t zj) const { return p_[wi * z_support_.size() + zj]; }
    const std::vector<double>& data() const { return p_; }

    DiscreteDist marginal_w() const;
    DiscreteDist marginal_z() const;

    // P(W | Z = z_j); requires positive column mass.
    DiscreteDist conditional_w_given_z(std::size_t zj) const;

    // The table as a distribution over (w, z) pairs, so scalar divergences
    // apply directly. Pair labels are "<w>|<z>".
    DiscreteDist flatten() const;

    bool same_alphabets(const JointTable& other) const {
        return same_labels(w_support_, other.w_support_) &&
               same_labels(z_support_, other.z_support_);
    }

  private:
    Support w_support_;
    Support z_support_;
    std::vector<double> p_;
};

}  // namespace genbounds::measures
