#pragma once

#include <cstddef>
#include <vector>

#include "genbounds/avgjoint/learner.hpp"
#include "genbounds/measures/discrete_dist.hpp"
#include "genbounds/rng.hpp"

namespace genbounds::cli {

// Deterministic random instances for property suites and tests.

measures::Support indexed_support(const std::string& prefix, std::size_t size);

// labels "x0..", 1-D coordinates drawn uniformly from [lo, hi]
measures::Support random_support_1d(Rng& rng, std::size_t size, double lo = -1.0, double hi = 1.0);

// probabilities floored at min_weight / (size * (1 + min_weight)) and normalized
measures::DiscreteDist random_dist(Rng& rng, measures::Support support, double min_weight = 0.0);

measures::JointTable random_joint(Rng& rng, std::size_t w_size, std::size_t z_size,
                                  double min_weight = 0.0);

// Random learner over "w*"/"z*" alphabets with integer 1-D coordinates.
// iid draws P_S as a product law; min_weight > 0 keeps every conditional
// entry strictly positive.
avgjoint::LearnerSpec random_learner(Rng& rng, std::size_t w_size, std::size_t z_size, int n,
                                     bool iid, double min_weight = 0.0);

// Same P_S as `base`, fresh conditionals.
avgjoint::LearnerSpec relabeled_learner(Rng& rng, const avgjoint::LearnerSpec& base,
                                        double min_weight = 0.0);

// Exchangeable learner: conditionals depend on tuples only through their
// sorted sample multiset.
avgjoint::LearnerSpec random_symmetric_learner(Rng& rng, std::size_t w_size, std::size_t z_size,
                                               int n, double min_weight = 0.0);

avgjoint::LossTable random_loss(Rng& rng, std::size_t w_size, std::size_t z_size, double a = 0.0,
                                double b = 1.0);

// Values of a random 1-Lipschitz function (w.r.t. the 1-D coordinates) on
// the given support.
std::vector<double> random_lipschitz_witness(Rng& rng, const measures::Support& support);

std::vector<double> random_witness(Rng& rng, std::size_t size, double lo = -2.0, double hi = 2.0);

}  // namespace genbounds::cli
