#pragma once

#include <span>

#include "genbounds/measures/discrete_dist.hpp"
#include "genbounds/measures/joint_table.hpp"
#include "genbounds/measures/metric.hpp"

namespace genbounds::measures {

// All divergences are in nats.

// KL divergence D(P || Q). Requires identical supports and absolute
// continuity of P w.r.t. Q. 0 * log(0/q) = 0.
double kl(const DiscreteDist& p, const DiscreteDist& q);

// Total variation distance, (1/2) sum |P - Q|, in [0, 1].
double tv(const DiscreteDist& p, const DiscreteDist& q);

// Jensen-Shannon divergence, in [0, log 2]. Always finite.
double js(const DiscreteDist& p, const DiscreteDist& q);

// Donsker-Varadhan gap E_P[g] - log E_Q[e^g] for a witness g given by its
// values on the (shared) support. Never exceeds kl(p, q).
double dv_gap(const DiscreteDist& p, const DiscreteDist& q, std::span<const double> witness);

// I(W; Z) of a joint table: KL of the table against the product of its
// own marginals.
double mutual_information(const JointTable& joint);

// Lautum information: the KL order reversed, D(product || joint). Requires
// the joint to be positive wherever the product of marginals is.
double lautum_information(const JointTable& joint);

// Wasserstein-1 transport cost under a ground metric. Dispatches to the
// closed 1-D CDF formula for Euclidean costs on 1-D coordinates and to the
// total variation formula for the indicator metric; everything else is
// solved exactly by the transport LP.
double wasserstein1(const DiscreteDist& p, const DiscreteDist& q, const Metric& m);

// Force the exact LP route (transportation simplex), whatever the metric.
double wasserstein1_lp(const DiscreteDist& p, const DiscreteDist& q, const Metric& m);

// Closed-form route for 1-D real supports with |.| cost: the integral of
// |F_P - F_Q| over the merged support.
double wasserstein1_1d(const DiscreteDist& p, const DiscreteDist& q);

// Exact optimum of min sum pi(i,j) c(i,j) with marginals p and q.
// supply/demand must each sum to the same total mass.
double solve_transport(std::span<const double> supply, std::span<const double> demand,
                       std::span<const double> cost);

}  // namespace genbounds::measures
