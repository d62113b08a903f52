#include "genbounds/measures/measures.hpp"

#include <algorithm>
#include <cmath>

#include "genbounds/errors.hpp"

namespace genbounds::measures {

namespace {

void require_same_support(const DiscreteDist& p, const DiscreteDist& q, const char* op) {
    if (!p.same_support(q)) {
        throw SupportMismatch(std::string(op) + ": supports differ (use align() to merge)");
    }
}

}  // namespace

double kl(const DiscreteDist& p, const DiscreteDist& q) {
    require_same_support(p, q, "kl");
    double d = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double pi = p.prob(i);
        if (pi == 0.0) continue;
        const double qi = q.prob(i);
        if (qi == 0.0) {
            throw AbsoluteContinuityViolation("kl: P has mass at '" + p.point(i).label +
                                              "' where Q has none");
        }
        d += pi * std::log(pi / qi);
    }
    return d;
}

double tv(const DiscreteDist& p, const DiscreteDist& q) {
    require_same_support(p, q, "tv");
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p.prob(i) - q.prob(i));
    return 0.5 * s;
}

double js(const DiscreteDist& p, const DiscreteDist& q) {
    require_same_support(p, q, "js");
    // midpoint has mass wherever either argument does, so both KL terms are
    // finite without any absolute-continuity precondition
    double d = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double pi = p.prob(i);
        const double qi = q.prob(i);
        const double mi = 0.5 * (pi + qi);
        if (pi > 0.0) d += 0.5 * pi * std::log(pi / mi);
        if (qi > 0.0) d += 0.5 * qi * std::log(qi / mi);
    }
    return d;
}

double dv_gap(const DiscreteDist& p, const DiscreteDist& q, std::span<const double> witness) {
    require_same_support(p, q, "dv_gap");
    if (witness.size() != p.size()) {
        throw ValidationError("dv_gap: witness length does not match support");
    }
    double gmax = *std::max_element(witness.begin(), witness.end());
    double ep = 0.0, eq = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        ep += p.prob(i) * witness[i];
        eq += q.prob(i) * std::exp(witness[i] - gmax);
    }
    return ep - (gmax + std::log(eq));
}

double mutual_information(const JointTable& joint) {
    const DiscreteDist flat = joint.flatten();
    const DiscreteDist prod = JointTable::product(joint.marginal_w(), joint.marginal_z()).flatten();
    return kl(flat, prod);
}

double lautum_information(const JointTable& joint) {
    const DiscreteDist flat = joint.flatten();
    const DiscreteDist prod = JointTable::product(joint.marginal_w(), joint.marginal_z()).flatten();
    return kl(prod, flat);
}

}  // namespace genbounds::measures
