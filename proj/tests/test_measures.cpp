#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "genbounds/cli/random_instances.hpp"
#include "genbounds/errors.hpp"
#include "genbounds/measures/measures.hpp"
#include "genbounds/rng.hpp"

using namespace genbounds;
using namespace genbounds::measures;
using cli::indexed_support;
using cli::random_dist;

namespace {

DiscreteDist dist2(double p0, double p1) {
    return DiscreteDist(indexed_support("x", 2), {p0, p1});
}

}  // namespace

TEST_CASE("kl hand-evaluated values") {
    const auto p = dist2(0.5, 0.5);
    const auto q = dist2(0.25, 0.75);
    CHECK(kl(p, p) == doctest::Approx(0.0).epsilon(1e-15));
    // 0.5 ln 2 + 0.5 ln(2/3)
    const double expected = 0.5 * std::log(2.0) + 0.5 * std::log(2.0 / 3.0);
    CHECK(kl(p, q) == doctest::Approx(expected).epsilon(1e-14));
    CHECK(expected == doctest::Approx(0.14384).epsilon(1e-4));
}

TEST_CASE("kl rejects disjoint supports") {
    CHECK_THROWS_AS(kl(dist2(1.0, 0.0), dist2(0.0, 1.0)), AbsoluteContinuityViolation);
    // zero-mass points on the left are fine
    CHECK(kl(dist2(0.0, 1.0), dist2(0.5, 0.5)) == doctest::Approx(std::log(2.0)));
}

TEST_CASE("kl requires identical supports") {
    const auto p = dist2(0.5, 0.5);
    const auto q = DiscreteDist(indexed_support("y", 2), {0.5, 0.5});
    CHECK_THROWS_AS(kl(p, q), SupportMismatch);
    auto [pa, qa] = align(p, q);
    CHECK(pa.size() == 4);
    CHECK(pa.same_support(qa));
    CHECK_THROWS_AS(kl(pa, qa), AbsoluteContinuityViolation);  // disjoint after padding
    CHECK(tv(pa, qa) == doctest::Approx(1.0));
}

TEST_CASE("tv values") {
    CHECK(tv(dist2(0.5, 0.5), dist2(0.5, 0.5)) == 0.0);
    CHECK(tv(dist2(1.0, 0.0), dist2(0.0, 1.0)) == doctest::Approx(1.0));
    CHECK(tv(dist2(0.5, 0.5), dist2(0.25, 0.75)) == doctest::Approx(0.25));
}

TEST_CASE("js cap, symmetry, zero") {
    const double ln2 = std::log(2.0);
    CHECK(js(dist2(1.0, 0.0), dist2(0.0, 1.0)) == doctest::Approx(ln2).epsilon(1e-14));
    Rng rng(7);
    for (int k = 0; k < 100; ++k) {
        auto support = indexed_support("x", 2 + rng.integer(5));
        auto p = random_dist(rng, support);
        auto q = random_dist(rng, support);
        const double a = js(p, q);
        CHECK(a == doctest::Approx(js(q, p)).epsilon(1e-13));
        CHECK(a <= ln2 + 1e-12);
        CHECK(a >= 0.0);
        CHECK(js(p, p) == 0.0);
    }
}

TEST_CASE("divergences vanish only at equality") {
    Rng rng(11);
    for (int k = 0; k < 50; ++k) {
        auto support = indexed_support("x", 3);
        auto p = random_dist(rng, support, 0.05);
        auto q = random_dist(rng, support, 0.05);
        if (tv(p, q) < 1e-9) continue;
        CHECK(kl(p, q) > 1e-12);
        CHECK(js(p, q) > 1e-12);
    }
}

TEST_CASE("dv_gap: constants cancel, optimal witness attains kl") {
    Rng rng(13);
    auto support = indexed_support("x", 4);
    auto p = random_dist(rng, support, 0.05);
    auto q = random_dist(rng, support, 0.05);

    std::vector<double> constant(4, 3.7);
    CHECK(dv_gap(p, q, constant) == doctest::Approx(0.0).epsilon(1e-14));

    std::vector<double> optimal(4);
    for (std::size_t i = 0; i < 4; ++i) optimal[i] = std::log(p.prob(i) / q.prob(i));
    CHECK(dv_gap(p, q, optimal) == doctest::Approx(kl(p, q)).epsilon(1e-13));
}

TEST_CASE("dv_gap never exceeds kl") {
    Rng rng(17);
    for (int k = 0; k < 500; ++k) {
        auto support = indexed_support("x", 2 + rng.integer(5));
        auto p = random_dist(rng, support, 0.02);
        auto q = random_dist(rng, support, 0.02);
        auto g = cli::random_witness(rng, support.size(), -3.0, 3.0);
        CHECK(dv_gap(p, q, g) <= kl(p, q) + 1e-12);
    }
}

TEST_CASE("mutual information") {
    // independent table
    Rng rng(19);
    auto w = random_dist(rng, indexed_support("w", 3), 0.05);
    auto z = random_dist(rng, indexed_support("z", 4), 0.05);
    CHECK(mutual_information(JointTable::product(w, z)) == doctest::Approx(0.0).epsilon(1e-13));

    // perfectly correlated uniform pair: direct summation gives ln 2
    JointTable diag(indexed_support("w", 2), indexed_support("z", 2), {0.5, 0.0, 0.0, 0.5});
    CHECK(mutual_information(diag) == doctest::Approx(std::log(2.0)).epsilon(1e-14));

    for (int k = 0; k < 200; ++k) {
        auto j = cli::random_joint(rng, 2 + rng.integer(3), 2 + rng.integer(3));
        CHECK(mutual_information(j) >= -1e-13);
    }
}

TEST_CASE("lautum information") {
    Rng rng(23);
    auto w = random_dist(rng, indexed_support("w", 3), 0.05);
    auto z = random_dist(rng, indexed_support("z", 3), 0.05);
    CHECK(lautum_information(JointTable::product(w, z)) == doctest::Approx(0.0).epsilon(1e-13));

    JointTable diag(indexed_support("w", 2), indexed_support("z", 2), {0.5, 0.0, 0.0, 0.5});
    CHECK_THROWS_AS(lautum_information(diag), AbsoluteContinuityViolation);

    for (int k = 0; k < 200; ++k) {
        auto j = cli::random_joint(rng, 2 + rng.integer(3), 2 + rng.integer(3), 0.05);
        CHECK(lautum_information(j) >= -1e-13);
    }
}

TEST_CASE("joint convexity of tv and kl") {
    Rng rng(29);
    for (int k = 0; k < 200; ++k) {
        auto support = indexed_support("x", 2 + rng.integer(4));
        auto a = random_dist(rng, support, 0.02), b = random_dist(rng, support, 0.02);
        auto c = random_dist(rng, support, 0.02), d = random_dist(rng, support, 0.02);
        std::vector<double> mab(support.size()), mcd(support.size());
        for (std::size_t i = 0; i < support.size(); ++i) {
            mab[i] = 0.5 * (a.prob(i) + b.prob(i));
            mcd[i] = 0.5 * (c.prob(i) + d.prob(i));
        }
        DiscreteDist pm(support, mab), qm(support, mcd);
        CHECK(tv(pm, qm) <= 0.5 * tv(a, c) + 0.5 * tv(b, d) + 1e-12);
        CHECK(kl(pm, qm) <= 0.5 * kl(a, c) + 0.5 * kl(b, d) + 1e-12);
    }
}

TEST_CASE("distribution validation") {
    CHECK_THROWS_AS(DiscreteDist(indexed_support("x", 2), {0.5, 0.4}), ValidationError);
    CHECK_THROWS_AS(DiscreteDist(indexed_support("x", 2), {0.5}), ValidationError);
    CHECK_THROWS_AS(DiscreteDist(indexed_support("x", 2), {-0.1, 1.1}), ValidationError);
    Support dup{Point("a"), Point("a")};
    CHECK_THROWS_AS(DiscreteDist(dup, {0.5, 0.5}), ValidationError);

    // within tolerance the mass is renormalized to exactly one
    DiscreteDist d(indexed_support("x", 2), {0.5 + 4e-13, 0.5});
    CHECK(d.prob(0) + d.prob(1) == doctest::Approx(1.0).epsilon(1e-16));
}

TEST_CASE("joint table validation and marginals") {
    CHECK_THROWS_AS(JointTable(indexed_support("w", 2), indexed_support("z", 2),
                               {0.3, 0.3, 0.3, 0.3}),
                    ValidationError);
    JointTable j(indexed_support("w", 2), indexed_support("z", 2), {0.1, 0.2, 0.3, 0.4});
    CHECK(j.marginal_w().prob(0) == doctest::Approx(0.3));
    CHECK(j.marginal_z().prob(1) == doctest::Approx(0.6));
    auto c = j.conditional_w_given_z(0);
    CHECK(c.prob(0) == doctest::Approx(0.25));
    auto flat = j.flatten();
    CHECK(flat.size() == 4);
    CHECK(flat.prob(3) == doctest::Approx(0.4));
}
