#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "rootlab/adspace.hpp"

using namespace rootlab;
using oracles::Rng;

namespace {

UnorderedTuple random_tuple(Rng& rng, int d, double box = 2.0) {
    std::vector<cplx> v;
    for (int i = 0; i < d; ++i) v.push_back(rng.complex_in_box(box));
    return UnorderedTuple(std::move(v));
}

}  // namespace

TEST_CASE("dist: closed-form cases") {
    CHECK(dist(UnorderedTuple({1.0, -1.0}), UnorderedTuple({1.0, -1.0})) == 0.0);
    CHECK(dist(UnorderedTuple({0.0, 0.0}), UnorderedTuple({1.0, 1.0})) == doctest::Approx(1.0));
    CHECK(dist(UnorderedTuple({1.0, -1.0}), UnorderedTuple({cplx(0, 1), cplx(0, -1)})) ==
          doctest::Approx(std::sqrt(2.0)));
    CHECK_THROWS_AS(dist(UnorderedTuple({1.0}), UnorderedTuple({1.0, 2.0})), DimensionMismatch);
}

TEST_CASE("dist equals the brute-force permutation minimum (d <= 5)") {
    Rng rng(101);
    for (int trial = 0; trial < 400; ++trial) {
        const int d = 2 + static_cast<int>(rng.next() % 4);
        const UnorderedTuple a = random_tuple(rng, d);
        const UnorderedTuple b = random_tuple(rng, d);
        CHECK(dist(a, b) ==
              doctest::Approx(oracles::brute_force_dist(a.values, b.values)).epsilon(1e-12));
    }
}

TEST_CASE("dist: metric axioms on random triples (property)") {
    Rng rng(102);
    for (int trial = 0; trial < 300; ++trial) {
        const int d = 2 + static_cast<int>(rng.next() % 5);
        const UnorderedTuple a = random_tuple(rng, d);
        const UnorderedTuple b = random_tuple(rng, d);
        const UnorderedTuple c = random_tuple(rng, d);
        const double ab = dist(a, b), ba = dist(b, a);
        const double ac = dist(a, c), bc = dist(b, c);
        CHECK(ab >= 0.0);
        CHECK(ab == ba);
        CHECK(ac <= ab + bc + 1e-10);
        CHECK(dist(a, a) <= 1e-12);
    }
}

TEST_CASE("dist: Lipschitz bound of the quotient map [.]") {
    Rng rng(103);
    for (int trial = 0; trial < 300; ++trial) {
        const int d = 2 + static_cast<int>(rng.next() % 5);
        const UnorderedTuple a = random_tuple(rng, d);
        const UnorderedTuple b = random_tuple(rng, d);
        double ordered = 0.0;
        for (int i = 0; i < d; ++i) ordered += std::norm(a.values[i] - b.values[i]);
        CHECK(dist(a, b) <= std::sqrt(ordered / d) + 1e-12);
    }
}

TEST_CASE("minimizing_permutations") {
    SUBCASE("distinct entries: identity only") {
        const auto perms = minimizing_permutations(UnorderedTuple({1.0, 2.0}),
                                                   UnorderedTuple({1.0, 2.0}), 1e-9);
        REQUIRE(perms.size() == 1);
        CHECK(perms[0] == std::vector<int>{0, 1});
    }
    SUBCASE("repeated entry: both permutations") {
        const auto perms = minimizing_permutations(UnorderedTuple({1.0, 1.0}),
                                                   UnorderedTuple({1.0, 1.0}), 1e-9);
        CHECK(perms.size() == 2);
    }
    SUBCASE("[1,-1] vs [i,-i]: equal costs, both permutations") {
        const auto perms = minimizing_permutations(
            UnorderedTuple({1.0, -1.0}), UnorderedTuple({cplx(0, 1), cplx(0, -1)}), 1e-9);
        CHECK(perms.size() == 2);
    }
}

TEST_CASE("almgren_map: sorted projections") {
    CHECK(almgren_map(UnorderedTuple({cplx(1, 2), cplx(3, -1)}), 1.0) ==
          std::vector<double>{1.0, 3.0});
    CHECK(almgren_map(UnorderedTuple({cplx(0, 2), cplx(0, -2)}), 1.0) ==
          std::vector<double>{0.0, 0.0});
    // Re(i z) = -Im z
    CHECK(almgren_map(UnorderedTuple({cplx(1, 2), cplx(3, -1)}), cplx(0, 1)) ==
          std::vector<double>{-2.0, 1.0});
}

TEST_CASE("almgren_embed: structure") {
    const AlmgrenConfig cfg = AlmgrenConfig::standard(1);
    CHECK(cfg.h == 3);
    CHECK(cfg.N() == 3);
    const auto e = almgren_embed(UnorderedTuple({cplx(1.0)}), cfg);
    REQUIRE(e.size() == 3);
    const double s = 1.0 / std::sqrt(3.0);
    for (int l = 0; l < 3; ++l)
        CHECK(e[l] == doctest::Approx(s * cfg.thetas[l].real()).epsilon(1e-14));

    const AlmgrenConfig cfg3 = AlmgrenConfig::standard(3);
    CHECK(cfg3.h == 19);
    const auto zero = almgren_embed(UnorderedTuple(std::vector<cplx>(3, 0.0)), cfg3);
    for (double v : zero) CHECK(v == 0.0);
    CHECK_THROWS_AS(almgren_embed(UnorderedTuple({1.0}), cfg3), DimensionMismatch);
}

TEST_CASE("almgren_embed: Lipschitz upper bound (property)") {
    Rng rng(104);
    for (int d : {2, 3, 4}) {
        const AlmgrenConfig cfg = AlmgrenConfig::standard(d);
        const double lip = std::sqrt(2.0 * d * d + 1.0);
        for (int trial = 0; trial < 300; ++trial) {
            const UnorderedTuple a = random_tuple(rng, d);
            const UnorderedTuple b = random_tuple(rng, d);
            const auto ea = almgren_embed(a, cfg);
            const auto eb = almgren_embed(b, cfg);
            double nrm = 0.0;
            for (size_t i = 0; i < ea.size(); ++i) nrm += (ea[i] - eb[i]) * (ea[i] - eb[i]);
            CHECK(std::sqrt(nrm) <= lip * dist(a, b) + 1e-10);
        }
    }
}

TEST_CASE("almgren_embed: injectivity margin, empirical inverse ratio") {
    Rng rng(105);
    double max_ratio = 0.0;
    for (int d : {2, 3}) {
        const AlmgrenConfig cfg = AlmgrenConfig::standard(d);
        int accepted = 0;
        while (accepted < 200) {
            const UnorderedTuple a = random_tuple(rng, d);
            const UnorderedTuple b = random_tuple(rng, d);
            const double dv = dist(a, b);
            if (dv < 0.1) continue;
            ++accepted;
            const auto ea = almgren_embed(a, cfg);
            const auto eb = almgren_embed(b, cfg);
            double nrm = 0.0;
            for (size_t i = 0; i < ea.size(); ++i) nrm += (ea[i] - eb[i]) * (ea[i] - eb[i]);
            nrm = std::sqrt(nrm);
            CHECK(nrm > 0.0);
            max_ratio = std::max(max_ratio, dv / nrm);
        }
    }
    // empirical bi-Lipschitz witness for the inverse on the image
    CHECK(max_ratio < 8.0);
    MESSAGE("max dist/||embed diff|| ratio: ", max_ratio);
}

TEST_CASE("combinatorial lemma: some direction keeps every |Re(theta z)| large") {
    Rng rng(106);
    double min_alpha = 1e9;
    for (int trial = 0; trial < 10000; ++trial) {
        const int d = 2 + static_cast<int>(rng.next() % 2);
        const AlmgrenConfig cfg = AlmgrenConfig::standard(d);
        std::vector<cplx> zs;
        for (int k = 0; k < d * d; ++k) zs.push_back(rng.complex_in_box(2.0));
        double best_l = 0.0;
        for (const cplx& theta : cfg.thetas) {
            double worst = 1e9;
            for (const cplx& z : zs) {
                const double az = std::abs(z);
                if (az == 0.0) continue;
                worst = std::min(worst, std::abs((theta * z).real()) / az);
            }
            best_l = std::max(best_l, worst);
        }
        CHECK(best_l > 0.0);
        min_alpha = std::min(min_alpha, best_l);
    }
    CHECK(min_alpha > 0.0);
    MESSAGE("empirical alpha lower bound: ", min_alpha);
}

TEST_CASE("wasserstein2 identifies with dist (third witness: brute force)") {
    Rng rng(107);
    for (int trial = 0; trial < 300; ++trial) {
        const int d = 2 + static_cast<int>(rng.next() % 5);
        const UnorderedTuple a = random_tuple(rng, d);
        const UnorderedTuple b = random_tuple(rng, d);
        const double w = wasserstein2(a, b);
        const double dd = dist(a, b);
        CHECK(w == doctest::Approx(dd).epsilon(1e-12));
        if (d <= 5)
            CHECK(w == doctest::Approx(oracles::brute_force_dist(a.values, b.values))
                           .epsilon(1e-12));
    }
    CHECK(wasserstein2(UnorderedTuple({1.0, 2.0}), UnorderedTuple({1.0, 2.0})) <= 1e-14);
    CHECK(wasserstein2(UnorderedTuple({0.0, 0.0}), UnorderedTuple({1.0, 1.0})) ==
          doctest::Approx(1.0));
}

TEST_CASE("coeffs_of: examples and permutation invariance") {
    CHECK(coeffs_of(UnorderedTuple({1.0, -1.0})) == std::vector<cplx>{0.0, -1.0});
    CHECK(coeffs_of(UnorderedTuple({0.0, 0.0, 0.0})) == std::vector<cplx>(3, 0.0));
    const auto c = coeffs_of(UnorderedTuple({1.0, 1.0, -2.0}));
    CHECK(std::abs(c[0]) < 1e-15);
    CHECK(std::abs(c[1] - cplx(-3.0)) < 1e-14);
    CHECK(std::abs(c[2] - cplx(2.0)) < 1e-14);

    Rng rng(108);
    for (int trial = 0; trial < 100; ++trial) {
        const int d = 2 + static_cast<int>(rng.next() % 4);
        UnorderedTuple t = random_tuple(rng, d);
        std::vector<cplx> shuffled = t.values;
        for (int i = d - 1; i > 0; --i)
            std::swap(shuffled[i], shuffled[rng.next() % (i + 1)]);
        const auto c1 = coeffs_of(t);
        const auto c2 = coeffs_of(UnorderedTuple(shuffled));
        for (int j = 0; j < d; ++j) CHECK(c1[j] == c2[j]);
    }
}

TEST_CASE("coefficient map: locally Lipschitz with 1/d-Hoelder inverse (empirical)") {
    Rng rng(109);
    double max_ratio = 0.0;
    for (int trial = 0; trial < 500; ++trial) {
        const int d = 2 + static_cast<int>(rng.next() % 3);
        const UnorderedTuple a = random_tuple(rng, d, 1.5);
        const UnorderedTuple b = random_tuple(rng, d, 1.5);
        const auto ca = coeffs_of(a);
        const auto cb = coeffs_of(b);
        double cn = 0.0;
        for (int j = 0; j < d; ++j) cn += std::norm(ca[j] - cb[j]);
        cn = std::sqrt(cn);
        if (cn < 1e-12) continue;
        max_ratio = std::max(max_ratio, dist(a, b) / std::pow(cn, 1.0 / d));
        // Lipschitz direction of the coefficient map itself
        CHECK(cn <= 200.0 * dist(a, b));
    }
    CHECK(max_ratio < 10.0);
    MESSAGE("empirical 1/d-Hoelder constant: ", max_ratio);
}

TEST_CASE("sort_increasing") {
    CHECK(sort_increasing({3.0, 1.0, 2.0}) == std::vector<double>{1.0, 2.0, 3.0});
    CHECK(sort_increasing({0.0, 0.0}) == std::vector<double>{0.0, 0.0});
    CHECK(sort_increasing({-1.0, -3.0}) == std::vector<double>{-3.0, -1.0});
}

TEST_CASE("dist_rad: rotation orbit distance") {
    CHECK(dist_rad(cplx(0.7, 0.3), cplx(0.7, 0.3), 5) == 0.0);
    CHECK(dist_rad(1.0, -1.0, 2) < 1e-15);  // theta^2-orbit, rotation at machine eps
    CHECK(dist_rad(1.0, cplx(0, 1), 4) < 1e-15);
    CHECK(dist_rad(1.0, 1.5, 4) == doctest::Approx(0.5));

    // orbit distance agrees with the full tuple distance of the orbits
    Rng rng(110);
    for (int trial = 0; trial < 200; ++trial) {
        const int d = 2 + static_cast<int>(rng.next() % 4);
        const cplx lam = rng.complex_in_box(2.0);
        const cplx mu = rng.complex_in_box(2.0);
        std::vector<cplx> orb_l, orb_m;
        for (int k = 0; k < d; ++k) {
            const cplx rot = std::polar(1.0, 2.0 * std::numbers::pi * k / d);
            orb_l.push_back(rot * lam);
            orb_m.push_back(rot * mu);
        }
        CHECK(dist_rad(lam, mu, d) ==
              doctest::Approx(dist(UnorderedTuple(orb_l), UnorderedTuple(orb_m)))
                  .epsilon(1e-10));
    }
}

TEST_CASE("minimizing_rotations") {
    const auto rots = minimizing_rotations(1.0, 1.0, 4, 1e-9);
    REQUIRE(rots.size() == 1);
    CHECK(rots[0] == 0);
    const auto all = minimizing_rotations(0.0, 0.0, 3, 1e-9);
    CHECK(all.size() == 3);
}
