#include <doctest.h>

#include <random>

#include "support.hpp"
#include "torres/errors.hpp"
#include "torres/polytope.hpp"

using namespace torres;
using namespace torres::testing;

namespace {

// Exact Lagrange interpolation of the point counts of the dilations
// k*Delta for k = 0..n, evaluated at k.
QQ ehrhart_fit_eval(const std::vector<QQ>& counts, long k) {
    int n = static_cast<int>(counts.size()) - 1;
    QQ acc = 0;
    for (int i = 0; i <= n; ++i) {
        QQ term = counts[i];
        for (int j = 0; j <= n; ++j) {
            if (j == i) continue;
            term *= QQ(k - j) / QQ(i - j);
        }
        acc += term;
    }
    return acc;
}

// Leading coefficient times n! via the n-th forward difference.
QQ ehrhart_leading_times_nfact(const std::vector<QQ>& counts) {
    std::vector<QQ> d(counts);
    while (d.size() > 1) {
        std::vector<QQ> next;
        for (size_t i = 0; i + 1 < d.size(); ++i) next.push_back(d[i + 1] - d[i]);
        d = next;
    }
    return d[0];
}

}  // namespace

TEST_SUITE("polytope") {

TEST_CASE("interval polytopes on P1") {
    Fixture fx = p1();
    for (long d : {1L, 2L, 3L}) {
        LatticePolytope p = polytope_of_divisor(fx.fan, {d, d});
        CHECK(p.dimension == 1);
        CHECK(static_cast<long>(p.lattice_points.size()) == 2 * d + 1);
        CHECK(p.normalized_volume == QQ(2 * d));
    }
}

TEST_CASE("simplices on P2") {
    Fixture fx = p2();
    for (long d : {1L, 2L, 3L}) {
        LatticePolytope p = polytope_of_divisor(fx.fan, {d, 0, 0});
        CHECK(static_cast<long>(p.lattice_points.size()) == (d + 1) * (d + 2) / 2);
        CHECK(p.normalized_volume == QQ(d * d));
    }
}

TEST_CASE("rectangle on P1xP1") {
    Fixture fx = p1xp1();
    LatticePolytope p = polytope_of_divisor(fx.fan, {2, 0, 2, 0});
    CHECK(p.lattice_points.size() == 9);
    CHECK(p.normalized_volume == QQ(8));
}

TEST_CASE("Hirzebruch trapezoid") {
    Fixture fx = hirzebruch_f1();
    LatticePolytope p = polytope_of_divisor(fx.fan, {2, 1, 0, 0});
    CHECK(p.lattice_points.size() == 5);
    CHECK(p.normalized_volume == QQ(3));
    CHECK(p.vertices.size() == 4);
}

TEST_CASE("empty polytope is a valid result") {
    Fixture fx = p1xp1();
    LatticePolytope p = polytope_of_divisor(fx.fan, {-1, 0, 0, 0});
    CHECK(p.lattice_points.empty());
    CHECK(p.normalized_volume == QQ(0));
    CHECK(p.dimension == -1);
}

TEST_CASE("point polytope has volume zero but one point") {
    Fixture fx = p1();
    LatticePolytope p = polytope_of_divisor(fx.fan, {0, 0});
    CHECK(p.lattice_points.size() == 1);
    CHECK(p.normalized_volume == QQ(0));
    CHECK(p.dimension == 0);
}

TEST_CASE("non-lattice polytope keeps its exact fractional volume") {
    Fixture fx = weighted_121();
    LatticePolytope p = polytope_of_divisor(fx.fan, {0, 0, 1});
    CHECK(p.normalized_volume == QQ(1, 2));
}

TEST_CASE("weighted triangle at an even class") {
    Fixture fx = weighted_121();
    LatticePolytope p = polytope_of_divisor(fx.fan, {0, 0, 4});
    CHECK(p.lattice_points.size() == 9);
    CHECK(p.normalized_volume == QQ(8));
}

TEST_CASE("unbounded input is rejected through the completeness precondition") {
    Fan half = build_fan({{1, 0}, {0, 1}}, {{0, 1}});
    CHECK_THROWS_AS(polytope_of_divisor(half, {1, 1}), PreconditionError);
}

TEST_CASE("monomial bases") {
    Fixture q = p2();
    auto b = monomial_basis(q.fan, q.cg.degree_of({2, 0, 0}));
    std::vector<std::vector<int>> expected = {{0, 0, 2}, {0, 1, 1}, {0, 2, 0},
                                              {1, 0, 1}, {1, 1, 0}, {2, 0, 0}};
    CHECK(b == expected);

    Fixture fx = p1xp1();
    auto b22 = monomial_basis(fx.fan, fx.cg.degree_of({2, 0, 2, 0}));
    CHECK(b22.size() == 9);
    for (const auto& e : b22) {
        CHECK(e[0] + e[1] == 2);
        CHECK(e[2] + e[3] == 2);
    }
    CHECK(monomial_basis(fx.fan, fx.cg.degree_of({-1, 0, 0, 0})).empty());
}

TEST_CASE("graded dimension is representative independent") {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<long> d(-3, 3);
    for (const Fixture& fx : {p2(), p1xp1(), hirzebruch_f1(), weighted_121()}) {
        for (int trial = 0; trial < 5; ++trial) {
            std::vector<long> a(fx.fan.nrays()), m(fx.fan.rank);
            for (auto& v : a) v = std::abs(d(rng));
            for (auto& v : m) v = d(rng);
            std::vector<long> shifted = a;
            for (int r = 0; r < fx.fan.nrays(); ++r) {
                for (int j = 0; j < fx.fan.rank; ++j) shifted[r] += m[j] * fx.fan.rays[r][j];
            }
            auto b1 = monomial_basis(fx.fan, fx.cg.degree_of(a));
            auto b2 = monomial_basis(fx.fan, fx.cg.degree_of(shifted));
            CHECK(b1 == b2);
        }
    }
}

TEST_CASE("ample and Cartier tests") {
    Fixture q = p2();
    CHECK(is_ample(q.fan, {1, 0, 0}));
    Fixture fx = p1xp1();
    CHECK(is_cartier(fx.fan, {1, 0, 0, 0}));
    CHECK_FALSE(is_ample(fx.fan, {1, 0, 0, 0}));
    CHECK(is_ample(fx.fan, {1, 0, 1, 0}));
    Fixture w = weighted_121();
    CHECK_FALSE(is_cartier(w.fan, {0, 0, 1}));
    CHECK(is_ample(w.fan, {0, 0, 2}));
    Fixture h = hirzebruch_f1();
    CHECK(is_ample(h.fan, {2, 1, 0, 0}));
    CHECK_FALSE(is_ample(h.fan, {1, 1, 0, 0}));
}

TEST_CASE("Ehrhart consistency on fixture polytopes") {
    struct Case {
        Fixture fx;
        TorusDivisor a;
    };
    std::vector<Case> cases = {{p1(), {1, 1}},
                               {p2(), {2, 0, 0}},
                               {p1xp1(), {2, 0, 2, 0}},
                               {hirzebruch_f1(), {2, 1, 0, 0}},
                               {weighted_121(), {0, 0, 2}}};
    for (const auto& c : cases) {
        int n = c.fx.fan.rank;
        std::vector<QQ> counts;
        for (int k = 0; k <= n; ++k) {
            TorusDivisor ka(c.a.size());
            for (size_t i = 0; i < c.a.size(); ++i) ka[i] = k * c.a[i];
            counts.push_back(QQ(polytope_of_divisor(c.fx.fan, ka).lattice_points.size()));
        }
        for (long k = n + 1; k <= n + 2; ++k) {
            TorusDivisor ka(c.a.size());
            for (size_t i = 0; i < c.a.size(); ++i) ka[i] = k * c.a[i];
            QQ actual(polytope_of_divisor(c.fx.fan, ka).lattice_points.size());
            CHECK(ehrhart_fit_eval(counts, k) == actual);
        }
        CHECK(ehrhart_leading_times_nfact(counts) ==
              polytope_of_divisor(c.fx.fan, c.a).normalized_volume);
    }
}

TEST_CASE("critical degree piece is nonempty for ample classes") {
    std::mt19937_64 rng(23);
    for (const Fixture& fx : {p1(), p2(), p1xp1(), hirzebruch_f1(), weighted_121()}) {
        DegreeClass beta = random_ample(fx, rng);
        DegreeClass rho = fx.cg.lin(fx.fan.rank + 1, beta, -1, beta0(fx.fan, fx.cg));
        CHECK(monomial_basis(fx.fan, rho).size() > 0);
    }
}

}  // TEST_SUITE
