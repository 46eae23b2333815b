#pragma once

#include <random>
#include <string>
#include <vector>

#include "torres/fan.hpp"
#include "torres/polynomial.hpp"
#include "torres/polytope.hpp"
#include "torres/residue.hpp"

namespace torres::testing {

struct Fixture {
    std::string name;
    Fan fan;
    ClassGroup cg;
    std::vector<std::string> vars;
};

inline Fixture p1() {
    Fixture f;
    f.name = "P1";
    f.fan = build_fan({{1}, {-1}}, {{0}, {1}});
    f.cg = class_group(f.fan);
    f.vars = {"x0", "x1"};
    return f;
}

inline Fixture p2() {
    Fixture f;
    f.name = "P2";
    f.fan = build_fan({{1, 0}, {0, 1}, {-1, -1}}, {{0, 1}, {1, 2}, {0, 2}});
    f.cg = class_group(f.fan);
    f.vars = {"x0", "x1", "x2"};
    return f;
}

inline Fixture p1xp1() {
    Fixture f;
    f.name = "P1xP1";
    f.fan = build_fan({{1, 0}, {-1, 0}, {0, 1}, {0, -1}}, {{0, 2}, {0, 3}, {1, 2}, {1, 3}});
    f.cg = class_group(f.fan);
    f.vars = {"x", "y", "z", "w"};
    return f;
}

inline Fixture hirzebruch_f1() {
    Fixture f;
    f.name = "F1";
    f.fan = build_fan({{1, 0}, {0, 1}, {-1, 1}, {0, -1}}, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
    f.cg = class_group(f.fan);
    f.vars = {"x0", "x1", "x2", "x3"};
    return f;
}

inline Fixture weighted_121() {
    Fixture f;
    f.name = "P(1,2,1)";
    f.fan = build_fan({{1, 0}, {0, 1}, {-1, -2}}, {{0, 1}, {1, 2}, {0, 2}});
    f.cg = class_group(f.fan);
    f.vars = {"x0", "x1", "x2"};
    return f;
}

/// Complete simplicial fan whose class group has 2-torsion.
inline Fixture torsion_fan() {
    Fixture f;
    f.name = "torsion";
    f.fan = build_fan({{1, 1}, {1, -1}, {-1, -1}, {-1, 1}}, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
    f.cg = class_group(f.fan);
    f.vars = {"a", "b", "c", "d"};
    return f;
}

/// Product of projective spaces P^{m-1} x P^{p-1}.
inline Fixture product_projective(int m, int p) {
    int n1 = m - 1, n2 = p - 1;
    std::vector<RayVector> rays;
    for (int i = 0; i < n1; ++i) {
        RayVector r(n1 + n2, 0);
        r[i] = 1;
        rays.push_back(r);
    }
    {
        RayVector r(n1 + n2, 0);
        for (int i = 0; i < n1; ++i) r[i] = -1;
        rays.push_back(r);
    }
    for (int i = 0; i < n2; ++i) {
        RayVector r(n1 + n2, 0);
        r[n1 + i] = 1;
        rays.push_back(r);
    }
    {
        RayVector r(n1 + n2, 0);
        for (int i = 0; i < n2; ++i) r[n1 + i] = -1;
        rays.push_back(r);
    }
    // max cones: drop one ray from each factor
    std::vector<std::vector<int>> cones;
    for (int drop1 = 0; drop1 <= n1; ++drop1) {
        for (int drop2 = 0; drop2 <= n2; ++drop2) {
            std::vector<int> cone;
            for (int i = 0; i <= n1; ++i) {
                if (i != drop1) cone.push_back(i);
            }
            for (int i = 0; i <= n2; ++i) {
                if (i != drop2) cone.push_back(n1 + 1 + i);
            }
            cones.push_back(cone);
        }
    }
    Fixture f;
    f.name = "P" + std::to_string(n1) + "xP" + std::to_string(n2);
    f.fan = build_fan(rays, cones);
    f.cg = class_group(f.fan);
    for (int i = 0; i < f.fan.nrays(); ++i) f.vars.push_back("v" + std::to_string(i));
    return f;
}

/// The bidegree (2,2) family on P1 x P1 with variables x, y, z, w.
inline Polynomial lambda_example(const Fixture& fx, const QQ& lambda) {
    Polynomial f = parse_polynomial("x^2*z^2 + x^2*w^2 + y^2*z^2 + y^2*w^2", fx.vars);
    Polynomial cross = parse_polynomial("x*y*z*w", fx.vars);
    return f + cross.scaled(lambda);
}

/// The sections (f, x df/dx, z df/dz) used with the lambda family.
inline std::vector<Polynomial> lambda_sections(const Fixture& fx, const QQ& lambda) {
    Polynomial f = lambda_example(fx, lambda);
    Polynomial x = parse_polynomial("x", fx.vars);
    Polynomial z = parse_polynomial("z", fx.vars);
    return {f, x * f.partial(0), z * f.partial(2)};
}

inline Polynomial random_in_degree(const Fixture& fx, const DegreeClass& degree,
                                   std::mt19937_64& rng) {
    auto basis = monomial_basis(fx.fan, degree);
    std::uniform_int_distribution<int> coeff(-3, 3);
    for (int attempt = 0; attempt < 64; ++attempt) {
        Polynomial p(fx.fan.nrays());
        for (const auto& m : basis) p.add_term(m, QQ(coeff(rng)));
        if (!p.is_zero()) return p;
    }
    throw std::runtime_error("random_in_degree: empty graded piece");
}

/// A random ample class with a small graded piece, by rejection.
inline DegreeClass random_ample(const Fixture& fx, std::mt19937_64& rng, int dim_cap = 60) {
    std::uniform_int_distribution<long> entry(0, 3);
    for (int attempt = 0; attempt < 4000; ++attempt) {
        std::vector<long> a(fx.fan.nrays());
        for (auto& v : a) v = entry(rng);
        if (!is_ample(fx.fan, a)) continue;
        DegreeClass beta = fx.cg.degree_of(a);
        DegreeClass rho = fx.cg.lin(fx.fan.rank + 1, beta, -1, beta0(fx.fan, fx.cg));
        if (static_cast<int>(monomial_basis(fx.fan, rho).size()) > dim_cap) continue;
        return beta;
    }
    throw std::runtime_error("random_ample: no ample class found for " + fx.name);
}

/// n+1 random sections of class beta with no common zero, by rejection.
inline std::vector<Polynomial> random_sections(const Fixture& fx, const DegreeClass& beta,
                                               std::mt19937_64& rng) {
    for (int attempt = 0; attempt < 200; ++attempt) {
        std::vector<Polynomial> f;
        for (int i = 0; i <= fx.fan.rank; ++i) f.push_back(random_in_degree(fx, beta, rng));
        if (check_condition3(fx.fan, fx.cg, beta, f)) return f;
    }
    throw std::runtime_error("random_sections: no base-point-free sequence found for " + fx.name);
}

/// det(df_i/dx_j) over all homogeneous variables, the classical Jacobian.
inline Polynomial classical_jacobian(const std::vector<Polynomial>& f) {
    struct Rec {
        static Polynomial det(const std::vector<std::vector<Polynomial>>& a) {
            int k = static_cast<int>(a.size());
            if (k == 1) return a[0][0];
            Polynomial acc(a[0][0].nvars());
            for (int i = 0; i < k; ++i) {
                std::vector<std::vector<Polynomial>> minor;
                for (int r = 0; r < k; ++r) {
                    if (r == i) continue;
                    std::vector<Polynomial> row(a[r].begin() + 1, a[r].end());
                    minor.push_back(std::move(row));
                }
                Polynomial c = a[i][0] * det(minor);
                acc = (i % 2 == 0) ? acc + c : acc - c;
            }
            return acc;
        }
    };
    int n = static_cast<int>(f.size());
    std::vector<std::vector<Polynomial>> m;
    for (int i = 0; i < n; ++i) {
        std::vector<Polynomial> row;
        for (int j = 0; j < n; ++j) row.push_back(f[j].partial(i));
        m.push_back(std::move(row));
    }
    return Rec::det(m);
}

}  // namespace torres::testing
