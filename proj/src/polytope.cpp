#include "torres/polytope.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "torres/errors.hpp"

namespace torres {

namespace {

bool satisfies_all(const Fan& fan, const TorusDivisor& a, const QVec& m) {
    for (int r = 0; r < fan.nrays(); ++r) {
        QQ acc = 0;
        for (int j = 0; j < fan.rank; ++j) acc += QQ(fan.rays[r][j]) * m[j];
        if (acc < QQ(-a[r])) return false;
    }
    return true;
}

std::vector<QVec> enumerate_vertices(const Fan& fan, const TorusDivisor& a) {
    int n = fan.rank;
    std::set<QVec> found;
    for (const auto& I : n_subsets(fan.nrays(), n)) {
        QMat sys(n, QVec(n));
        QVec rhs(n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) sys[i][j] = QQ(fan.rays[I[i]][j]);
            rhs[i] = QQ(-a[I[i]]);
        }
        auto sol = q_solve(sys, rhs);
        if (!sol) continue;
        // q_solve may return a partial solution for singular systems; verify.
        bool exact = true;
        for (int i = 0; i < n && exact; ++i) {
            QQ acc = 0;
            for (int j = 0; j < n; ++j) acc += sys[i][j] * (*sol)[j];
            if (acc != rhs[i]) exact = false;
        }
        if (!exact) continue;
        if (satisfies_all(fan, a, *sol)) found.insert(*sol);
    }
    return {found.begin(), found.end()};
}

// Pulling triangulation on the face lattice: faces are identified by their
// vertex sets; simplices are coned off the lexicographically least vertex.
void pull_simplices(const Fan& fan, const TorusDivisor& a, const std::vector<QVec>& verts,
                    std::vector<std::vector<int>> chain, const std::vector<int>& face,
                    std::vector<std::vector<int>>& out) {
    if (face.size() == 1) {
        std::vector<int> simplex;
        for (const auto& link : chain) simplex.insert(simplex.end(), link.begin(), link.end());
        simplex.push_back(face[0]);
        out.push_back(simplex);
        return;
    }
    int v0 = face[0];  // verts are sorted, so this is the lex-least vertex
    std::set<std::vector<int>> subfaces;
    for (int r = 0; r < fan.nrays(); ++r) {
        std::vector<int> on;
        for (int v : face) {
            QQ acc = 0;
            for (int j = 0; j < fan.rank; ++j) acc += QQ(fan.rays[r][j]) * verts[v][j];
            if (acc == QQ(-a[r])) on.push_back(v);
        }
        if (on.empty() || on.size() == face.size()) continue;
        if (std::find(on.begin(), on.end(), v0) != on.end()) continue;
        subfaces.insert(on);
    }
    chain.push_back({v0});
    for (const auto& sub : subfaces) pull_simplices(fan, a, verts, chain, sub, out);
}

QQ simplex_volume_times_nfact(const std::vector<QVec>& verts, const std::vector<int>& simplex) {
    int n = static_cast<int>(verts[0].size());
    QMat m(n, QVec(n));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) m[i][j] = verts[simplex[i + 1]][j] - verts[simplex[0]][j];
    }
    // rational determinant by elimination
    QQ det = 1;
    for (int c = 0; c < n; ++c) {
        int p = -1;
        for (int i = c; i < n; ++i) {
            if (m[i][c] != 0) { p = i; break; }
        }
        if (p < 0) return 0;
        if (p != c) {
            std::swap(m[p], m[c]);
            det = -det;
        }
        det *= m[c][c];
        for (int i = c + 1; i < n; ++i) {
            if (m[i][c] == 0) continue;
            QQ f = m[i][c] / m[c][c];
            for (int j = c; j < n; ++j) m[i][j] -= f * m[c][j];
        }
    }
    return det >= 0 ? det : -det;
}

}  // namespace

LatticePolytope polytope_of_divisor(const Fan& fan, const TorusDivisor& a) {
    if (static_cast<int>(a.size()) != fan.nrays())
        throw InputError("polytope_of_divisor: divisor vector has wrong length");
    if (!fan.complete)
        throw PreconditionError("polytope_of_divisor: fan is not complete (region may be unbounded)");

    LatticePolytope p;
    p.normals = fan.rays;
    p.offsets = a;
    p.vertices = enumerate_vertices(fan, a);
    if (p.vertices.empty()) return p;  // empty polytope: no points, volume 0

    int n = fan.rank;
    // affine dimension
    {
        QMat diffs;
        for (size_t i = 1; i < p.vertices.size(); ++i) {
            QVec d(n);
            for (int j = 0; j < n; ++j) d[j] = p.vertices[i][j] - p.vertices[0][j];
            diffs.push_back(std::move(d));
        }
        p.dimension = diffs.empty() ? 0 : q_rank(std::move(diffs));
    }

    // lattice points from the vertex bounding box
    std::vector<long> lo(n), hi(n);
    for (int j = 0; j < n; ++j) {
        QQ mn = p.vertices[0][j], mx = p.vertices[0][j];
        for (const auto& v : p.vertices) {
            if (v[j] < mn) mn = v[j];
            if (v[j] > mx) mx = v[j];
        }
        // ceil of min, floor of max
        ZZ cl, fl;
        mpz_cdiv_q(cl.get_mpz_t(), mn.get_num_mpz_t(), mn.get_den_mpz_t());
        mpz_fdiv_q(fl.get_mpz_t(), mx.get_num_mpz_t(), mx.get_den_mpz_t());
        lo[j] = cl.get_si();
        hi[j] = fl.get_si();
    }
    std::vector<long> pt(lo);
    bool box_nonempty = true;
    for (int j = 0; j < n; ++j) {
        if (lo[j] > hi[j]) box_nonempty = false;
    }
    while (box_nonempty) {
        bool ok = true;
        for (int r = 0; r < fan.nrays() && ok; ++r) {
            long acc = 0;
            for (int j = 0; j < n; ++j) acc += fan.rays[r][j] * pt[j];
            if (acc < -a[r]) ok = false;
        }
        if (ok) p.lattice_points.push_back(pt);
        int j = n - 1;
        while (j >= 0 && pt[j] == hi[j]) {
            pt[j] = lo[j];
            --j;
        }
        if (j < 0) break;
        ++pt[j];
    }
    std::sort(p.lattice_points.begin(), p.lattice_points.end());

    // normalized volume by pulling triangulation from the lex-least vertex
    if (p.dimension == n) {
        std::vector<int> all(p.vertices.size());
        for (size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
        std::vector<std::vector<int>> simplices;
        pull_simplices(fan, a, p.vertices, {}, all, simplices);
        for (const auto& s : simplices) {
            if (static_cast<int>(s.size()) != n + 1) continue;  // degenerate artifact
            p.normalized_volume += simplex_volume_times_nfact(p.vertices, s);
        }
    }
    return p;
}

std::vector<std::vector<int>> monomial_basis(const Fan& fan, const DegreeClass& alpha) {
    LatticePolytope p = polytope_of_divisor(fan, alpha.representative);
    std::vector<std::vector<int>> out;
    out.reserve(p.lattice_points.size());
    for (const auto& m : p.lattice_points) {
        std::vector<int> e(fan.nrays());
        for (int r = 0; r < fan.nrays(); ++r) {
            long acc = alpha.representative[r];
            for (int j = 0; j < fan.rank; ++j) acc += fan.rays[r][j] * m[j];
            if (acc < 0) throw InternalError("monomial_basis: negative exponent");
            e[r] = static_cast<int>(acc);
        }
        out.push_back(std::move(e));
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

// The integral cone point m_sigma with <m_sigma, n_rho> = -a_rho on the cone,
// if one exists.
std::optional<QVec> cartier_point(const Fan& fan, const TorusDivisor& a,
                                  const std::vector<int>& cone) {
    int n = fan.rank;
    QMat sys(cone.size(), QVec(n));
    QVec rhs(cone.size());
    for (size_t i = 0; i < cone.size(); ++i) {
        for (int j = 0; j < n; ++j) sys[i][j] = QQ(fan.rays[cone[i]][j]);
        rhs[i] = QQ(-a[cone[i]]);
    }
    auto sol = q_solve(sys, rhs);
    if (!sol) return std::nullopt;
    for (size_t i = 0; i < cone.size(); ++i) {
        QQ acc = 0;
        for (int j = 0; j < n; ++j) acc += sys[i][j] * (*sol)[j];
        if (acc != rhs[i]) return std::nullopt;
    }
    for (int j = 0; j < n; ++j) {
        if ((*sol)[j].get_den() != 1) return std::nullopt;
    }
    return sol;
}

}  // namespace

bool is_cartier(const Fan& fan, const TorusDivisor& a) {
    if (static_cast<int>(a.size()) != fan.nrays())
        throw InputError("is_cartier: divisor vector has wrong length");
    if (!fan.complete) throw PreconditionError("is_cartier: fan is not complete");
    for (const auto& cone : fan.max_cones) {
        if (!cartier_point(fan, a, cone)) return false;
    }
    return true;
}

bool is_ample(const Fan& fan, const TorusDivisor& a) {
    if (static_cast<int>(a.size()) != fan.nrays())
        throw InputError("is_ample: divisor vector has wrong length");
    if (!fan.complete) throw PreconditionError("is_ample: fan is not complete");
    for (const auto& cone : fan.max_cones) {
        auto m = cartier_point(fan, a, cone);
        if (!m) return false;
        std::set<int> in(cone.begin(), cone.end());
        for (int r = 0; r < fan.nrays(); ++r) {
            if (in.count(r)) continue;
            QQ acc = 0;
            for (int j = 0; j < fan.rank; ++j) acc += QQ(fan.rays[r][j]) * (*m)[j];
            if (acc <= QQ(-a[r])) return false;  // strictness fails across this wall
        }
    }
    return true;
}

}  // namespace torres
