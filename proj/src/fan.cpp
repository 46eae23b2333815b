#include "torres/fan.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <map>
#include <set>
#include <string>

#include "torres/errors.hpp"

namespace torres {

namespace {

ZMat ray_matrix(const Fan& fan) {  // rows = rays
    ZMat b(fan.nrays(), std::vector<ZZ>(fan.rank));
    for (int i = 0; i < fan.nrays(); ++i) {
        for (int j = 0; j < fan.rank; ++j) b[i][j] = fan.rays[i][j];
    }
    return b;
}

ZMat ray_columns(const Fan& fan, const std::vector<int>& idx) {
    ZMat m(fan.rank, std::vector<ZZ>(idx.size()));
    for (size_t j = 0; j < idx.size(); ++j) {
        for (int i = 0; i < fan.rank; ++i) m[i][j] = fan.rays[idx[j]][i];
    }
    return m;
}

int z_rank(const ZMat& a) {
    QMat q(a.size());
    for (size_t i = 0; i < a.size(); ++i) q[i] = QVec(a[i].begin(), a[i].end());
    return q_rank(std::move(q));
}

bool cone_contains(const Fan& fan, const std::vector<int>& cone, const std::vector<ZZ>& dir) {
    int n = fan.rank;
    if (static_cast<int>(cone.size()) < n) return false;
    // Caratheodory: a cone point lies in some simplicial subcone of the generators.
    std::vector<std::vector<int>> subsets;
    for (const auto& pick : n_subsets(static_cast<int>(cone.size()), n)) {
        std::vector<int> sub(n);
        for (int i = 0; i < n; ++i) sub[i] = cone[pick[i]];
        subsets.push_back(std::move(sub));
    }
    for (const auto& sub : subsets) {
        ZMat cols = ray_columns(fan, sub);
        QMat a(n, QVec(n));
        QVec rhs(n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) a[i][j] = QQ(cols[i][j]);
            rhs[i] = QQ(dir[i]);
        }
        auto sol = q_solve(std::move(a), std::move(rhs));
        if (!sol) continue;
        bool ok = true, exact = true;
        for (int j = 0; j < n; ++j) {
            if ((*sol)[j] < 0) { ok = false; break; }
        }
        if (!ok) continue;
        // verify (solve may return a least-structured solution for singular systems)
        for (int i = 0; i < n && exact; ++i) {
            QQ acc = 0;
            for (int j = 0; j < n; ++j) acc += QQ(cols[i][j]) * (*sol)[j];
            if (acc != QQ(dir[i])) exact = false;
        }
        if (exact) return true;
    }
    return false;
}

// Facets of a max cone as supporting hyperplanes; key = (canonical normal,
// rays of the cone lying on it).
std::set<std::pair<std::vector<long>, std::vector<int>>> cone_facets(const Fan& fan,
                                                                          const std::vector<int>& cone) {
    std::set<std::pair<std::vector<long>, std::vector<int>>> out;
    int n = fan.rank;
    if (n < 2) return out;
    auto subs = n_subsets(static_cast<int>(cone.size()), n - 1);
    for (const auto& pick : subs) {
        ZMat rows(n - 1, std::vector<ZZ>(n));
        for (int i = 0; i < n - 1; ++i) {
            for (int j = 0; j < n; ++j) rows[i][j] = fan.rays[cone[pick[i]]][j];
        }
        ZMat ker = kernel_lattice(rows);
        if (ker.size() != 1) continue;  // subset does not span a hyperplane
        std::vector<long> u(n);
        for (int j = 0; j < n; ++j) u[j] = ker[0][j].get_si();
        long pos = 0, neg = 0;
        for (int r : cone) {
            long v = 0;
            for (int j = 0; j < n; ++j) v += u[j] * fan.rays[r][j];
            if (v > 0) ++pos;
            if (v < 0) ++neg;
        }
        if (pos > 0 && neg > 0) continue;  // not a supporting hyperplane
        if (pos == 0 && neg == 0) continue;  // cone lies inside the hyperplane
        std::vector<int> on;
        for (int r : cone) {
            long v = 0;
            for (int j = 0; j < n; ++j) v += u[j] * fan.rays[r][j];
            if (v == 0) on.push_back(r);
        }
        // canonical sign: first nonzero component positive
        for (long x : u) {
            if (x != 0) {
                if (x < 0) {
                    for (auto& y : u) y = -y;
                }
                break;
            }
        }
        out.insert({u, on});
    }
    return out;
}

}  // namespace

std::vector<std::vector<int>> n_subsets(int nrays, int n) {
    std::vector<std::vector<int>> out;
    if (n < 0 || n > nrays) return out;
    std::vector<int> comb(n);
    std::iota(comb.begin(), comb.end(), 0);
    if (n == 0) { out.push_back({}); return out; }
    while (true) {
        out.push_back(comb);
        int i = n - 1;
        while (i >= 0 && comb[i] == nrays - n + i) --i;
        if (i < 0) break;
        ++comb[i];
        for (int j = i + 1; j < n; ++j) comb[j] = comb[j - 1] + 1;
    }
    return out;
}

Fan build_fan(std::vector<RayVector> rays, std::vector<std::vector<int>> max_cones) {
    if (rays.empty()) throw InputError("fan: no rays given");
    Fan fan;
    fan.rank = static_cast<int>(rays[0].size());
    if (fan.rank < 1) throw InputError("fan: rays must have positive dimension");
    for (size_t i = 0; i < rays.size(); ++i) {
        if (static_cast<int>(rays[i].size()) != fan.rank)
            throw InputError("fan: ray " + std::to_string(i) + " has inconsistent dimension");
        long g = 0;
        for (long v : rays[i]) g = std::gcd(g, std::abs(v));
        if (g == 0) throw InputError("fan: ray " + std::to_string(i) + " is zero");
        if (g != 1) throw InputError("fan: ray " + std::to_string(i) + " is not primitive");
    }
    if (max_cones.empty()) throw InputError("fan: empty cone list");
    for (size_t k = 0; k < max_cones.size(); ++k) {
        auto& cone = max_cones[k];
        if (cone.empty()) throw InputError("fan: cone " + std::to_string(k) + " is empty");
        for (int idx : cone) {
            if (idx < 0 || idx >= static_cast<int>(rays.size()))
                throw InputError("fan: cone " + std::to_string(k) + " has ray index out of range");
        }
        std::sort(cone.begin(), cone.end());
        if (std::adjacent_find(cone.begin(), cone.end()) != cone.end())
            throw InputError("fan: cone " + std::to_string(k) + " repeats a ray");
    }
    fan.rays = std::move(rays);
    fan.max_cones = std::move(max_cones);

    int n = fan.rank;
    bool all_full_dim = true;
    fan.simplicial = true;
    fan.smooth = true;
    for (const auto& cone : fan.max_cones) {
        int rk = z_rank(ray_columns(fan, cone));
        if (rk < n) all_full_dim = false;
        if (static_cast<int>(cone.size()) != n || rk < n) {
            fan.simplicial = false;
            fan.smooth = false;
        } else if (fan.simplicial) {
            ZZ d = z_det(ray_columns(fan, cone));
            if (abs(d) != 1) fan.smooth = false;
        }
    }

    // Facet pairing: in a complete fan every facet of a max cone is shared by
    // exactly one other max cone. Rank 1 is handled by sampling alone.
    bool facet_ok = true;
    if (n >= 2) {
        std::map<std::pair<std::vector<long>, std::vector<int>>, int> counts;
        for (const auto& cone : fan.max_cones) {
            for (const auto& f : cone_facets(fan, cone)) counts[f] += 1;
        }
        for (const auto& [key, cnt] : counts) {
            if (cnt != 2) { facet_ok = false; break; }
        }
        if (counts.empty()) facet_ok = false;
    }

    // Direction sampling: 1000 seeded rational directions, each must land in a cone.
    bool sample_ok = true;
    std::mt19937_64 rng(0x5EEDFA11ull);
    std::uniform_int_distribution<long> dist(-9, 9);
    for (int s = 0; s < 1000 && sample_ok; ++s) {
        std::vector<ZZ> dir(n);
        bool zero = true;
        for (int j = 0; j < n; ++j) {
            long v = dist(rng);
            dir[j] = v;
            if (v != 0) zero = false;
        }
        if (zero) continue;
        bool covered = false;
        for (const auto& cone : fan.max_cones) {
            if (cone_contains(fan, cone, dir)) { covered = true; break; }
        }
        if (!covered) sample_ok = false;
    }

    fan.complete = all_full_dim && facet_ok && sample_ok;
    return fan;
}

long det_n(const Fan& fan, const std::vector<int>& I) {
    if (static_cast<int>(I.size()) != fan.rank)
        throw InputError("det_n: subset must have exactly rank-many rays");
    for (int idx : I) {
        if (idx < 0 || idx >= fan.nrays()) throw InputError("det_n: ray index out of range");
    }
    ZZ d = z_det(ray_columns(fan, I));
    return d.get_si();
}

bool DegreeClass::is_zero() const {
    for (long v : free_part) {
        if (v != 0) return false;
    }
    for (long v : torsion_part) {
        if (v != 0) return false;
    }
    return true;
}

DegreeClass ClassGroup::degree_of(const std::vector<long>& representative) const {
    int nrays = kernel.empty() ? (torsion_rows.empty() ? 0 : static_cast<int>(torsion_rows[0].size()))
                               : static_cast<int>(kernel[0].size());
    if (static_cast<int>(representative.size()) != nrays)
        throw InputError("degree_of: divisor vector has wrong length");
    DegreeClass d;
    d.representative = representative;
    for (const auto& row : kernel) {
        ZZ acc = 0;
        for (int j = 0; j < nrays; ++j) acc += row[j] * representative[j];
        d.free_part.push_back(acc.get_si());
    }
    for (size_t t = 0; t < torsion.size(); ++t) {
        ZZ acc = 0;
        for (int j = 0; j < nrays; ++j) acc += torsion_rows[t][j] * representative[j];
        long m = torsion[t];
        long r = ((acc.get_si() % m) + m) % m;
        d.torsion_part.push_back(r);
    }
    return d;
}

DegreeClass ClassGroup::lin(long k1, const DegreeClass& d1, long k2,
                            const DegreeClass& d2) const {
    std::vector<long> rep(d1.representative.size());
    for (size_t i = 0; i < rep.size(); ++i)
        rep[i] = k1 * d1.representative[i] + k2 * d2.representative[i];
    return degree_of(rep);
}

DegreeClass ClassGroup::scale(long k, const DegreeClass& d) const {
    std::vector<long> rep(d.representative.size());
    for (size_t i = 0; i < rep.size(); ++i) rep[i] = k * d.representative[i];
    return degree_of(rep);
}

ClassGroup class_group(const Fan& fan) {
    if (!fan.complete) throw PreconditionError("class_group: fan is not complete");
    ZMat b = ray_matrix(fan);
    ClassGroup cg;
    cg.free_rank = fan.nrays() - fan.rank;

    ZMat bt(fan.rank, std::vector<ZZ>(fan.nrays()));
    for (int i = 0; i < fan.rank; ++i) {
        for (int j = 0; j < fan.nrays(); ++j) bt[i][j] = b[j][i];
    }
    cg.kernel = kernel_lattice(bt);
    if (static_cast<int>(cg.kernel.size()) != cg.free_rank)
        throw InternalError("class_group: kernel rank mismatch");

    Smith s = smith_normal_form(b);
    for (size_t i = 0; i < s.diag.size(); ++i) {
        if (s.diag[i] > 1) {
            cg.torsion.push_back(s.diag[i].get_si());
            cg.torsion_rows.push_back(s.u[i]);
        }
        if (s.diag[i] == 0)
            throw InternalError("class_group: rays of a complete fan must span");
    }
    return cg;
}

DegreeClass beta0(const Fan& fan, const ClassGroup& cg) {
    return cg.degree_of(std::vector<long>(fan.nrays(), 1));
}

std::vector<EulerField> euler_basis(const Fan& fan) {
    if (!fan.complete) throw PreconditionError("euler_basis: fan is not complete");
    ZMat bt(fan.rank, std::vector<ZZ>(fan.nrays()));
    for (int i = 0; i < fan.rank; ++i) {
        for (int j = 0; j < fan.nrays(); ++j) bt[i][j] = fan.rays[j][i];
    }
    ZMat ker = kernel_lattice(bt);
    std::vector<EulerField> out;
    for (const auto& row : ker) {
        EulerField f;
        f.b = QVec(row.begin(), row.end());
        out.push_back(std::move(f));
    }
    return out;
}

QQ euler_pairing(const EulerField& theta, const DegreeClass& beta) {
    if (theta.b.size() != beta.representative.size())
        throw InputError("euler_pairing: length mismatch");
    QQ acc = 0;
    for (size_t i = 0; i < theta.b.size(); ++i) acc += theta.b[i] * QQ(beta.representative[i]);
    return acc;
}

int subset_move_sign(int nrays, const std::vector<int>& I) {
    std::vector<bool> in(nrays, false);
    for (int i : I) in[i] = true;
    std::vector<int> seq;
    for (int i = 0; i < nrays; ++i) {
        if (!in[i]) seq.push_back(i);
    }
    for (int i : I) seq.push_back(i);
    return perm_sign(seq);
}

DeterminantIdentity exact_sequence_determinant(const Fan& fan) {
    if (!fan.complete) throw PreconditionError("exact_sequence_determinant: fan is not complete");
    ZMat bt(fan.rank, std::vector<ZZ>(fan.nrays()));
    for (int i = 0; i < fan.rank; ++i) {
        for (int j = 0; j < fan.nrays(); ++j) bt[i][j] = fan.rays[j][i];
    }
    ZMat theta = kernel_lattice(bt);
    int r = static_cast<int>(theta.size());

    auto bhat_det = [&](const std::vector<int>& I) {
        std::vector<bool> in(fan.nrays(), false);
        for (int i : I) in[i] = true;
        std::vector<int> comp;
        for (int j = 0; j < fan.nrays(); ++j) {
            if (!in[j]) comp.push_back(j);
        }
        ZMat minor(r, std::vector<ZZ>(r));
        for (int i = 0; i < r; ++i) {
            for (int j = 0; j < r; ++j) minor[i][j] = theta[i][comp[j]];
        }
        return z_det(std::move(minor));
    };

    DeterminantIdentity out;
    auto subsets = n_subsets(fan.nrays(), fan.rank);
    bool have_c = false;
    for (const auto& I : subsets) {
        long dn = det_n(fan, I);
        if (dn != 0) {
            ZZ bh = bhat_det(I);
            out.c = QQ(subset_move_sign(fan.nrays(), I)) * QQ(bh) / QQ(dn);
            have_c = true;
            break;
        }
    }
    if (!have_c) throw InternalError("exact_sequence_determinant: no independent ray subset");

    out.holds = true;
    for (const auto& I : subsets) {
        long dn = det_n(fan, I);
        ZZ bh = bhat_det(I);
        QQ lhs = out.c * QQ(dn);
        QQ rhs = QQ(subset_move_sign(fan.nrays(), I)) * QQ(bh);
        if (lhs != rhs) {
            out.holds = false;
            out.failing_subsets.push_back(I);
        }
    }
    if (!out.holds)
        throw InternalError("exact_sequence_determinant: determinant identity violated");
    return out;
}

}  // namespace torres
