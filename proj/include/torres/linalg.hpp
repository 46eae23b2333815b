#pragma once

#include <gmpxx.h>

#include <optional>
#include <vector>

namespace torres {

using ZZ = mpz_class;
using QQ = mpq_class;
using ZMat = std::vector<std::vector<ZZ>>;
using QMat = std::vector<std::vector<QQ>>;
using QVec = std::vector<QQ>;

/// Rank of a rational matrix by Gaussian elimination.
int q_rank(QMat a);

/// One solution of a*x = b, or nullopt when inconsistent.
std::optional<QVec> q_solve(QMat a, QVec b);

/// Row-reduced echelon form together with the transform t (t*a = rref).
/// Lets one system matrix be factored once and solved for many right-hand sides.
struct Rref {
    QMat rref;
    QMat transform;
    std::vector<int> pivot_cols;
    int rank = 0;
    int cols = 0;

    std::optional<QVec> solve(const QVec& b) const;
};
Rref rref_with_transform(QMat a);

/// Exact determinant of a square integer matrix (fraction-free Bareiss).
ZZ z_det(ZMat a);

/// Row-style Hermite normal form of the lattice spanned by the rows of a:
/// echelon shape, positive pivots, entries above each pivot reduced into
/// [0, pivot). Zero rows are dropped.
ZMat hnf_rows(ZMat a);

/// Basis (as HNF rows) of the integer kernel lattice {x : a*x = 0}.
/// The basis is saturated: it generates the full kernel, not a sublattice.
ZMat kernel_lattice(const ZMat& a);

/// Smith normal form data of an integer matrix: u*a*v = diag(d) with u, v
/// unimodular. Only u (the row transform) is tracked; it is what cokernel
/// coordinates need.
struct Smith {
    std::vector<ZZ> diag;  // nonnegative, d_i | d_{i+1}
    ZMat u;
};
Smith smith_normal_form(ZMat a);

/// Sign of the permutation written as a sequence of images (0..n-1 permuted).
int perm_sign(const std::vector<int>& seq);

}  // namespace torres
