#pragma once

#include <vector>

#include "torres/linalg.hpp"

namespace torres {

using RayVector = std::vector<long>;

/// A complete fan's combinatorial data. Ray order is fixed at construction
/// and never reordered: orientation conventions depend on it.
struct Fan {
    int rank = 0;                           // n
    std::vector<RayVector> rays;            // primitive generators n_rho
    std::vector<std::vector<int>> max_cones;  // sorted ray-index sets
    bool complete = false;
    bool simplicial = false;
    bool smooth = false;

    int nrays() const { return static_cast<int>(rays.size()); }
};

/// Validates the input and computes the complete/simplicial/smooth flags.
/// Completeness is decided by facet pairing plus seeded rational direction
/// sampling (a heuristic that is exact in rank 1); failures leave the flag
/// unset rather than throwing, so they stay distinguishable from malformed
/// input, which throws InputError.
Fan build_fan(std::vector<RayVector> rays, std::vector<std::vector<int>> max_cones);

/// det(<m_i, n_rho_j>) with m the standard basis of the dual lattice and the
/// rays of I as columns, in the order given.
long det_n(const Fan& fan, const std::vector<int>& I);

/// The divisor class group A_{n-1}(X) = coker(M -> Z^{Sigma(1)}), presented by
/// a projection to canonical coordinates: a free part cut out by the Hermite
/// basis of the ray relations, and residues modulo the torsion invariants.
struct DegreeClass {
    std::vector<long> free_part;
    std::vector<long> torsion_part;     // residues in [0, d_i)
    std::vector<long> representative;   // (a_rho)

    bool operator==(const DegreeClass& o) const {
        return free_part == o.free_part && torsion_part == o.torsion_part;
    }
    bool is_zero() const;
};

struct ClassGroup {
    int free_rank = 0;
    std::vector<long> torsion;  // invariant factors > 1
    ZMat kernel;                     // free_rank x nrays, HNF rows; kills exactly im(M)
    ZMat torsion_rows;               // rows of the Smith transform for each invariant

    DegreeClass degree_of(const std::vector<long>& representative) const;
    /// Class of k1*d1 + k2*d2 computed on representatives.
    DegreeClass lin(long k1, const DegreeClass& d1, long k2, const DegreeClass& d2) const;
    DegreeClass scale(long k, const DegreeClass& d) const;
};

/// Requires a complete fan (PreconditionError otherwise).
ClassGroup class_group(const Fan& fan);

/// Class beta_0 of the divisor sum_rho D_rho.
DegreeClass beta0(const Fan& fan, const ClassGroup& cg);

/// An Euler vector field sum_rho b_rho x_rho d/dx_rho with sum b_rho n_rho = 0.
struct EulerField {
    QVec b;
};

/// Integer basis of the relation lattice {b : sum b_rho n_rho = 0}, in Hermite
/// normal form order. Deterministic, so the determinant-identity constant is too.
std::vector<EulerField> euler_basis(const Fan& fan);

/// theta(beta) = sum_rho b_rho a_rho, independent of the representative.
QQ euler_pairing(const EulerField& theta, const DegreeClass& beta);

/// The constant c with c*det(n_I) = (-1)^I det(bhat_I) for every n-subset I,
/// where bhat_I is the Euler-basis minor on the columns outside I. The report
/// carries the verification over all subsets; a violation is a bug.
struct DeterminantIdentity {
    QQ c;
    bool holds = false;
    std::vector<std::vector<int>> failing_subsets;
};
DeterminantIdentity exact_sequence_determinant(const Fan& fan);

/// Sign of the permutation of Sigma(1) moving the members of I to the end
/// while preserving relative order.
int subset_move_sign(int nrays, const std::vector<int>& I);

/// All n-subsets of ray indices, in increasing lexicographic order.
std::vector<std::vector<int>> n_subsets(int nrays, int n);

}  // namespace torres
