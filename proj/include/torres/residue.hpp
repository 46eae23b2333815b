#pragma once

#include <vector>

#include "torres/differentials.hpp"
#include "torres/fan.hpp"
#include "torres/polynomial.hpp"
#include "torres/polytope.hpp"

namespace torres {

struct GradedPieceBasis {
    DegreeClass degree;
    std::vector<Exponents> monomials;  // distinct, lexicographic
    int dimension() const { return static_cast<int>(monomials.size()); }
};

GradedPieceBasis graded_basis(const Fan& fan, const DegreeClass& degree);

/// The graded piece of the ideal <f_0,...,f_n> in degree gamma: a spanning
/// set of coefficient columns over the monomial basis of S_gamma, plus its
/// exact rank.
struct IdealPiece {
    GradedPieceBasis ambient;
    QMat columns;  // ambient.dimension() rows, one column per generator multiple
    int rank = 0;
};

IdealPiece ideal_graded_piece(const Fan& fan, const ClassGroup& cg,
                              const std::vector<Polynomial>& f, const DegreeClass& gamma);

int quotient_dimension(const Fan& fan, const ClassGroup& cg, const std::vector<Polynomial>& f,
                       const DegreeClass& gamma);

/// True iff the sections have no common zero, decided by the vanishing of the
/// quotient in degree (n+2) beta. Requires ample beta and n+1 sections of
/// class beta.
bool check_condition3(const Fan& fan, const ClassGroup& cg, const DegreeClass& beta,
                      const std::vector<Polynomial>& f);

struct ResidueCertificate {
    QQ c;                               // g = c J + sum f_i h_i in degree rho
    std::vector<Polynomial> cofactors;  // the h_i
    ZZ deg_f;                           // n! vol(Delta_beta)
    QQ residue_value;                   // c * deg_f
};

/// Factors the residue computation once (Jacobian, bases, base-point check)
/// so that many g in S_rho can be resolved against the same section data.
class ResidueProblem {
public:
    ResidueProblem(const Fan& fan, const ClassGroup& cg, const DegreeClass& beta,
                   std::vector<Polynomial> f);

    ResidueCertificate residue(const Polynomial& g) const;

    const JacobianResult& jacobian() const { return jac_; }
    const DegreeClass& rho() const { return rho_; }
    const GradedPieceBasis& rho_basis() const { return rho_basis_; }
    const ZZ& deg_f() const { return deg_f_; }

private:
    const Fan& fan_;
    const ClassGroup& cg_;
    DegreeClass beta_;
    std::vector<Polynomial> f_;
    DegreeClass rho_;
    GradedPieceBasis rho_basis_;
    GradedPieceBasis shift_basis_;  // S_{rho - beta}
    JacobianResult jac_;
    ZZ deg_f_;
    Rref solver_;
};

ResidueCertificate toric_residue(const Fan& fan, const ClassGroup& cg, const DegreeClass& beta,
                                 const std::vector<Polynomial>& f, const Polynomial& g);

/// The generators x_rho df/dx_rho of the toric Jacobian ideal J_0(f).
std::vector<Polynomial> j0_generators(const Fan& fan, const Polynomial& f);

struct NondegeneracyReport {
    bool nondegenerate = false;
    std::vector<Polynomial> reduced;  // f, x_rho_i df/dx_rho_i over the chosen chart
    /// The reduced set generates the same piece of J_0(f) in degree rho.
    bool generation_ok = false;
};

NondegeneracyReport is_nondegenerate(const Fan& fan, const ClassGroup& cg,
                                     const DegreeClass& beta, const Polynomial& f);

struct J1Report {
    bool ok = false;
    int j0_quotient_dim = 0;   // dim S_rho / J_0(f)_rho
    int j1_quotient_dim = 0;   // dim S_{rho - beta_0} / J_1(f)
    bool image_not_contained = false;
};

/// Checks that multiplication by prod_rho x_rho induces a bijection
/// S_{rho-beta_0}/J_1(f) -> S_rho/J_0(f), both one-dimensional.
J1Report j1_isomorphism_check(const Fan& fan, const ClassGroup& cg, const DegreeClass& beta,
                              const Polynomial& f);

/// Coefficient vector of p over an explicit monomial basis; throws
/// InternalError when p has support outside the basis (degree bookkeeping).
QVec coefficient_vector(const Polynomial& p, const std::vector<Exponents>& basis);

}  // namespace torres
