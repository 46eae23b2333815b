#pragma once

#include <vector>

#include "torres/fan.hpp"
#include "torres/polynomial.hpp"

namespace torres {

/// One summand det(n_I) xhat_I dx_I of the n-form Omega, after the global
/// orientation sign has been applied to the determinant.
struct OmegaTerm {
    std::vector<int> rays;  // I, increasing
    long det = 0;      // orientation-adjusted det(n_I)
    Exponents xhat;         // complement indicator exponents
};

/// Global orientation sign: +1 or -1, chosen so that the determinant constant
/// of the Euler-field exact sequence is positive. On projective space with
/// rays listed coordinate-first this reproduces the classical alternating-sum
/// n-form, which pins the sign of every residue downstream.
int omega_orientation(const Fan& fan);

/// All n-subsets with nonzero determinant, index-ordered, orientation applied.
std::vector<OmegaTerm> omega_terms(const Fan& fan);

struct JacobianResult {
    Polynomial j;
    DegreeClass degree;  // (n+1) deg(f) - beta_0
    /// Numerator determinants per subset, the witnesses of the cross-check:
    /// each must equal j * det(n_I) * xhat_I.
    std::vector<std::pair<std::vector<int>, Polynomial>> witnesses;
};

/// The polynomial J with sum_i (-1)^i f_i df_0 ^ ... ^ df_n-hat-i ^ ... = J Omega,
/// computed on the first independent chart by exact division and re-verified
/// against every other subset. Inputs must share one homogeneous class.
JacobianResult toric_jacobian(const Fan& fan, const ClassGroup& cg,
                              const std::vector<Polynomial>& f);

struct IdentityCheck {
    bool ok = true;
    std::vector<std::vector<int>> offending;  // subsets where the identity fails
};

/// True iff J(f_I) = j * det(n_I) * xhat_I for all n-subsets I, including the
/// dependent ones where both sides must vanish.
IdentityCheck verify_defining_identity(const Fan& fan, const std::vector<Polynomial>& f,
                                       const Polynomial& j);

/// Numerator determinant of the Jacobian formula for the subset I:
/// top row f_0..f_n, then the rows of partials with respect to the I-variables.
Polynomial jacobian_determinant(const Fan& fan, const std::vector<Polynomial>& f,
                                const std::vector<int>& I);

}  // namespace torres
