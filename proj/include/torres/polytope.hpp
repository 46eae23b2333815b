#pragma once

#include <vector>

#include "torres/fan.hpp"
#include "torres/linalg.hpp"

namespace torres {

/// Coefficient vector of a torus-invariant divisor sum_rho a_rho D_rho.
using TorusDivisor = std::vector<long>;

/// The polyhedron {m : <m, n_rho> >= -a_rho}, bounded whenever the fan is
/// complete. normalized_volume is n! times the Euclidean volume; it is an
/// integer exactly when the vertices are lattice points, so it is carried as
/// an exact rational.
struct LatticePolytope {
    std::vector<RayVector> normals;          // the fan's rays
    TorusDivisor offsets;                    // a_rho
    std::vector<QVec> vertices;
    std::vector<std::vector<long>> lattice_points;  // sorted lexicographically
    int dimension = -1;                      // affine dimension, -1 when empty
    QQ normalized_volume = 0;
};

LatticePolytope polytope_of_divisor(const Fan& fan, const TorusDivisor& a);

/// Monomial exponent vectors x^{(<m,n_rho> + a_rho)} for the lattice points m
/// of the representative's polytope: the monomial basis of the graded piece.
/// Sorted lexicographically. Empty degrees give an empty basis.
std::vector<std::vector<int>> monomial_basis(const Fan& fan, const DegreeClass& alpha);

/// Cartier: each max cone admits an integral m_sigma with <m_sigma, n_rho> = -a_rho
/// on its rays. Ample additionally requires strict inequality off the cone.
bool is_cartier(const Fan& fan, const TorusDivisor& a);
bool is_ample(const Fan& fan, const TorusDivisor& a);

}  // namespace torres
