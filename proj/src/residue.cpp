#include "torres/residue.hpp"

#include <map>
#include <string>

#include "torres/errors.hpp"

namespace torres {

GradedPieceBasis graded_basis(const Fan& fan, const DegreeClass& degree) {
    GradedPieceBasis b;
    b.degree = degree;
    b.monomials = monomial_basis(fan, degree);
    return b;
}

QVec coefficient_vector(const Polynomial& p, const std::vector<Exponents>& basis) {
    std::map<Exponents, int> index;
    for (size_t i = 0; i < basis.size(); ++i) index.emplace(basis[i], static_cast<int>(i));
    QVec v(basis.size(), 0);
    for (const auto& [e, c] : p.terms()) {
        auto it = index.find(e);
        if (it == index.end())
            throw InternalError("coefficient_vector: monomial outside the graded basis");
        v[it->second] = c;
    }
    return v;
}

namespace {

void require_section_data(const Fan& fan, const ClassGroup& cg, const DegreeClass& beta,
                          const std::vector<Polynomial>& f) {
    if (static_cast<int>(f.size()) != fan.rank + 1)
        throw PreconditionError("expected rank+1 sections, got " + std::to_string(f.size()));
    for (size_t i = 0; i < f.size(); ++i) {
        auto d = is_homogeneous(fan, cg, f[i]);
        if (!d || (!f[i].is_zero() && !(*d == beta)))
            throw PreconditionError("section " + std::to_string(i) +
                                    " is not homogeneous of the stated class");
    }
}

// Columns of the degree-gamma piece of <f_0,...> over the gamma basis.
QMat ideal_columns(const Fan& fan, const ClassGroup& cg, const std::vector<Polynomial>& f,
                   const DegreeClass& gamma, const GradedPieceBasis& ambient) {
    QMat cols(ambient.dimension());
    std::vector<QVec> columns;
    for (const auto& fi : f) {
        if (fi.is_zero()) continue;
        auto beta_i = is_homogeneous(fan, cg, fi);
        if (!beta_i) throw PreconditionError("ideal piece: generator is not homogeneous");
        DegreeClass shift = cg.lin(1, gamma, -1, *beta_i);
        for (const auto& m : monomial_basis(fan, shift)) {
            Polynomial prod = fi * Polynomial::monomial(fan.nrays(), m, QQ(1));
            columns.push_back(coefficient_vector(prod, ambient.monomials));
        }
    }
    QMat a(ambient.dimension(), QVec(columns.size()));
    for (size_t j = 0; j < columns.size(); ++j) {
        for (int i = 0; i < ambient.dimension(); ++i) a[i][j] = columns[j][i];
    }
    return a;
}

}  // namespace

IdealPiece ideal_graded_piece(const Fan& fan, const ClassGroup& cg,
                              const std::vector<Polynomial>& f, const DegreeClass& gamma) {
    IdealPiece out;
    out.ambient = graded_basis(fan, gamma);
    out.columns = ideal_columns(fan, cg, f, gamma, out.ambient);
    out.rank = q_rank(out.columns);
    return out;
}

int quotient_dimension(const Fan& fan, const ClassGroup& cg, const std::vector<Polynomial>& f,
                       const DegreeClass& gamma) {
    IdealPiece p = ideal_graded_piece(fan, cg, f, gamma);
    return p.ambient.dimension() - p.rank;
}

bool check_condition3(const Fan& fan, const ClassGroup& cg, const DegreeClass& beta,
                      const std::vector<Polynomial>& f) {
    if (!is_ample(fan, beta.representative))
        throw PreconditionError("check_condition3: the class is not ample");
    require_section_data(fan, cg, beta, f);
    DegreeClass probe = cg.scale(fan.rank + 2, beta);
    return quotient_dimension(fan, cg, f, probe) == 0;
}

ResidueProblem::ResidueProblem(const Fan& fan, const ClassGroup& cg, const DegreeClass& beta,
                               std::vector<Polynomial> f)
    : fan_(fan), cg_(cg), beta_(beta), f_(std::move(f)), jac_(Polynomial(fan.nrays()), {}, {}) {
    if (!is_ample(fan_, beta_.representative))
        throw PreconditionError("toric residue: the class is not ample");
    require_section_data(fan_, cg_, beta_, f_);
    if (!check_condition3(fan_, cg_, beta_, f_))
        throw PreconditionError("toric residue: the sections share a common zero "
                                "(base-point-freeness fails)");

    rho_ = cg_.lin(fan_.rank + 1, beta_, -1, beta0(fan_, cg_));
    rho_basis_ = graded_basis(fan_, rho_);
    shift_basis_ = graded_basis(fan_, cg_.lin(1, rho_, -1, beta_));
    jac_ = toric_jacobian(fan_, cg_, f_);

    LatticePolytope delta = polytope_of_divisor(fan_, beta_.representative);
    if (delta.normalized_volume.get_den() != 1)
        throw InternalError("toric residue: ample Cartier polytope has fractional volume");
    deg_f_ = delta.normalized_volume.get_num();

    // System matrix [J | f_i * m] over the rho basis, factored once.
    int rows = rho_basis_.dimension();
    int cols = 1 + static_cast<int>(f_.size()) * shift_basis_.dimension();
    QMat a(rows, QVec(cols, 0));
    QVec jcol = coefficient_vector(jac_.j, rho_basis_.monomials);
    for (int i = 0; i < rows; ++i) a[i][0] = jcol[i];
    int col = 1;
    for (const auto& fi : f_) {
        for (const auto& m : shift_basis_.monomials) {
            Polynomial prod = fi * Polynomial::monomial(fan_.nrays(), m, QQ(1));
            QVec v = coefficient_vector(prod, rho_basis_.monomials);
            for (int i = 0; i < rows; ++i) a[i][col] = v[i];
            ++col;
        }
    }
    solver_ = rref_with_transform(std::move(a));

    // The quotient in the critical degree is a line; anything else is a bug.
    if (quotient_dimension(fan_, cg_, f_, rho_) != 1)
        throw InternalError("toric residue: quotient in the critical degree is not a line");
}

ResidueCertificate ResidueProblem::residue(const Polynomial& g) const {
    if (!g.is_zero()) {
        auto d = is_homogeneous(fan_, cg_, g);
        if (!d || !(*d == rho_))
            throw PreconditionError("toric residue: g must be homogeneous of the critical degree");
    }
    QVec rhs = coefficient_vector(g, rho_basis_.monomials);
    auto sol = solver_.solve(rhs);
    if (!sol)
        throw InternalError("toric residue: decomposition system is inconsistent");

    ResidueCertificate cert;
    cert.c = (*sol)[0];
    int col = 1;
    for (size_t i = 0; i < f_.size(); ++i) {
        Polynomial h(fan_.nrays());
        for (const auto& m : shift_basis_.monomials) {
            h.add_term(m, (*sol)[col]);
            ++col;
        }
        cert.cofactors.push_back(std::move(h));
    }
    cert.deg_f = deg_f_;
    cert.residue_value = cert.c * QQ(deg_f_);

    // The certificate identity is re-expanded and compared term by term.
    Polynomial rebuilt = jac_.j.scaled(cert.c);
    for (size_t i = 0; i < f_.size(); ++i) rebuilt = rebuilt + f_[i] * cert.cofactors[i];
    if (!(rebuilt == g))
        throw InternalError("toric residue: certificate identity failed to re-expand");
    return cert;
}

ResidueCertificate toric_residue(const Fan& fan, const ClassGroup& cg, const DegreeClass& beta,
                                 const std::vector<Polynomial>& f, const Polynomial& g) {
    return ResidueProblem(fan, cg, beta, f).residue(g);
}

std::vector<Polynomial> j0_generators(const Fan& fan, const Polynomial& f) {
    if (f.nvars() != fan.nrays()) throw InputError("j0_generators: variable count mismatch");
    std::vector<Polynomial> out;
    for (int r = 0; r < fan.nrays(); ++r) {
        Exponents e(fan.nrays(), 0);
        e[r] = 1;
        out.push_back(Polynomial::monomial(fan.nrays(), e, QQ(1)) * f.partial(r));
    }
    return out;
}

namespace {

std::vector<int> first_independent_subset(const Fan& fan) {
    for (const auto& I : n_subsets(fan.nrays(), fan.rank)) {
        if (det_n(fan, I) != 0) return I;
    }
    throw InternalError("no independent ray subset");
}

int combined_rank(const QMat& a, const QMat& b) {
    int rows = static_cast<int>(a.size());
    QMat joint(rows);
    for (int i = 0; i < rows; ++i) {
        joint[i] = a[i];
        joint[i].insert(joint[i].end(), b[i].begin(), b[i].end());
    }
    return q_rank(std::move(joint));
}

}  // namespace

NondegeneracyReport is_nondegenerate(const Fan& fan, const ClassGroup& cg,
                                     const DegreeClass& beta, const Polynomial& f) {
    if (!is_ample(fan, beta.representative))
        throw PreconditionError("is_nondegenerate: the class is not ample");
    auto d = is_homogeneous(fan, cg, f);
    if (!d || !(*d == beta))
        throw PreconditionError("is_nondegenerate: f is not homogeneous of the stated class");

    NondegeneracyReport out;
    std::vector<int> I = first_independent_subset(fan);
    out.reduced.push_back(f);
    for (int r : I) {
        Exponents e(fan.nrays(), 0);
        e[r] = 1;
        out.reduced.push_back(Polynomial::monomial(fan.nrays(), e, QQ(1)) * f.partial(r));
    }
    out.nondegenerate = check_condition3(fan, cg, beta, out.reduced);

    // The reduced set must span the same piece of J_0(f) in degree rho.
    DegreeClass rho = cg.lin(fan.rank + 1, beta, -1, beta0(fan, cg));
    IdealPiece full = ideal_graded_piece(fan, cg, j0_generators(fan, f), rho);
    IdealPiece reduced = ideal_graded_piece(fan, cg, out.reduced, rho);
    int joint = combined_rank(full.columns, reduced.columns);
    out.generation_ok = (full.rank == reduced.rank) && (joint == full.rank);
    return out;
}

J1Report j1_isomorphism_check(const Fan& fan, const ClassGroup& cg, const DegreeClass& beta,
                              const Polynomial& f) {
    if (!fan.simplicial) throw PreconditionError("j1_isomorphism_check: fan is not simplicial");
    NondegeneracyReport nd = is_nondegenerate(fan, cg, beta, f);
    if (!nd.nondegenerate)
        throw PreconditionError("j1_isomorphism_check: f is degenerate "
                                "(toric derivatives share a zero)");

    DegreeClass b0 = beta0(fan, cg);
    DegreeClass rho = cg.lin(fan.rank + 1, beta, -1, b0);
    DegreeClass rho_minus = cg.lin(1, rho, -1, b0);

    std::vector<Polynomial> j0 = j0_generators(fan, f);
    IdealPiece w = ideal_graded_piece(fan, cg, j0, rho);  // J_0(f)_rho over S_rho
    GradedPieceBasis src = graded_basis(fan, rho_minus);

    J1Report out;
    out.j0_quotient_dim = w.ambient.dimension() - w.rank;

    // Multiplication by prod x_rho: S_{rho-beta_0} -> S_rho, one column per
    // source monomial.
    Exponents ones(fan.nrays(), 1);
    QMat mu(w.ambient.dimension(), QVec(src.dimension(), 0));
    for (int j = 0; j < src.dimension(); ++j) {
        Polynomial img = Polynomial::monomial(fan.nrays(), src.monomials[j], QQ(1)) *
                         Polynomial::monomial(fan.nrays(), ones, QQ(1));
        QVec v = coefficient_vector(img, w.ambient.monomials);
        for (int i = 0; i < w.ambient.dimension(); ++i) mu[i][j] = v[i];
    }

    int joint = combined_rank(w.columns, mu);
    // dim of the preimage of J_0 under mu = dim source - dim(image mod J_0)
    int image_mod_w = joint - w.rank;
    int j1_dim = src.dimension() - image_mod_w;
    out.j1_quotient_dim = src.dimension() - j1_dim;
    out.image_not_contained = image_mod_w > 0;
    out.ok = (out.j0_quotient_dim == 1) && (out.j1_quotient_dim == 1) && out.image_not_contained;
    return out;
}

}  // namespace torres
