#include "torres/differentials.hpp"

#include <string>

#include "torres/errors.hpp"

namespace torres {

namespace {

Polynomial poly_det(const std::vector<std::vector<Polynomial>>& m) {
    int n = static_cast<int>(m.size());
    int nv = m[0][0].nvars();
    if (n == 1) return m[0][0];
    Polynomial acc(nv);
    for (int i = 0; i < n; ++i) {
        if (m[i][0].is_zero()) continue;
        std::vector<std::vector<Polynomial>> minor;
        for (int r = 0; r < n; ++r) {
            if (r == i) continue;
            std::vector<Polynomial> row;
            for (int c = 1; c < n; ++c) row.push_back(m[r][c]);
            minor.push_back(std::move(row));
        }
        Polynomial cof = m[i][0] * poly_det(minor);
        acc = (i % 2 == 0) ? acc + cof : acc - cof;
    }
    return acc;
}

// Divide p by coeff * x^e; throws InternalError when the division is inexact.
Polynomial divide_by_term(const Polynomial& p, const QQ& coeff, const Exponents& e) {
    Polynomial out(p.nvars());
    for (const auto& [pe, pc] : p.terms()) {
        Exponents q(p.nvars());
        for (int i = 0; i < p.nvars(); ++i) {
            q[i] = pe[i] - e[i];
            if (q[i] < 0)
                throw InternalError("toric_jacobian: inexact division (input not homogeneous?)");
        }
        out.add_term(q, pc / coeff);
    }
    return out;
}

Exponents complement_indicator(const Fan& fan, const std::vector<int>& I) {
    Exponents x(fan.nrays(), 1);
    for (int i : I) x[i] = 0;
    return x;
}

}  // namespace

int omega_orientation(const Fan& fan) {
    DeterminantIdentity id = exact_sequence_determinant(fan);
    if (id.c == 0) throw InternalError("omega_orientation: vanishing sequence determinant");
    return id.c > 0 ? 1 : -1;
}

std::vector<OmegaTerm> omega_terms(const Fan& fan) {
    if (!fan.complete) throw PreconditionError("omega_terms: fan is not complete");
    int s = omega_orientation(fan);
    std::vector<OmegaTerm> out;
    for (const auto& I : n_subsets(fan.nrays(), fan.rank)) {
        long d = det_n(fan, I);
        if (d == 0) continue;
        OmegaTerm t;
        t.rays = I;
        t.det = s * d;
        t.xhat = complement_indicator(fan, I);
        out.push_back(std::move(t));
    }
    return out;
}

Polynomial jacobian_determinant(const Fan& fan, const std::vector<Polynomial>& f,
                                const std::vector<int>& I) {
    int n = fan.rank;
    if (static_cast<int>(f.size()) != n + 1)
        throw InputError("toric_jacobian: expected rank+1 polynomials");
    std::vector<std::vector<Polynomial>> m;
    m.push_back(f);
    for (int i = 0; i < n; ++i) {
        std::vector<Polynomial> row;
        for (int j = 0; j <= n; ++j) row.push_back(f[j].partial(I[i]));
        m.push_back(std::move(row));
    }
    return poly_det(m);
}

JacobianResult toric_jacobian(const Fan& fan, const ClassGroup& cg,
                              const std::vector<Polynomial>& f) {
    int n = fan.rank;
    if (static_cast<int>(f.size()) != n + 1)
        throw InputError("toric_jacobian: expected rank+1 polynomials");
    std::optional<DegreeClass> alpha;
    for (size_t i = 0; i < f.size(); ++i) {
        auto d = is_homogeneous(fan, cg, f[i]);
        if (!d) throw PreconditionError("toric_jacobian: input " + std::to_string(i) +
                                        " is not homogeneous");
        if (f[i].is_zero()) continue;
        if (!alpha) {
            alpha = d;
        } else if (!(*alpha == *d)) {
            throw PreconditionError("toric_jacobian: inputs have different degrees");
        }
    }
    if (!alpha) alpha = cg.degree_of(std::vector<long>(fan.nrays(), 0));

    int s = omega_orientation(fan);
    auto subsets = n_subsets(fan.nrays(), n);

    JacobianResult out{Polynomial(fan.nrays()), DegreeClass{}, {}};
    bool have_j = false;
    for (const auto& I : subsets) {
        long d = det_n(fan, I);
        if (d == 0) continue;
        Polynomial num = jacobian_determinant(fan, f, I);
        out.j = divide_by_term(num, QQ(s * d), complement_indicator(fan, I));
        have_j = true;
        break;
    }
    if (!have_j) throw InternalError("toric_jacobian: no independent ray subset");

    // Cross-check every subset, dependent ones included, keeping the
    // numerator determinants as witnesses.
    for (const auto& I : subsets) {
        long d = det_n(fan, I);
        Polynomial lhs = jacobian_determinant(fan, f, I);
        Polynomial rhs =
            out.j * Polynomial::monomial(fan.nrays(), complement_indicator(fan, I), QQ(s * d));
        if (!(lhs == rhs))
            throw InternalError(
                "toric_jacobian: chart cross-check failed (input not homogeneous?)");
        out.witnesses.emplace_back(I, std::move(lhs));
    }

    DegreeClass want = cg.lin(n + 1, *alpha, -1, beta0(fan, cg));
    auto got = is_homogeneous(fan, cg, out.j);
    if (!got || !(out.j.is_zero() || *got == want))
        throw InternalError("toric_jacobian: degree mismatch");
    out.degree = want;
    return out;
}

IdentityCheck verify_defining_identity(const Fan& fan, const std::vector<Polynomial>& f,
                                       const Polynomial& j) {
    int n = fan.rank;
    int s = omega_orientation(fan);
    IdentityCheck out;
    for (const auto& I : n_subsets(fan.nrays(), n)) {
        long d = det_n(fan, I);
        Polynomial lhs = jacobian_determinant(fan, f, I);
        Polynomial rhs =
            j * Polynomial::monomial(fan.nrays(), complement_indicator(fan, I), QQ(s * d));
        if (!(lhs == rhs)) {
            out.ok = false;
            out.offending.push_back(I);
        }
    }
    return out;
}

}  // namespace torres
