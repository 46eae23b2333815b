#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "torres/fan.hpp"
#include "torres/linalg.hpp"

namespace torres {

using Exponents = std::vector<int>;

/// Sparse multivariate polynomial over exact rationals. Terms are kept in
/// lexicographic exponent order (the map's order), and zero coefficients are
/// never stored.
class Polynomial {
public:
    explicit Polynomial(int nvars) : nvars_(nvars) {}
    Polynomial(int nvars, std::map<Exponents, QQ> terms);

    static Polynomial constant(int nvars, const QQ& value);
    static Polynomial monomial(int nvars, const Exponents& e, const QQ& coeff);

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<Exponents, QQ>& terms() const { return terms_; }
    QQ coefficient(const Exponents& e) const;

    void add_term(const Exponents& e, const QQ& coeff);

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial operator-() const;
    bool operator==(const Polynomial& o) const;

    Polynomial scaled(const QQ& c) const;
    Polynomial pow(int k) const;

    /// Formal partial derivative with respect to variable i.
    Polynomial partial(int i) const;

    /// Evaluate at a point; T is double, complex<double>, or QQ.
    template <typename T>
    T eval(const std::vector<T>& point) const {
        T acc{};
        for (const auto& [e, c] : terms_) {
            T t = coeff_as<T>(c);
            for (int i = 0; i < nvars_; ++i) {
                for (int k = 0; k < e[i]; ++k) t = t * point[i];
            }
            acc = acc + t;
        }
        return acc;
    }

private:
    template <typename T>
    static T coeff_as(const QQ& c) {
        if constexpr (std::is_same_v<T, QQ>) {
            return c;
        } else {
            return T(c.get_d());
        }
    }

    int nvars_;
    std::map<Exponents, QQ> terms_;
};

/// sum_rho b_rho x_rho df/dx_rho; equals theta(beta) f on homogeneous f.
Polynomial euler_apply(const EulerField& theta, const Polynomial& f);

/// The common degree class of all terms, or nullopt. Constants (and the zero
/// polynomial) report the zero class.
std::optional<DegreeClass> is_homogeneous(const Fan& fan, const ClassGroup& cg,
                                          const Polynomial& p);

/// Restriction to the affine chart of the cone with ray set I: x_rho = 1 off
/// I, remaining variables ordered as in I. Requires independent rays.
Polynomial dehomogenize(const Fan& fan, const Polynomial& p, const std::vector<int>& I);

/// Grammar: + - * ^ with integer or rational literals and parentheses.
/// Exponents are nonnegative integers.
Polynomial parse_polynomial(const std::string& text, const std::vector<std::string>& variables);

std::string to_string(const Polynomial& p, const std::vector<std::string>& variables);
std::string to_string(const QQ& q);

}  // namespace torres
