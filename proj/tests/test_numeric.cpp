#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "torres/errors.hpp"
#include "torres/numeric.hpp"
#include "torres/residue.hpp"

using namespace torres;
using namespace torres::testing;

namespace {

// Simpson quadrature of the radial chart integral
// int_C dV / (1 + |u|^2)^2 = 2 pi int_0^(pi/2) sin t cos t dt = pi.
double chart_integral_quadrature() {
    auto f = [](double t) {
        double tn = std::tan(t);
        double sec2 = 1.0 + tn * tn;
        return tn * sec2 / (sec2 * sec2);
    };
    int steps = 2000;
    double h = (3.14159265358979323846 / 2) / steps;
    double acc = 0.0;
    for (int i = 0; i < steps; ++i) {
        double a = i * h, b = a + h;
        acc += (f(a) + 4 * f((a + b) / 2) + f(b)) * h / 6;
    }
    return 2 * 3.14159265358979323846 * acc;
}

}  // namespace

TEST_SUITE("numeric") {

TEST_CASE("closed-form chart integral") {
    CHECK(std::abs(chart_integral_quadrature() - 3.14159265358979323846) < 1e-9);
}

TEST_CASE("estimates are reproducible bit for bit") {
    Fixture fx = p1();
    DegreeClass beta = fx.cg.degree_of({2, 0});
    std::vector<Polynomial> f = {parse_polynomial("x0^2", fx.vars),
                                 parse_polynomial("x1^2", fx.vars)};
    Polynomial g = parse_polynomial("x0*x1", fx.vars);
    SamplerConfig cfg{20000, 7, 0};
    IntegralEstimate a = residue_integral(fx.fan, fx.cg, beta, f, g, cfg);
    IntegralEstimate b = residue_integral(fx.fan, fx.cg, beta, f, g, cfg);
    CHECK(a.value.real() == b.value.real());
    CHECK(a.value.imag() == b.value.imag());
    CHECK(a.std_error == b.std_error);
    CHECK(a.samples_used == 20000);
}

TEST_CASE("interval example converges to the symbolic residue") {
    Fixture fx = p1();
    DegreeClass beta = fx.cg.degree_of({2, 0});
    std::vector<Polynomial> f = {parse_polynomial("x0^2", fx.vars),
                                 parse_polynomial("x1^2", fx.vars)};
    Polynomial g = parse_polynomial("x0*x1", fx.vars);
    SamplerConfig cfg{200000, 11, 0};
    IntegralEstimate est = residue_integral(fx.fan, fx.cg, beta, f, g, cfg);
    CHECK(std::abs(est.value.real() - 1.0) < 3 * est.std_error);
    CHECK(std::abs(est.value.imag()) < 3 * est.std_error);

    // chart independence
    SamplerConfig other{200000, 11, 1};
    IntegralEstimate est2 = residue_integral(fx.fan, fx.cg, beta, f, g, other);
    double combined = 3 * std::sqrt(est.std_error * est.std_error +
                                    est2.std_error * est2.std_error);
    CHECK(std::abs(est.value.real() - est2.value.real()) < combined);
}

TEST_CASE("ideal members integrate to zero") {
    Fixture fx = p1();
    DegreeClass beta = fx.cg.degree_of({2, 0});
    std::vector<Polynomial> f = {parse_polynomial("x0^2", fx.vars),
                                 parse_polynomial("x1^2", fx.vars)};
    Polynomial g = f[0];  // x0^2 lies in the ideal piece
    SamplerConfig cfg{200000, 13, 0};
    IntegralEstimate est = residue_integral(fx.fan, fx.cg, beta, f, g, cfg);
    CHECK(std::abs(est.value.real()) < 3 * est.std_error);
}

TEST_CASE("product example converges to the volume") {
    Fixture fx = p1xp1();
    DegreeClass beta = fx.cg.degree_of({2, 0, 2, 0});
    auto f = lambda_sections(fx, QQ(1));
    Polynomial j = toric_jacobian(fx.fan, fx.cg, f).j;
    SamplerConfig cfg{300000, 17, 0};
    IntegralEstimate est = residue_integral(fx.fan, fx.cg, beta, f, j, cfg);
    CHECK(std::abs(est.value.real() - 8.0) < 3 * est.std_error);
    CHECK(std::abs(est.value.imag()) < 3 * est.std_error);
}

TEST_CASE("error scaling with sample count") {
    Fixture fx = p1();
    DegreeClass beta = fx.cg.degree_of({2, 0});
    std::vector<Polynomial> f = {parse_polynomial("x0^2", fx.vars),
                                 parse_polynomial("x1^2", fx.vars)};
    Polynomial g = parse_polynomial("x0*x1", fx.vars);
    IntegralEstimate half = residue_integral(fx.fan, fx.cg, beta, f, g, {100000, 19, 0});
    IntegralEstimate full = residue_integral(fx.fan, fx.cg, beta, f, g, {200000, 19, 0});
    double ratio = full.std_error / half.std_error;
    CHECK(ratio > 0.7071 * 0.8);
    CHECK(ratio < 0.7071 * 1.2);
}

TEST_CASE("trace normalization on the line and the plane") {
    IntegralEstimate one = appendix_normalization(1, {1000000, 23, 0});
    CHECK(std::abs(one.value.real() - 1.0) < 0.01);
    IntegralEstimate two = appendix_normalization(2, {4000000, 23, 0});
    CHECK(std::abs(two.value.real() - 1.0) < 0.02);
    CHECK_THROWS_AS(appendix_normalization(3, {100000, 1, 0}), InputError);
}

TEST_CASE("rank above two is refused") {
    Fixture big = product_projective(3, 2);  // rank 3, smooth
    std::vector<long> rep(big.fan.nrays(), 0);
    rep[0] = 1;
    rep[3] = 1;
    DegreeClass beta = big.cg.degree_of(rep);
    std::mt19937_64 rng(67);
    std::vector<Polynomial> f;
    for (int i = 0; i < 4; ++i) f.push_back(random_in_degree(big, beta, rng));
    CHECK_THROWS_AS(
        residue_integral(big.fan, big.cg, beta, f, Polynomial(big.fan.nrays()), {10000, 1, 0}),
        PreconditionError);
}

TEST_CASE("preconditions") {
    Fixture w = weighted_121();
    DegreeClass beta = w.cg.degree_of({0, 0, 2});
    std::vector<Polynomial> f = {parse_polynomial("x1 + x0^2", w.vars),
                                 parse_polynomial("x1 + x2^2", w.vars),
                                 parse_polynomial("x0*x2 + x1", w.vars)};
    CHECK_THROWS_AS(residue_integral(w.fan, w.cg, beta, f, Polynomial(3), {10000, 1, 0}),
                    PreconditionError);  // fan is not smooth

    Fixture fx = p1();
    DegreeClass b2 = fx.cg.degree_of({2, 0});
    std::vector<Polynomial> fp = {parse_polynomial("x0^2", fx.vars),
                                  parse_polynomial("x1^2", fx.vars)};
    Polynomial g = parse_polynomial("x0*x1", fx.vars);
    CHECK_THROWS_AS(residue_integral(fx.fan, fx.cg, b2, fp, g, {100, 1, 0}), InputError);
    CHECK_THROWS_AS(residue_integral(fx.fan, fx.cg, b2, fp, g, {10000, 1, 9}), InputError);
    CHECK_THROWS_AS(
        residue_integral(fx.fan, fx.cg, b2, fp, parse_polynomial("x0^3", fx.vars), {10000, 1, 0}),
        PreconditionError);  // wrong degree for g
}

}  // TEST_SUITE
