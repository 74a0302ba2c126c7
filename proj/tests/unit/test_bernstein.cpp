#include "doctest.h"

#include "common.hpp"
#include "ssmp/errors.hpp"

using namespace ssmp;
using namespace ssmp_test;

TEST_CASE("eval_phi examples")
{
    CHECK(std::abs(eval_phi(id(), 3.0) - cplx(3.0)) <= 1e-15);
    BernsteinFunction atom = BernsteinFunction::compound_poisson(0.0, 0.0, {{1.0, 1.0}});
    CHECK(std::abs(eval_phi(atom, cplx(0.0, pi)) - cplx(2.0)) <= 1e-15);
    BernsteinFunction gp = BernsteinFunction::gamma_ratio_plus(0.5);
    CHECK(std::abs(eval_phi(gp, 1.0) - cplx(1.0 / std::sqrt(pi))) <= 1e-14);
    CHECK_THROWS_AS(eval_phi(id(), cplx(-0.1, 0.0)), Error);
}

TEST_CASE("gamma-ratio closed forms")
{
    // phi_+(z) = Gamma(at(1+z)) / Gamma(at z), phi_-(z) = Gamma(a z + a + r) / Gamma(a z + r)
    double at = 0.7, a = 0.3, r = 1.0;
    BernsteinFunction gp = BernsteinFunction::gamma_ratio_plus(at);
    BernsteinFunction gm = BernsteinFunction::gamma_ratio_minus(a, r);
    for (cplx z : {cplx(0.5, 0.0), cplx(1.0, 3.0), cplx(2.0, -17.0)}) {
        cplx ep = std::exp(log_gamma(at * (1.0 + z)) - log_gamma(at * z));
        cplx em = std::exp(log_gamma(a * z + a + r) - log_gamma(a * z + r));
        CHECK(rel(gp(z), ep) <= 1e-12);
        CHECK(rel(gm(z), em) <= 1e-12);
    }
    CHECK(std::abs(gm.phi0() - std::exp(std::lgamma(r + a) - std::lgamma(r))) <= 1e-14);
}

TEST_CASE("stable family is u^beta")
{
    BernsteinFunction s = BernsteinFunction::stable(0.5);
    CHECK(rel(s(cplx(4.0, 0.0)), cplx(2.0)) <= 1e-14);
    CHECK(rel(s(cplx(0.0, 1.0)), std::exp(cplx(0.0, pi / 4.0))) <= 1e-14);
}

// The table is 60 log-spaced samples, so log-log interpolation of e^{-y}
// alone costs about 0.5% near y = 1.
TEST_CASE("tabulated density against the tempered-stable closed form")
{
    BernsteinFunction t = BernsteinFunction::tabulated(0.0, 0.0, tempered_stable_density());
    for (double u : {0.1, 1.0, 5.0, 30.0}) {
        double got = t(cplx(u)).real();
        CHECK(std::abs(got - tempered_stable_phi(u)) <= 1e-2 * tempered_stable_phi(u));
    }
    // complex argument: 2 sqrt(pi)(sqrt(1+z) - 1)
    cplx z(1.0, 4.0);
    cplx want = 2.0 * std::sqrt(pi) * (std::sqrt(1.0 + z) - 1.0);
    CHECK(rel(t(z), want) <= 1e-2);
}

TEST_CASE("invalid descriptors are rejected")
{
    CHECK_THROWS_AS(BernsteinFunction(0.0, 0.0, NoMeasure{}), Error);
    CHECK_THROWS_AS(BernsteinFunction::drift_only(-1.0), Error);
    CHECK_THROWS_AS(BernsteinFunction::compound_poisson(0.0, 0.0, {{-1.0, 1.0}}), Error);
    CHECK_THROWS_AS(BernsteinFunction::stable(1.5), Error);
    TabulatedDensity bad = tempered_stable_density();
    bad.lower_exponent = 1.2; // int (1 ^ y) nu(dy) diverges
    CHECK_THROWS_AS(BernsteinFunction::tabulated(0.0, 0.0, bad), Error);
}

TEST_CASE("phi_derivative")
{
    CHECK(std::abs(phi_derivative(id(), 5.0) - 1.0) <= 1e-12);
    CHECK(std::abs(phi_derivative(BernsteinFunction::affine(1.0, 1.0), 2.0) - 1.0) <= 1e-12);
    // phi_-'(u) = a phi_-(u) (psi(a u + a + r) - psi(a u + r)), a = 0.5, r = 1
    BernsteinFunction gm = BernsteinFunction::gamma_ratio_minus(0.5, 1.0);
    double u = 1.0, a = 0.5, r = 1.0;
    double want = a * gm(u).real() * (digamma(a * u + a + r) - digamma(a * u + r));
    CHECK(std::abs(finite_difference_derivative(gm, u) - want) <= 1e-8);
    CHECK(std::abs(phi_derivative(gm, u) - want) <= 1e-10);
}

TEST_CASE("shape invariants hold for every family")
{
    for (const auto& [name, f] : builtin_families()) {
        CAPTURE(name);
        CHECK(check_shape(f).ok());
    }
    CHECK(check_shape(BernsteinFunction::tabulated(0.0, 0.0, tempered_stable_density())).ok());
}

TEST_CASE("theta_integral")
{
    CHECK(theta_integral(id(), 1.0, 0.0) == 0.0);
    BernsteinFunction c(2.0, 0.0, NoMeasure{});
    CHECK(std::abs(theta_integral(c, 1.0, 7.0)) <= 1e-15);
    // xi arctan xi - log(1 + xi^2) / 2 at a = 1, xi = 1
    CHECK(std::abs(theta_integral(id(), 1.0, 1.0) - (pi / 4.0 - std::log(2.0) / 2.0)) <= 1e-10);
    // arg form against the log-modulus form for id: a = 1/2, xi = 5
    double xi = 5.0, a = 0.5;
    double want = xi * std::atan(xi / a) - 0.5 * a * std::log1p(xi * xi / (a * a));
    CHECK(std::abs(theta_integral(id(), a, xi) - want) <= 1e-9);
}

TEST_CASE("theta_limits")
{
    // id at a = 1/2: Theta(xi) = atan(2 xi) - log(1 + 4 xi^2) / (4 xi)
    auto exact = [](double xi) { return std::atan(2.0 * xi) - std::log1p(4.0 * xi * xi) / (4.0 * xi); };
    ThetaLimits l = theta_limits(id(), 400.0, 8);
    CHECK(l.lower >= 0.0);
    CHECK(l.upper <= pi / 2.0);
    CHECK(std::abs(l.lower - exact(100.0)) <= 1e-9);
    CHECK(std::abs(l.upper - exact(400.0)) <= 1e-9);
    ThetaLimits l2 = theta_limits(id(), 3200.0, 8);
    CHECK(pi / 2.0 - l2.lower < 0.3 * (pi / 2.0 - l.lower));

    double target = 0.7 * pi / 2.0;
    ThetaLimits g = theta_limits(BernsteinFunction::gamma_ratio_plus(0.7), 400.0, 8);
    ThetaLimits g2 = theta_limits(BernsteinFunction::gamma_ratio_plus(0.7), 3200.0, 8);
    CHECK(std::abs(g2.lower - target) < 0.3 * std::abs(g.lower - target));
    CHECK(std::abs(g2.upper - target) <= 5e-3);
    ThetaLimits c = theta_limits(BernsteinFunction(2.0, 0.0, NoMeasure{}), 400.0, 8);
    CHECK(c.lower == 0.0);
    CHECK(c.upper == 0.0);
}

TEST_CASE("theta range on sampled families")
{
    for (const auto& [name, f] : builtin_families()) {
        CAPTURE(name);
        ThetaSamples s = theta_samples(f, 100.0, 8);
        for (double t : s.theta) {
            CHECK(t >= 0.0);
            CHECK(t <= pi / 2.0);
        }
    }
}
