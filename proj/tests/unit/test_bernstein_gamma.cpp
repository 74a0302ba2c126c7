#include "doctest.h"

#include "common.hpp"
#include "ssmp/bernstein_gamma.hpp"
#include "ssmp/errors.hpp"

#include <gsl/gsl_sf_gamma.h>

using namespace ssmp;
using namespace ssmp_test;

namespace {

cplx gsl_gamma(cplx z)
{
    gsl_sf_result lnr, arg;
    gsl_sf_lngamma_complex_e(z.real(), z.imag(), &lnr, &arg);
    return std::exp(cplx(lnr.val, arg.val));
}

double functional_residual(const BernsteinGamma& W, double a, double y)
{
    cplx z(a, y);
    cplx lhs = W.log_value(z + 1.0);
    cplx rhs = W.phi().log_value(z) + W.log_value(z);
    return std::abs(std::exp(rhs - lhs) - 1.0);
}

} // namespace

TEST_CASE("bernstein_gamma examples")
{
    BernsteinGamma W(id());
    CHECK(rel(W(3.5), cplx(1.875 * std::sqrt(pi))) <= 1e-10);
    BernsteinGamma V(BernsteinFunction::affine(1.0, 1.0));
    CHECK(rel(V(2.0), cplx(2.0)) <= 1e-10);
    BernsteinGamma M(BernsteinFunction::gamma_ratio_minus(0.5, 1.0));
    CHECK(rel(M(2.0), cplx(2.0 / std::sqrt(pi))) <= 1e-10);
    CHECK_THROWS_AS(W(cplx(-0.5, 1.0)), Error);
}

TEST_CASE("gamma oracle for phi = id")
{
    BernsteinGamma W(id());
    double worst = 0.0;
    for (double a : {0.5, 1.0, 2.0})
        for (double y = -30.0; y <= 30.0; y += 0.5)
            worst = std::max(worst, std::abs(W(cplx(a, y)) / gsl_gamma(cplx(a, y)) - 1.0));
    CHECK(worst <= 1e-8);
}

TEST_CASE("contracts for every family")
{
    auto fams = builtin_families();
    fams.emplace_back("tabulated-density", BernsteinFunction::tabulated(0.0, 0.0, tempered_stable_density()));
    for (const auto& [name, f] : fams) {
        CAPTURE(name);
        BernsteinGamma W(f);
        CHECK(std::abs(W(1.0) - 1.0) <= 1e-12);
        double worst = 0.0;
        for (double a : {0.5, 1.0, 2.0})
            for (double y = -30.0; y <= 30.0; y += 5.0) {
                worst = std::max(worst, functional_residual(W, a, y));
                cplx z(a, y);
                CHECK(std::abs(W(std::conj(z)) - std::conj(W(z))) <= 1e-12 * std::abs(W(z)));
                CHECK(std::abs(W(z)) > 0.0);
            }
        CHECK(worst <= (name == "tabulated-density" ? 1e-6 : 1e-7));
    }
}

TEST_CASE("gamma-ratio closed forms of W")
{
    for (double at : {0.3, 0.7}) {
        BernsteinGamma W(BernsteinFunction::gamma_ratio_plus(at));
        for (cplx z : {cplx(0.5, 0.0), cplx(1.0, 10.0), cplx(2.0, -25.0)}) {
            cplx want = std::exp(log_gamma(at * z) - log_gamma(cplx(at)));
            CHECK(rel(W(z), want) <= 1e-7);
        }
    }
    for (auto [a, r] : {std::pair{0.3, 1.0}, std::pair{0.7, 0.75}}) {
        BernsteinGamma W(BernsteinFunction::gamma_ratio_minus(a, r));
        for (cplx z : {cplx(0.5, 0.0), cplx(1.0, 10.0), cplx(2.0, -25.0)}) {
            cplx want = std::exp(log_gamma(r + a * z) - log_gamma(cplx(a + r)));
            CHECK(rel(W(z), want) <= 1e-7);
        }
    }
}

TEST_CASE("large imaginary parts")
{
    BernsteinGamma W(id());
    cplx z(0.5, 200.0);
    CHECK(std::abs(W.log_value(z).real() - log_gamma(z).real()) <= 1e-9 * std::abs(log_gamma(z).real()));
}

TEST_CASE("asymptotic magnitude")
{
    BernsteinGamma W(id());
    // ratio to |Gamma(1/2 + i xi)| stays in a fixed band
    double lo = 1e300, hi = 0.0;
    for (double xi : {10.0, 20.0, 50.0, 100.0, 200.0}) {
        double r = asymptotic_magnitude(W, 0.5, xi) / std::abs(gsl_gamma(cplx(0.5, xi)));
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    }
    CHECK(lo > 0.1);
    CHECK(hi < 10.0);
    CHECK(hi / lo < 1.1);

    // d = 1, m = 1: |W(1/2 + i xi)| e^{pi xi / 2} grows like xi^1
    BernsteinGamma V(BernsteinFunction::affine(1.0, 1.0));
    double p1 = asymptotic_power_law(V, 0.5, 100.0) * std::exp(pi * 50.0);
    double p2 = asymptotic_power_law(V, 0.5, 200.0) * std::exp(pi * 100.0);
    CHECK(std::abs(std::log(p2 / p1) / std::log(2.0) - 1.0) <= 1e-12);
    CHECK_THROWS_AS(asymptotic_power_law(BernsteinGamma(BernsteinFunction::stable(0.5)), 0.5, 10.0), Error);

    // constant phi: no decay
    BernsteinGamma C(BernsteinFunction(2.0, 0.0, NoMeasure{}));
    CHECK(std::abs(asymptotic_magnitude(C, 0.5, 10.0) - asymptotic_magnitude(C, 0.5, 100.0)) <= 1e-12);
}
