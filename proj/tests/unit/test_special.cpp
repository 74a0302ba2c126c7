#include "doctest.h"

#include "ssmp/quadrature.hpp"
#include "ssmp/special.hpp"

#include <gsl/gsl_sf_gamma.h>
#include <gsl/gsl_sf_psi.h>

#include <cmath>

using namespace ssmp;

namespace {

cplx gsl_lngamma(cplx z)
{
    gsl_sf_result lnr, arg;
    gsl_sf_lngamma_complex_e(z.real(), z.imag(), &lnr, &arg);
    return {lnr.val, arg.val};
}

} // namespace

TEST_CASE("log_gamma recursion and reflection residuals")
{
    double worst_rec = 0.0, worst_ref = 0.0;
    for (double a : {0.1, 0.5, 1.0, 2.0, 7.5})
        for (double y = -30.0; y <= 30.0; y += 2.5) {
            cplx z(a, y);
            cplx lhs = log_gamma(z + 1.0);
            cplx rhs = std::log(z) + log_gamma(z);
            worst_rec = std::max(worst_rec, std::abs(std::exp(lhs - rhs) - 1.0));
            // Gamma(z) Gamma(1-z) sin(pi z) = pi
            if (std::abs(y) <= 20.0 && (y != 0.0 || a != std::floor(a))) {
                cplx refl = log_gamma(z) + log_gamma(1.0 - z) + log_sin_pi(z);
                worst_ref = std::max(worst_ref, std::abs(std::exp(refl) / pi - 1.0));
            }
        }
    CHECK(worst_rec <= 1e-12);
    CHECK(worst_ref <= 1e-12);
}

TEST_CASE("log_gamma against GSL")
{
    for (double a : {0.3, 0.5, 1.0, 3.0})
        for (double y : {-25.0, -3.0, 0.0, 0.7, 12.0, 40.0}) {
            cplx z(a, y);
            cplx d = std::exp(log_gamma(z) - gsl_lngamma(z)) - 1.0;
            CHECK(std::abs(d) <= 1e-12);
        }
}

TEST_CASE("gamma special values")
{
    CHECK(std::abs(gamma(cplx(0.5)).real() - std::sqrt(pi)) <= 1e-14);
    CHECK(std::abs(gamma(cplx(5.0)).real() - 24.0) <= 1e-12);
    CHECK(std::abs(gamma(cplx(3.5)).real() - 1.875 * std::sqrt(pi)) <= 1e-13);
    // |Gamma(1/2 + iy)|^2 = pi / cosh(pi y)
    for (double y : {1.0, 5.0, 20.0}) {
        double lhs = 2.0 * log_gamma(cplx(0.5, y)).real();
        CHECK(std::abs(lhs - std::log(pi / std::cosh(pi * y))) <= 1e-12 * std::abs(lhs));
    }
}

TEST_CASE("real gamma helpers")
{
    int s = 0;
    CHECK(std::abs(log_abs_gamma(-0.5, &s) - std::log(2.0 * std::sqrt(pi))) <= 1e-14);
    CHECK(s == -1);
    CHECK(reciprocal_gamma(-2.0) == 0.0);
    CHECK(std::abs(reciprocal_gamma(4.0) - 1.0 / 6.0) <= 1e-15);
    for (double x : {0.25, 1.0, 3.7, 40.0})
        CHECK(std::abs(digamma(x) - gsl_sf_psi(x)) <= 1e-12 * std::max(1.0, std::abs(digamma(x))));
}

TEST_CASE("small-argument kernels")
{
    cplx w(1e-9, 2e-9);
    CHECK(std::abs(one_minus_exp_neg(w) - w) <= 1e-17);
    CHECK(std::abs(levy_kernel(1e-6) - cplx(0.5e-12 - 1e-24 / 24.0, 1e-18 / 6.0)) <= 1e-30);
    cplx k = levy_kernel(0.5);
    CHECK(std::abs(k.imag() - (0.5 - std::sin(0.5))) <= 1e-16);
    CHECK(std::abs(levy_kernel(2.0) - (1.0 - std::exp(cplx(0.0, 2.0)) + cplx(0.0, 2.0))) <= 1e-15);
}

TEST_CASE("Gauss-Legendre rules integrate polynomials exactly")
{
    for (int n : {4, 8, 16, 32}) {
        const GaussRule& g = gauss_legendre(n);
        double s = 0.0;
        for (std::size_t i = 0; i < g.nodes.size(); ++i)
            s += g.weights[i] * std::pow(g.nodes[i], 2 * n - 2);
        CHECK(std::abs(s - 2.0 / (2 * n - 1)) <= 1e-14);
    }
}
