#include "ssmp/special.hpp"

#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <limits>

namespace ssmp {

namespace {

const double half_log_two_pi = 0.91893853320467274178;

// B_{2k} / (2k (2k-1)) for k = 1..9
const double stirling_coef[] = {
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
};

cplx stirling(cplx z)
{
    cplx inv = 1.0 / z;
    cplx inv2 = inv * inv;
    cplx sum = 0.0;
    cplx p = inv;
    for (double c : stirling_coef) {
        sum += c * p;
        p *= inv2;
    }
    return (z - 0.5) * std::log(z) - z + half_log_two_pi + sum;
}

} // namespace

cplx log_sin_pi(cplx z)
{
    double y = z.imag();
    if (std::abs(y) < 20.0)
        return std::log(std::sin(pi * z));
    if (y < 0.0)
        return std::conj(log_sin_pi(std::conj(z)));
    // sin(pi z) = (i/2) e^{-i pi z} (1 - e^{2 i pi z}), |e^{2 i pi z}| tiny
    cplx e2 = std::exp(cplx(0.0, 2.0 * pi) * z);
    return cplx(0.0, -pi) * z + cplx(-std::log(2.0), pi / 2.0) + std::log(1.0 - e2);
}

cplx log_gamma(cplx z)
{
    if (z.real() < 0.0) {
        if (z.imag() == 0.0 && z.real() == std::floor(z.real()))
            return {std::numeric_limits<double>::infinity(), 0.0};
        return std::log(pi) - log_sin_pi(z) - log_gamma(1.0 - z);
    }
    if (z == cplx(0.0, 0.0))
        return {std::numeric_limits<double>::infinity(), 0.0};
    cplx shift = 0.0;
    while (std::abs(z) < 12.0) {
        shift += std::log(z);
        z += 1.0;
    }
    return stirling(z) - shift;
}

cplx gamma(cplx z)
{
    return std::exp(log_gamma(z));
}

double log_abs_gamma(double x, int* sign)
{
    if (x <= 0.0 && x == std::floor(x)) {
        if (sign)
            *sign = 0;
        return std::numeric_limits<double>::infinity();
    }
    int s = 1;
    double v = boost::math::lgamma(x, &s);
    if (sign)
        *sign = s;
    return v;
}

double reciprocal_gamma(double x)
{
    int s = 0;
    double lg = log_abs_gamma(x, &s);
    if (s == 0)
        return 0.0;
    return s * std::exp(-lg);
}

double digamma(double x)
{
    return boost::math::digamma(x);
}

cplx one_minus_exp_neg(cplx w)
{
    if (std::abs(w) < 1e-3) {
        // -(expm1(-w)) by Taylor series
        cplx term = w;
        cplx sum = w;
        for (int n = 2; n < 10; ++n) {
            term *= -w / double(n);
            sum += term;
        }
        return sum;
    }
    return 1.0 - std::exp(-w);
}

cplx levy_kernel(double w)
{
    if (std::abs(w) < 1.0) {
        // -sum_{n>=2} (iw)^n / n!
        cplx iw(0.0, w);
        cplx term = iw;
        cplx sum = 0.0;
        for (int n = 2; n < 24; ++n) {
            term *= iw / double(n);
            sum -= term;
        }
        return sum;
    }
    double s = std::sin(0.5 * w);
    return cplx(2.0 * s * s, w - std::sin(w));
}

} // namespace ssmp
