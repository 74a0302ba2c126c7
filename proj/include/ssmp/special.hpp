#pragma once

#include <complex>

namespace ssmp {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;

// Analytic branch on Re z >= 0 (sum of principal logs plus Stirling);
// reflection is used for Re z < 0, where only exp() of the result is meaningful.
cplx log_gamma(cplx z);
cplx gamma(cplx z);

// log sin(pi z) without overflow for large |Im z|.
cplx log_sin_pi(cplx z);

// log|Gamma(x)| and sign of Gamma(x) for real x; thread-safe.
double log_abs_gamma(double x, int* sign = nullptr);
double reciprocal_gamma(double x);
double digamma(double x);

// 1 - e^{-w} accurate near w = 0.
cplx one_minus_exp_neg(cplx w);
// 1 - e^{iw} + iw accurate near w = 0.
cplx levy_kernel(double w);

} // namespace ssmp
