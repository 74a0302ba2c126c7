#pragma once

#include "ssmp/bernstein.hpp"
#include "ssmp/exponents.hpp"

#include <cmath>
#include <string>
#include <utility>
#include <vector>

namespace ssmp_test {

using ssmp::BernsteinFunction;
using ssmp::WienerHopfPair;

// y^{-3/2} e^{-y} on [1e-3, 1e2]; phi(u) ~ 2 sqrt(pi) (sqrt(1+u) - 1)
inline ssmp::TabulatedDensity tempered_stable_density()
{
    ssmp::TabulatedDensity d;
    d.y_min = 1e-3;
    d.y_max = 1e2;
    d.lower_exponent = 0.5;
    d.upper_exponent = 1.5;
    const int n = 60;
    for (int j = 0; j < n; ++j) {
        double y = d.y_min * std::pow(d.y_max / d.y_min, double(j) / (n - 1));
        d.values.push_back(std::pow(y, -1.5) * std::exp(-y));
    }
    return d;
}

inline double tempered_stable_phi(double u)
{
    return 2.0 * std::sqrt(M_PI) * (std::sqrt(1.0 + u) - 1.0);
}

inline BernsteinFunction id() { return BernsteinFunction::drift_only(1.0); }

inline std::vector<std::pair<std::string, BernsteinFunction>> builtin_families()
{
    return {
        {"drift", BernsteinFunction::drift_only(2.0)},
        {"affine", BernsteinFunction::affine(1.0, 1.0)},
        {"stable", BernsteinFunction::stable(0.5)},
        {"gamma-ratio-plus", BernsteinFunction::gamma_ratio_plus(0.7)},
        {"gamma-ratio-minus", BernsteinFunction::gamma_ratio_minus(0.3, 1.0)},
        {"compound-poisson", BernsteinFunction::compound_poisson(0.5, 0.0, {{1.0, 1.0}, {2.0, 0.5}})},
    };
}

inline double rel(std::complex<double> a, std::complex<double> b)
{
    return std::abs(a - b) / std::abs(b);
}

} // namespace ssmp_test
