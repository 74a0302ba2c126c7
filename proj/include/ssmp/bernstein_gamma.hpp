#pragma once

#include "ssmp/bernstein.hpp"

#include <array>
#include <vector>

namespace ssmp {

// W_phi, the solution of W(z+1) = phi(z) W(z), W(1) = 1, evaluated in log
// space on Re z >= 0. Real-axis constants are computed at construction.
class BernsteinGamma {
public:
    explicit BernsteinGamma(BernsteinFunction phi, double tol = 1e-8);

    cplx log_value(cplx z) const;
    cplx operator()(cplx z) const { return std::exp(log_value(z)); }

    // Fixed truncation K from the ladder 16, 32, ..., 1024. Also reports the
    // magnitude of the last Euler-Maclaurin term.
    cplx log_value_fixed(cplx z, int K, double* last_term = nullptr) const;

    const BernsteinFunction& phi() const { return phi_; }
    double gamma_phi() const { return gamma_phi_; }
    double tol() const { return tol_; }
    // Truncation that log_value would start from for this argument.
    int truncation(cplx z) const;

private:
    static constexpr int ladder_size = 7;
    static constexpr int max_order = 12;

    struct Level {
        int K;
        double sum_log;                           // sum_{k<K} log phi(k)
        std::array<double, max_order + 1> derivs; // log phi and derivatives at K
    };

    BernsteinFunction phi_;
    double tol_;
    double gamma_phi_ = 0.0;
    std::vector<Level> levels_;

    const Level& level_for(int K) const;
};

cplx bernstein_gamma(const BernsteinGamma& ev, cplx z);

// sqrt(phi(a)) W(a) / sqrt|phi(a+i xi)| exp(-int_0^|xi| arg phi(a+iw) dw)
double asymptotic_magnitude(const BernsteinGamma& ev, double a, double xi);

// sqrt(phi(a)) W(a) e^{-pi|xi|/2} |xi|^{a + m/d - 1/2}; needs mass_m metadata
// and a positive drift.
double asymptotic_power_law(const BernsteinGamma& ev, double a, double xi);

} // namespace ssmp
