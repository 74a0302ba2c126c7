#pragma once

#include "ssmp/bernstein_gamma.hpp"
#include "ssmp/exponents.hpp"

#include <functional>
#include <string>
#include <vector>

namespace ssmp {

struct GridSpec {
    double x_min = -20.0;
    double x_max = 40.0;
    int n = 4096;

    double dx() const { return (x_max - x_min) / n; }
    double dxi() const { return 2.0 * pi / (n * dx()); }
    double x(int j) const { return x_min + j * dx(); }
    double xi(int k) const { return 2.0 * pi * (k - n / 2) / (n * dx()); }
    double nyquist() const { return pi / dx(); }
};

// x_min < x_max, n a power of two >= 256.
void validate_grid(const GridSpec& spec);

struct GridFunction {
    GridSpec spec;
    std::vector<cplx> values;
};

struct SpectrumLine {
    GridSpec spec;
    std::vector<cplx> values;
};

enum class MultiplierKind { H, Lambda, Custom };

struct MultiplierLine {
    GridSpec spec;
    std::vector<cplx> values;
    MultiplierKind kind = MultiplierKind::Custom;
    bool zero_free = false;
};

GridFunction sample(const GridSpec& spec, const std::function<cplx(double)>& f);

// e^{-(1/2+eps)x} e^{-beta e^{-x}}
double h_fixture(double eps, double beta, double x);
GridFunction h_fixture(const GridSpec& spec, double eps, double beta);
// beta^{-eps-i xi} Gamma(eps+i xi) / sqrt(2 pi)
cplx h_fixture_transform(double eps, double beta, double xi);
GridFunction gaussian(const GridSpec& spec, double center);

// Discrete norm sqrt(dx sum |f_j|^2 e^{x_j})
double l2e_norm(const GridFunction& f);
// dx sum f_j conj(g_j) e^{x_j}
cplx l2e_inner(const GridFunction& f, const GridFunction& g);
double spectrum_norm(const SpectrumLine& s);

SpectrumLine shifted_fft(const GridFunction& f);
GridFunction inverse_shifted_fft(const SpectrumLine& s);

// Same grids without the e^{x/2} weight.
SpectrumLine plain_fft(const GridFunction& f);
GridFunction plain_inverse_fft(const SpectrumLine& s);

// Cubic Lagrange interpolation; zero outside the grid.
cplx interpolate(const GridFunction& f, double x);

// m_H(z) = W_{phi+}(-iz) / W_{phi-}(1+iz); the line-1/2 multiplier is m_H(xi + i/2).
class HMultiplier {
public:
    HMultiplier(const WienerHopfPair& pair, double tol = 1e-8);
    cplx log_value(cplx z) const;
    cplx operator()(cplx z) const { return std::exp(log_value(z)); }
    const BernsteinGamma& plus() const { return plus_; }
    const BernsteinGamma& minus() const { return minus_; }

private:
    BernsteinGamma plus_;
    BernsteinGamma minus_;
};

MultiplierLine multiplier_h(const WienerHopfPair& pair, const GridSpec& spec, double tol = 1e-8);
MultiplierLine multiplier_lambda(const WienerHopfPair& pair, const GridSpec& spec, double tol = 1e-8);
MultiplierLine multiplier_custom(const GridSpec& spec, const std::function<cplx(double)>& m);

struct ApplyDiagnostics {
    double tail_fraction = 0.0;
    bool domain_warning = false;
};

// inverse_shifted_fft(m^{+-1} shifted_fft(f)). With noise_floor > 0, input
// components below noise_floor * max|F| are dropped first.
GridFunction apply_multiplier(const MultiplierLine& m, const GridFunction& f, bool invert,
                              double noise_floor = 0.0, ApplyDiagnostics* diag = nullptr,
                              double tail_threshold = 1e-6);

// Fraction of sum |s_k|^2 carried by |xi| > nyquist / 2.
double tail_fraction(const SpectrumLine& s);

enum class DomainVerdict { Inside, Borderline, Outside };
const char* domain_verdict_name(DomainVerdict v);

struct DomainReport {
    std::vector<double> band_lower; // dyadic bands [2^j, 2^{j+1}); first band is [0, 1)
    std::vector<double> band_mass;
    double tail_fraction = 0.0;
    DomainVerdict verdict = DomainVerdict::Inside;
};

DomainReport domain_check(const MultiplierLine& m, const GridFunction& f, bool invert = false,
                          double threshold = 1e-6);

} // namespace ssmp
