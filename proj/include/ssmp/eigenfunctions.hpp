#pragma once

#include "ssmp/transform.hpp"

#include <functional>
#include <vector>

namespace ssmp {

// J(x) = sum_n (-1)^n e^{nx} / (W_phi(n+1) n!) for psi(xi) = -i xi phi(i xi).
class SeriesEigenfunction {
public:
    explicit SeriesEigenfunction(BernsteinFunction phi, int max_order = 600);

    const BernsteinFunction& phi() const { return phi_; }
    int max_order() const { return int(log_coef_.size()) - 1; }
    // log |c_n| = -log W_phi(n+1) - log n!
    double log_abs_coefficient(int n) const { return log_coef_.at(n); }
    // log phi(k), k = 1..max_order+2
    double log_phi(int k) const { return log_phi_.at(k); }

private:
    BernsteinFunction phi_;
    std::vector<double> log_coef_;
    std::vector<double> log_phi_;
};

struct SeriesValue {
    double value;
    double tail_bound;
    int terms;
};

SeriesValue eigenfunction_series_eval(const SeriesEigenfunction& s, double x, double tol = 1e-12);
double eigenfunction_series(const SeriesEigenfunction& s, double x, double tol = 1e-12);

// W(gamma, beta; z) = sum_n z^n / (n! Gamma(gamma n + beta)), gamma > -1.
SeriesValue wright_eval(double gamma, double beta, double z, double tol = 1e-12);
double wright(double gamma, double beta, double z, double tol = 1e-12);

enum class WrightVariant { Statement, Proof };
const char* wright_variant_name(WrightVariant v);

// Eigenfunction of the gamma-ratio pair (alpha_tilde; alpha, rho), scaled by
// Gamma(alpha+rho)/Gamma(1+alpha_tilde):
// Statement: W(alpha/alpha_tilde, alpha+rho; -e^{x/alpha_tilde})
// Proof:     W(alpha/alpha_tilde, alpha+rho; -e^{x/alpha})
double gamma_ratio_eigenfunction(double alpha_tilde, double alpha, double rho, double x,
                                 WrightVariant variant, double tol = 1e-12);
// Gamma(alpha_tilde)/(alpha Gamma(alpha+rho)) e^{rho x/alpha}
//   W(alpha_tilde/alpha, alpha_tilde + alpha_tilde rho/alpha; -e^{x/alpha})
double gamma_ratio_coeigenfunction(double alpha_tilde, double alpha, double rho, double x, double tol = 1e-12);

// Smooth cutoff: 1 on |xi| <= nyquist/2, C^infinity down to 0 at nyquist.
double spectral_taper(double xi, double nyquist);

// Spectrum of tau_{-y} J = J(. - y): m(xi) e^{-i xi y} e^{y/2} taper(xi) / sqrt(2 pi).
SpectrumLine eigenfunction_spectrum(const MultiplierLine& m, double y = 0.0);

// J(x) = e^{-x/2} (1/2pi) int e^{ix xi} m(xi) d xi, with the spectral taper.
GridFunction eigenfunction_fft(const WienerHopfPair& pair, const GridSpec& spec);
GridFunction eigenfunction_fft(const MultiplierLine& m, double y = 0.0);

// e^{-1/(1-u^2)} on |u| < 1
double standard_bump(double u);

// n bump(n(x - y)) normalized to unit L^2(e) norm.
GridFunction approx_eigenfunction(const GridSpec& spec, double y, int n,
                                  const std::function<double(double)>& bump = standard_bump);
// Bump given by samples on the same grid (read through interpolation).
GridFunction approx_eigenfunction(const GridSpec& spec, double y, int n, const GridFunction& bump);

} // namespace ssmp
