#pragma once

#include "ssmp/measure.hpp"
#include "ssmp/special.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace ssmp {

enum class ClosedFormKind { Stable, GammaRatioPlus, GammaRatioMinus };

// stable: p1 = beta; gamma-ratio-plus: p1 = alpha_tilde;
// gamma-ratio-minus: p1 = alpha, p2 = rho.
struct ClosedForm {
    ClosedFormKind kind;
    double p1 = 0.0;
    double p2 = 0.0;
};

struct NoMeasure {};

using MeasureDescriptor = std::variant<NoMeasure, ClosedForm, std::vector<Atom>, TabulatedDensity>;

struct TailMetadata {
    bool nu_bar_finite = true;
    double nu_bar_at_zero = 0.0; // meaningful when finite
    std::optional<double> rv_index;
    std::optional<bool> quasi_monotone;
    std::optional<double> mass_m;
};

class BernsteinFunction {
public:
    BernsteinFunction(double phi0, double drift, MeasureDescriptor measure,
                      std::optional<TailMetadata> metadata = std::nullopt,
                      std::function<double(double)> derivative = {});

    static BernsteinFunction drift_only(double d);
    static BernsteinFunction affine(double d, double c);
    static BernsteinFunction stable(double beta);
    static BernsteinFunction gamma_ratio_plus(double alpha_tilde);
    static BernsteinFunction gamma_ratio_minus(double alpha, double rho);
    static BernsteinFunction compound_poisson(double phi0, double drift, std::vector<Atom> atoms);
    static BernsteinFunction tabulated(double phi0, double drift, TabulatedDensity density);

    cplx operator()(cplx z) const;
    cplx log_value(cplx z) const;

    double phi0() const;
    double drift() const;
    const MeasureDescriptor& measure() const;
    const std::optional<TailMetadata>& metadata() const;
    bool has_derivative() const;
    double analytic_derivative(double u) const;
    const std::string& family() const;

    BernsteinFunction with_metadata(TailMetadata meta) const;

private:
    struct Data;
    std::shared_ptr<const Data> d_;

    explicit BernsteinFunction(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
    cplx measure_part(cplx z) const;
};

cplx eval_phi(const BernsteinFunction& phi, cplx z);

double phi_derivative(const BernsteinFunction& phi, double u);
double finite_difference_derivative(const BernsteinFunction& phi, double u);

struct ShapeReport {
    bool nondecreasing = true;
    bool concave = true;
    bool modulus_bound = true;   // |phi(a+i xi)| >= phi(a)
    bool lipschitz_bound = true; // |phi(a+i xi) - phi(b+i xi)| <= phi(|a-b|) - phi(0)
    bool ok() const { return nondecreasing && concave && modulus_bound && lipschitz_bound; }
};

// Spot checks of the Bernstein-function invariants on fixed sample grids.
ShapeReport check_shape(const BernsteinFunction& phi, double tol = 1e-9);

// int_0^xi arg phi(a + i w) dw
double theta_integral(const BernsteinFunction& phi, double a, double xi, double tol = 1e-10);

struct ThetaSamples {
    std::vector<double> xi;
    std::vector<double> theta; // theta_integral(phi, 1/2, xi) / xi
};

// Samples on a geometric grid over [xi_max / 2^octaves, xi_max].
ThetaSamples theta_samples(const BernsteinFunction& phi, double xi_max, int n_samples, int octaves = 2);

struct ThetaLimits {
    double lower;
    double upper;
};

ThetaLimits theta_limits(const BernsteinFunction& phi, double xi_max, int n_samples);

} // namespace ssmp
