#include "ssmp/bernstein.hpp"
#include "ssmp/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>

namespace ssmp {

struct BernsteinFunction::Data {
    double phi0 = 0.0;
    double drift = 0.0;
    MeasureDescriptor measure;
    std::optional<TailMetadata> metadata;
    std::function<double(double)> derivative;
    std::string family = "custom";
    DiscreteDensity discrete; // only for TabulatedDensity
};

namespace {

// Gamma(shift + step + step z) / Gamma(shift + step z)
cplx gamma_ratio(double shift, double step, cplx z)
{
    return std::exp(log_gamma(shift + step + step * z) - log_gamma(shift + step * z));
}

cplx density_part(const DiscreteDensity& dd, cplx z)
{
    cplx s = dd.tiny_laplace(z);
    for (std::size_t i = 0; i < dd.nodes.size(); ++i)
        s += dd.weights[i] * one_minus_exp_neg(z * dd.nodes[i]);
    return s;
}

void validate_metadata(const TailMetadata& m)
{
    if (m.rv_index)
        require(*m.rv_index > 0.0 && *m.rv_index < 1.0, "rv_index must lie in (0,1)");
    if (m.mass_m)
        require(*m.mass_m >= 0.0, "mass_m must be nonnegative");
    if (m.nu_bar_finite)
        require(m.nu_bar_at_zero >= 0.0, "nu_bar(0+) must be nonnegative");
}

} // namespace

BernsteinFunction::BernsteinFunction(double phi0, double drift, MeasureDescriptor measure,
                                     std::optional<TailMetadata> metadata,
                                     std::function<double(double)> derivative)
{
    require(std::isfinite(phi0) && phi0 >= 0.0, "phi(0) must be finite and nonnegative");
    require(std::isfinite(drift) && drift >= 0.0, "drift must be finite and nonnegative");
    auto d = std::make_shared<Data>();
    d->phi0 = phi0;
    d->drift = drift;
    d->derivative = std::move(derivative);
    if (metadata)
        validate_metadata(*metadata);
    d->metadata = std::move(metadata);

    bool has_measure = false;
    if (auto* cf = std::get_if<ClosedForm>(&measure)) {
        has_measure = true;
        switch (cf->kind) {
        case ClosedFormKind::Stable:
            require(cf->p1 > 0.0 && cf->p1 < 1.0, "stable index beta must lie in (0,1)");
            d->family = "stable";
            break;
        case ClosedFormKind::GammaRatioPlus:
            require(cf->p1 > 0.0 && cf->p1 < 1.0, "alpha_tilde must lie in (0,1)");
            d->family = "gamma-ratio-plus";
            break;
        case ClosedFormKind::GammaRatioMinus:
            require(cf->p1 > 0.0 && cf->p1 < 1.0, "alpha must lie in (0,1)");
            require(cf->p2 > 0.0, "rho must be positive");
            d->family = "gamma-ratio-minus";
            break;
        }
    } else if (auto* atoms = std::get_if<std::vector<Atom>>(&measure)) {
        for (const Atom& a : *atoms) {
            require(std::isfinite(a.location) && a.location > 0.0, "atom locations must be positive");
            require(std::isfinite(a.mass) && a.mass > 0.0, "atom masses must be positive");
        }
        has_measure = !atoms->empty();
        d->family = "compound-poisson";
    } else if (auto* td = std::get_if<TabulatedDensity>(&measure)) {
        validate_density(*td, 1.0);
        d->discrete = discretize(*td, 8);
        DiscreteDensity coarse = discretize(*td, 4);
        for (cplx z : {cplx(1.0, 0.0), cplx(1.0, 4.0)}) {
            cplx fine = density_part(d->discrete, z);
            cplx rough = density_part(coarse, z);
            if (std::abs(fine - rough) > 1e-8 * std::max(1.0, std::abs(fine)))
                fail(ErrorKind::Quadrature, "tabulated density quadrature misses its error target");
        }
        has_measure = true;
        d->family = "tabulated-density";
    }
    require(phi0 > 0.0 || drift > 0.0 || has_measure, "phi identically zero is not a Bernstein function we accept");
    if (!has_measure)
        d->family = drift > 0.0 ? (phi0 > 0.0 ? "affine" : "drift") : "constant";
    d->measure = std::move(measure);
    d_ = std::move(d);
}

BernsteinFunction BernsteinFunction::drift_only(double d)
{
    require(d > 0.0, "drift must be positive");
    TailMetadata m;
    m.nu_bar_finite = true;
    m.mass_m = 0.0;
    return BernsteinFunction(0.0, d, NoMeasure{}, m, [d](double) { return d; });
}

BernsteinFunction BernsteinFunction::affine(double d, double c)
{
    TailMetadata m;
    m.nu_bar_finite = true;
    m.mass_m = c;
    return BernsteinFunction(c, d, NoMeasure{}, m, [d](double) { return d; });
}

BernsteinFunction BernsteinFunction::stable(double beta)
{
    TailMetadata m;
    m.nu_bar_finite = false;
    if (beta > 0.0 && beta < 1.0)
        m.rv_index = beta;
    m.quasi_monotone = true;
    return BernsteinFunction(0.0, 0.0, ClosedForm{ClosedFormKind::Stable, beta, 0.0}, m,
                             [beta](double u) { return beta * std::pow(u, beta - 1.0); });
}

BernsteinFunction BernsteinFunction::gamma_ratio_plus(double at)
{
    TailMetadata m;
    m.nu_bar_finite = false;
    if (at > 0.0 && at < 1.0)
        m.rv_index = at;
    m.quasi_monotone = true;
    auto deriv = [at](double u) {
        double r = std::exp(std::lgamma(at + at * u) - std::lgamma(at * u));
        return r * at * (digamma(at + at * u) - digamma(at * u));
    };
    return BernsteinFunction(0.0, 0.0, ClosedForm{ClosedFormKind::GammaRatioPlus, at, 0.0}, m, deriv);
}

BernsteinFunction BernsteinFunction::gamma_ratio_minus(double alpha, double rho)
{
    require(alpha > 0.0 && alpha < 1.0 && rho > 0.0, "gamma-ratio-minus needs alpha in (0,1), rho > 0");
    TailMetadata m;
    m.nu_bar_finite = false;
    m.rv_index = alpha;
    m.quasi_monotone = true;
    double r0 = std::exp(std::lgamma(rho + alpha) - std::lgamma(rho));
    auto deriv = [alpha, rho](double u) {
        double r = std::exp(std::lgamma(rho + alpha + alpha * u) - std::lgamma(rho + alpha * u));
        return r * alpha * (digamma(rho + alpha + alpha * u) - digamma(rho + alpha * u));
    };
    return BernsteinFunction(r0, 0.0, ClosedForm{ClosedFormKind::GammaRatioMinus, alpha, rho}, m, deriv);
}

BernsteinFunction BernsteinFunction::compound_poisson(double phi0, double drift, std::vector<Atom> atoms)
{
    double total = 0.0;
    for (const Atom& a : atoms)
        total += a.mass;
    TailMetadata m;
    m.nu_bar_finite = true;
    m.nu_bar_at_zero = total;
    m.mass_m = phi0 + total;
    auto deriv = [drift, atoms](double u) {
        double s = drift;
        for (const Atom& a : atoms)
            s += a.mass * a.location * std::exp(-u * a.location);
        return s;
    };
    return BernsteinFunction(phi0, drift, std::move(atoms), m, deriv);
}

BernsteinFunction BernsteinFunction::tabulated(double phi0, double drift, TabulatedDensity density)
{
    validate_density(density, 1.0);
    TailMetadata m;
    double a0 = density.lower_exponent;
    if (a0 < 0.0) {
        m.nu_bar_finite = true;
        // mass of the table plus both power tails, y * density linear in log y
        double step = std::log(density.y_max / density.y_min) / double(density.values.size() - 1);
        double mass = 0.0;
        for (std::size_t j = 0; j + 1 < density.values.size(); ++j) {
            double y0 = density.y_min * std::exp(step * double(j));
            double y1 = y0 * std::exp(step);
            mass += 0.5 * step * (density.values[j] * y0 + density.values[j + 1] * y1);
        }
        mass += density.values.front() * density.y_min / (-a0);
        mass += density.values.back() * density.y_max / density.upper_exponent;
        m.nu_bar_at_zero = mass;
        m.mass_m = phi0 + mass;
    } else {
        m.nu_bar_finite = false;
        if (a0 > 0.0 && a0 < 1.0)
            m.rv_index = a0;
    }
    return BernsteinFunction(phi0, drift, std::move(density), m);
}

BernsteinFunction BernsteinFunction::with_metadata(TailMetadata meta) const
{
    validate_metadata(meta);
    auto d = std::make_shared<Data>(*d_);
    d->metadata = std::move(meta);
    return BernsteinFunction(std::shared_ptr<const Data>(std::move(d)));
}

cplx BernsteinFunction::measure_part(cplx z) const
{
    const Data& d = *d_;
    switch (d.measure.index()) {
    case 0:
        return 0.0;
    case 1: {
        const ClosedForm& cf = std::get<ClosedForm>(d.measure);
        if (z == cplx(0.0))
            return 0.0;
        switch (cf.kind) {
        case ClosedFormKind::Stable:
            return std::exp(cf.p1 * std::log(z));
        case ClosedFormKind::GammaRatioPlus:
            return gamma_ratio(0.0, cf.p1, z);
        case ClosedFormKind::GammaRatioMinus:
            return gamma_ratio(cf.p2, cf.p1, z) - gamma_ratio(cf.p2, cf.p1, 0.0);
        }
        return 0.0;
    }
    case 2: {
        cplx s = 0.0;
        for (const Atom& a : std::get<std::vector<Atom>>(d.measure))
            s += a.mass * one_minus_exp_neg(z * a.location);
        return s;
    }
    default:
        return density_part(d.discrete, z);
    }
}

cplx BernsteinFunction::operator()(cplx z) const
{
    if (!(z.real() >= 0.0))
        fail(ErrorKind::Domain, "Bernstein functions are evaluated on Re z >= 0");
    return d_->phi0 + d_->drift * z + measure_part(z);
}

cplx BernsteinFunction::log_value(cplx z) const
{
    const Data& d = *d_;
    if (d.phi0 == 0.0 && d.drift == 0.0) {
        if (const ClosedForm* cf = std::get_if<ClosedForm>(&d.measure)) {
            if (!(z.real() >= 0.0))
                fail(ErrorKind::Domain, "Bernstein functions are evaluated on Re z >= 0");
            if (cf->kind == ClosedFormKind::Stable)
                return cf->p1 * std::log(z);
        }
    }
    return std::log((*this)(z));
}

double BernsteinFunction::phi0() const { return d_->phi0; }
double BernsteinFunction::drift() const { return d_->drift; }
const MeasureDescriptor& BernsteinFunction::measure() const { return d_->measure; }
const std::optional<TailMetadata>& BernsteinFunction::metadata() const { return d_->metadata; }
bool BernsteinFunction::has_derivative() const { return static_cast<bool>(d_->derivative); }
double BernsteinFunction::analytic_derivative(double u) const { return d_->derivative(u); }
const std::string& BernsteinFunction::family() const { return d_->family; }

cplx eval_phi(const BernsteinFunction& phi, cplx z)
{
    return phi(z);
}

double finite_difference_derivative(const BernsteinFunction& phi, double u)
{
    double h = 1e-6 * std::max(1.0, u);
    if (u - h < 0.0)
        h = 0.5 * u;
    return (phi(u + h).real() - phi(u - h).real()) / (2.0 * h);
}

double phi_derivative(const BernsteinFunction& phi, double u)
{
    require(u > 0.0, "phi_derivative needs u > 0");
    if (phi.has_derivative())
        return phi.analytic_derivative(u);
    return finite_difference_derivative(phi, u);
}

ShapeReport check_shape(const BernsteinFunction& phi, double tol)
{
    ShapeReport r;
    std::vector<double> u;
    for (int k = 0; k <= 60; ++k)
        u.push_back(0.01 * std::pow(10.0, k / 15.0)); // 1e-2 .. 1e2
    std::vector<double> v;
    for (double x : u)
        v.push_back(phi(x).real());
    double scale = std::max(1.0, std::abs(v.back()));
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i] - v[i - 1] < -tol * scale)
            r.nondecreasing = false;
    // concavity on a nonuniform grid: slopes must not increase
    for (std::size_t i = 2; i < v.size(); ++i) {
        double s0 = (v[i - 1] - v[i - 2]) / (u[i - 1] - u[i - 2]);
        double s1 = (v[i] - v[i - 1]) / (u[i] - u[i - 1]);
        if (s1 - s0 > tol * std::max(1.0, std::abs(s0)))
            r.concave = false;
    }
    const double as[] = {0.25, 0.5, 1.0, 2.0};
    for (double a : as) {
        double pa = phi(a).real();
        for (int k = -20; k <= 20; ++k) {
            double xi = k * 1.7;
            cplx pz = phi(cplx(a, xi));
            if (std::abs(pz) < pa * (1.0 - tol))
                r.modulus_bound = false;
            for (double b : as) {
                double bound = phi(std::abs(a - b)).real() - phi(0.0).real();
                double diff = std::abs(pz - phi(cplx(b, xi)));
                if (diff > bound + tol * std::max(1.0, std::abs(pz)))
                    r.lipschitz_bound = false;
            }
        }
    }
    return r;
}

namespace {

double theta_segment(const BernsteinFunction& phi, double a, double w0, double w1, double tol)
{
    if (w1 <= w0)
        return 0.0;
    // step halving until adjacent arg increments are below pi/2
    int n = 16;
    for (;;) {
        double h = (w1 - w0) / n;
        double prev = std::arg(phi(cplx(a, w0)));
        bool fine = true;
        for (int j = 1; j <= n && fine; ++j) {
            double cur = std::arg(phi(cplx(a, w0 + j * h)));
            if (std::abs(cur - prev) >= pi / 2)
                fine = false;
            prev = cur;
        }
        if (fine)
            break;
        n *= 2;
        if (n > (1 << 16))
            fail(ErrorKind::Branch, "arg(phi) tracking did not resolve below pi/2 increments");
    }
    auto f = [&](double w) { return std::arg(phi(cplx(a, w))); };
    double h = (w1 - w0) / n;
    double total = 0.0;
    for (int j = 0; j < n; ++j) {
        double err = 0.0;
        double lo = w0 + j * h;
        double hi = (j + 1 == n) ? w1 : lo + h;
        double v = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, lo, hi, 12, tol, &err);
        if (!(err <= std::max(100.0 * tol * std::abs(v), 1e-9 * (hi - lo))))
            fail(ErrorKind::Quadrature, "theta integral quadrature did not converge");
        total += v;
    }
    return total;
}

} // namespace

double theta_integral(const BernsteinFunction& phi, double a, double xi, double tol)
{
    require(a > 0.0, "theta_integral needs a > 0");
    double x = std::abs(xi);
    // integrate in blocks of length 8 so oscillating factors stay resolved
    double total = 0.0;
    double w = 0.0;
    while (w < x) {
        double next = std::min(x, w + 8.0);
        total += theta_segment(phi, a, w, next, tol);
        w = next;
    }
    return total;
}

ThetaSamples theta_samples(const BernsteinFunction& phi, double xi_max, int n_samples, int octaves)
{
    require(xi_max > 0.0, "xi_max must be positive");
    require(n_samples >= 2, "need at least two theta samples");
    ThetaSamples s;
    double lo = xi_max / std::pow(2.0, octaves);
    double prev_xi = 0.0;
    double acc = 0.0;
    for (int k = 0; k < n_samples; ++k) {
        double xi = lo * std::pow(xi_max / lo, double(k) / double(n_samples - 1));
        double w = prev_xi;
        while (w < xi) {
            double next = std::min(xi, w + 8.0);
            acc += theta_segment(phi, 0.5, w, next, 1e-10);
            w = next;
        }
        prev_xi = xi;
        s.xi.push_back(xi);
        s.theta.push_back(std::clamp(acc / xi, 0.0, pi / 2));
    }
    return s;
}

ThetaLimits theta_limits(const BernsteinFunction& phi, double xi_max, int n_samples)
{
    ThetaSamples s = theta_samples(phi, xi_max, n_samples);
    auto [lo, hi] = std::minmax_element(s.theta.begin(), s.theta.end());
    return {*lo, *hi};
}

} // namespace ssmp
