#include "ssmp/exponents.hpp"
#include "ssmp/errors.hpp"

#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>

namespace ssmp {

namespace {

void add_side(JumpTable& t, const TabulatedDensity& d, double sign, std::optional<DiscreteDensity>& tiny)
{
    DiscreteDensity dd = discretize(d, 8);
    for (std::size_t i = 0; i < dd.nodes.size(); ++i) {
        t.y.push_back(sign * dd.nodes[i]);
        t.w.push_back(dd.weights[i]);
    }
    dd.nodes.clear();
    dd.weights.clear();
    tiny = std::move(dd);
}

} // namespace

LevyQuadruplet::LevyQuadruplet(double psi0, double b, double sigma2, LevyMeasure mu)
    : psi0_(psi0), b_(b), sigma2_(sigma2), mu_(std::move(mu))
{
    require(std::isfinite(psi0) && psi0 >= 0.0, "psi(0) must be nonnegative");
    require(std::isfinite(b), "drift b must be finite");
    require(std::isfinite(sigma2) && sigma2 >= 0.0, "sigma^2 must be nonnegative");
    auto t = std::make_shared<JumpTable>();
    for (const Atom& a : mu_.atoms) {
        require(std::isfinite(a.location) && a.location != 0.0, "Levy atoms must sit off the origin");
        require(std::isfinite(a.mass) && a.mass > 0.0, "Levy atom masses must be positive");
        t->y.push_back(a.location);
        t->w.push_back(a.mass);
    }
    if (mu_.positive) {
        validate_density(*mu_.positive, 2.0);
        add_side(*t, *mu_.positive, 1.0, t->pos_tiny);
    }
    if (mu_.negative) {
        validate_density(*mu_.negative, 2.0);
        add_side(*t, *mu_.negative, -1.0, t->neg_tiny);
    }
    jumps_ = std::move(t);
}

cplx LevyQuadruplet::operator()(double xi) const
{
    cplx s(psi0_ + sigma2_ * xi * xi, -b_ * xi);
    const JumpTable& t = *jumps_;
    for (std::size_t i = 0; i < t.y.size(); ++i) {
        double y = t.y[i];
        if (std::abs(y) <= 1.0)
            s += t.w[i] * levy_kernel(xi * y);
        else
            s += t.w[i] * (1.0 - std::exp(cplx(0.0, xi * y)));
    }
    if (t.pos_tiny)
        s += t.pos_tiny->tiny_levy(xi);
    if (t.neg_tiny)
        s += t.neg_tiny->tiny_levy(-xi);
    return s;
}

LevyQuadruplet LevyQuadruplet::conjugate() const
{
    LevyMeasure m;
    for (const Atom& a : mu_.atoms)
        m.atoms.push_back({-a.location, a.mass});
    m.positive = mu_.negative;
    m.negative = mu_.positive;
    return LevyQuadruplet(psi0_, -b_, sigma2_, std::move(m));
}

bool LevyQuadruplet::large_jumps_integrable() const
{
    auto finite_first_moment = [](const std::optional<TabulatedDensity>& d) {
        return !d || d->upper_exponent > 1.0;
    };
    return finite_first_moment(mu_.positive) && finite_first_moment(mu_.negative);
}

double LevyQuadruplet::small_jump_variance(double eps) const
{
    const JumpTable& t = *jumps_;
    double v = 0.0;
    for (std::size_t i = 0; i < t.y.size(); ++i)
        if (std::abs(t.y[i]) < eps)
            v += t.w[i] * t.y[i] * t.y[i];
    if (t.pos_tiny)
        v += t.pos_tiny->tiny_moment(2);
    if (t.neg_tiny)
        v += t.neg_tiny->tiny_moment(2);
    return v;
}

double LevyQuadruplet::compensator(double eps) const
{
    const JumpTable& t = *jumps_;
    double c = 0.0;
    for (std::size_t i = 0; i < t.y.size(); ++i) {
        double a = std::abs(t.y[i]);
        if (a >= eps && a <= 1.0)
            c += t.w[i] * t.y[i];
    }
    return c;
}

cplx Exponent::operator()(double xi) const
{
    if (pair_)
        return pair_->psi(xi);
    return (*quad_)(xi);
}

cplx eval_psi(const Exponent& e, double xi)
{
    return e(xi);
}

Exponent conjugate(const Exponent& e)
{
    if (e.quadruplet() && e.pair())
        return Exponent(e.quadruplet()->conjugate(), e.pair()->conjugate());
    if (e.pair())
        return Exponent(e.pair()->conjugate());
    return Exponent(e.quadruplet()->conjugate());
}

double representation_mismatch(const Exponent& e, const std::vector<double>& xi)
{
    require(e.quadruplet() && e.pair(), "mismatch needs both representations");
    double worst = 0.0;
    for (double x : xi) {
        cplx p = e.pair()->psi(x);
        cplx q = (*e.quadruplet())(x);
        worst = std::max(worst, std::abs(p - q) / (1.0 + std::abs(p)));
    }
    return worst;
}

std::optional<WienerHopfPair> factorize_diffusion(const LevyQuadruplet& q)
{
    const LevyMeasure& m = q.mu();
    if (q.psi0() != 0.0 || !m.atoms.empty() || m.positive || m.negative)
        return std::nullopt;
    double s = q.sigma2(), b = q.b();
    if (s == 0.0 && b == 0.0)
        return std::nullopt;
    BernsteinFunction id = BernsteinFunction::drift_only(1.0);
    if (b >= 0.0)
        return WienerHopfPair{id, BernsteinFunction::affine(s, b)};
    return WienerHopfPair{BernsteinFunction::affine(s, -b), id};
}

NonLatticeReport weak_nonlattice_check(const BernsteinFunction& phi, double xi_max)
{
    require(xi_max > 10.0, "weak_nonlattice_check needs xi_max > 10");
    const int n = 400;
    std::vector<double> xs(n), lx(n), ly(n);
    for (int k = 0; k < n; ++k) {
        xs[k] = std::pow(xi_max, double(k) / (n - 1));
        lx[k] = std::log(xs[k]);
        ly[k] = std::log(std::abs(phi(cplx(0.0, xs[k]))));
    }
    // least-squares slope over the upper half of the log range
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (int k = n / 2; k < n; ++k) {
        if (!std::isfinite(ly[k]))
            continue;
        sx += lx[k];
        sy += ly[k];
        sxx += lx[k] * lx[k];
        sxy += lx[k] * ly[k];
        ++m;
    }
    double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    double kappa = -slope;

    auto scaled = [&](double x) { return std::abs(phi(cplx(0.0, x))) * std::pow(x, kappa); };
    std::vector<double> v(n);
    for (int k = 0; k < n; ++k)
        v[k] = scaled(xs[k]);
    std::vector<double> sorted = v;
    std::nth_element(sorted.begin(), sorted.begin() + n / 2, sorted.end());
    double median = sorted[n / 2];
    bool ok = std::isfinite(kappa);
    for (int k = 1; k + 1 < n && ok; ++k) {
        if (!(v[k] <= v[k - 1] && v[k] <= v[k + 1]))
            continue;
        auto r = boost::math::tools::brent_find_minima(scaled, xs[k - 1], xs[k + 1], 40);
        if (r.second < 1e-6 * median)
            ok = false;
    }
    return {kappa, ok};
}

} // namespace ssmp
