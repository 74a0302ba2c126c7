#include "ssmp/bernstein_gamma.hpp"
#include "ssmp/errors.hpp"
#include "ssmp/quadrature.hpp"

#include <cmath>

namespace ssmp {

namespace {

const int cauchy_points = 32;

// Taylor data of log phi around c on a circle of radius r:
// out[m] = m-th derivative, m = 0..max.
template <class F, std::size_t N>
void cauchy_derivatives(F&& ell, cplx c, double r, std::array<cplx, N>& out)
{
    std::array<cplx, cauchy_points> vals;
    for (int j = 0; j < cauchy_points; ++j) {
        double th = 2.0 * pi * j / cauchy_points;
        vals[j] = ell(c + r * cplx(std::cos(th), std::sin(th)));
    }
    double fact = 1.0;
    for (std::size_t m = 0; m < N; ++m) {
        if (m > 0)
            fact *= double(m);
        cplx s = 0.0;
        for (int j = 0; j < cauchy_points; ++j) {
            double th = -2.0 * pi * double(m * j % cauchy_points) / cauchy_points;
            s += vals[j] * cplx(std::cos(th), std::sin(th));
        }
        out[m] = s * fact / (cauchy_points * std::pow(r, double(m)));
    }
}

double factorial(int n)
{
    double f = 1.0;
    for (int k = 2; k <= n; ++k)
        f *= k;
    return f;
}

} // namespace

BernsteinGamma::BernsteinGamma(BernsteinFunction phi, double tol)
    : phi_(std::move(phi)), tol_(tol)
{
    require(tol > 0.0, "tolerance must be positive");
    auto ell = [this](cplx w) { return phi_.log_value(w); };
    double running = 0.0;
    int k = 1;
    for (int K = 16, i = 0; i < ladder_size; ++i, K *= 2) {
        for (; k < K; ++k)
            running += phi_.log_value(double(k)).real();
        Level lv;
        lv.K = K;
        lv.sum_log = running;
        std::array<cplx, max_order + 1> d;
        cauchy_derivatives(ell, cplx(K), 0.5 * K, d);
        for (int m = 0; m <= max_order; ++m)
            lv.derivs[m] = d[m].real();
        lv.derivs[0] = phi_.log_value(double(K)).real();
        levels_.push_back(lv);
    }

    // gamma_phi = lim (sum_{k<=n} phi'(k)/phi(k) - log phi(n)), tail by Euler-Maclaurin
    const Level& lv = levels_[2];
    double s = 0.0;
    for (int j = 1; j < lv.K; ++j)
        s += phi_derivative(phi_, j) / phi_(double(j)).real();
    s -= lv.derivs[0];
    s += 0.5 * lv.derivs[1];
    auto b = bernoulli_even();
    for (int j = 1; j <= 6; ++j)
        s -= b[j - 1] / factorial(2 * j) * lv.derivs[2 * j];
    gamma_phi_ = s;
}

const BernsteinGamma::Level& BernsteinGamma::level_for(int K) const
{
    for (const Level& lv : levels_)
        if (lv.K == K)
            return lv;
    fail(ErrorKind::Validation, "truncation must be one of 16, 32, ..., 1024");
}

int BernsteinGamma::truncation(cplx z) const
{
    double want = std::sqrt(16.0 * std::abs(z));
    int K = 16;
    while (K < want && K < 1024)
        K *= 2;
    return K;
}

cplx BernsteinGamma::log_value_fixed(cplx z, int K, double* last_term) const
{
    if (!(z.real() >= 0.0))
        fail(ErrorKind::Domain, "W_phi is evaluated on Re z >= 0");
    const Level& lv = level_for(K);
    cplx pz = phi_(z);
    if (pz == cplx(0.0))
        fail(ErrorKind::Domain, "phi vanishes at the requested boundary point");
    cplx out = -phi_.log_value(z) + lv.sum_log;
    for (int k = 1; k < K; ++k)
        out -= phi_.log_value(double(k) + z);

    // int_K^{K+z} log phi(w) dw, Gauss-Legendre on pieces of length <= K
    const GaussRule& g = gauss_legendre(16);
    int pieces = std::max(1, int(std::ceil(std::abs(z) / K)));
    cplx seg = 0.0;
    for (int p = 0; p < pieces; ++p) {
        cplx a = double(K) + z * (double(p) / pieces);
        cplx h = z / double(pieces);
        cplx part = 0.0;
        for (std::size_t i = 0; i < g.nodes.size(); ++i)
            part += g.weights[i] * phi_.log_value(a + 0.5 * h * (g.nodes[i] + 1.0));
        seg += 0.5 * h * part;
    }
    out += seg;

    std::array<cplx, max_order> dz;
    auto ell = [this](cplx w) { return phi_.log_value(w); };
    cauchy_derivatives(ell, double(K) + z, 0.5 * K, dz);
    out += 0.5 * (lv.derivs[0] - dz[0]);
    auto b = bernoulli_even();
    double last = 0.0;
    for (int j = 1; j <= 6; ++j) {
        cplx hd = lv.derivs[2 * j - 1] - dz[2 * j - 1];
        cplx term = b[j - 1] / factorial(2 * j) * hd;
        out -= term;
        last = std::abs(term);
    }
    if (last_term)
        *last_term = last;
    return out;
}

cplx BernsteinGamma::log_value(cplx z) const
{
    for (int K = truncation(z); K <= 1024; K *= 2) {
        double last = 0.0;
        cplx v = log_value_fixed(z, K, &last);
        if (last <= tol_)
            return v;
    }
    fail(ErrorKind::Convergence, "Bernstein-gamma truncation ladder exhausted");
}

cplx bernstein_gamma(const BernsteinGamma& ev, cplx z)
{
    return ev(z);
}

double asymptotic_magnitude(const BernsteinGamma& ev, double a, double xi)
{
    require(a > 0.0, "asymptotic_magnitude needs a > 0");
    const BernsteinFunction& phi = ev.phi();
    double pa = phi(a).real();
    double wa = ev(a).real();
    double mod = std::abs(phi(cplx(a, xi)));
    return std::sqrt(pa) * wa / std::sqrt(mod) * std::exp(-theta_integral(phi, a, std::abs(xi)));
}

double asymptotic_power_law(const BernsteinGamma& ev, double a, double xi)
{
    const BernsteinFunction& phi = ev.phi();
    const auto& meta = phi.metadata();
    if (!meta || !meta->mass_m || !(phi.drift() > 0.0))
        fail(ErrorKind::Metadata, "power-law form needs mass_m metadata and a positive drift");
    double pa = phi(a).real();
    double wa = ev(a).real();
    double ax = std::abs(xi);
    return std::sqrt(pa) * wa * std::exp(-pi * ax / 2) * std::pow(ax, a + *meta->mass_m / phi.drift() - 0.5);
}

} // namespace ssmp
