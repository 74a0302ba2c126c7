#include "ssmp/transform.hpp"
#include "ssmp/errors.hpp"
#include "ssmp/fft.hpp"

#include <algorithm>
#include <cmath>

namespace ssmp {

namespace {

const double inv_sqrt_2pi = 0.39894228040143267794;

bool is_power_of_two(int n)
{
    return n > 0 && (n & (n - 1)) == 0;
}

void require_same(const GridSpec& a, const GridSpec& b)
{
    require(a.n == b.n && a.x_min == b.x_min && a.x_max == b.x_max, "grid mismatch");
}

SpectrumLine forward(const GridFunction& f, bool weighted)
{
    const GridSpec& g = f.spec;
    int n = g.n;
    require(int(f.values.size()) == n, "grid function length does not match its grid");
    std::vector<cplx> a(n);
    for (int j = 0; j < n; ++j) {
        double w = weighted ? std::exp(0.5 * g.x(j)) : 1.0;
        a[j] = (j % 2 ? -w : w) * f.values[j];
    }
    fft_forward(a);
    double c = g.dx() * inv_sqrt_2pi;
    for (int k = 0; k < n; ++k)
        a[k] *= c * std::exp(cplx(0.0, -g.xi(k) * g.x_min));
    return {g, std::move(a)};
}

GridFunction backward(const SpectrumLine& s, bool weighted)
{
    const GridSpec& g = s.spec;
    int n = g.n;
    require(int(s.values.size()) == n, "spectrum length does not match its grid");
    std::vector<cplx> a(n);
    for (int k = 0; k < n; ++k)
        a[k] = s.values[k] * std::exp(cplx(0.0, g.xi(k) * g.x_min));
    fft_backward(a);
    double c = g.dxi() * inv_sqrt_2pi;
    for (int j = 0; j < n; ++j) {
        double w = weighted ? std::exp(-0.5 * g.x(j)) : 1.0;
        a[j] *= (j % 2 ? -c : c) * w;
    }
    return {g, std::move(a)};
}

} // namespace

void validate_grid(const GridSpec& spec)
{
    require(std::isfinite(spec.x_min) && std::isfinite(spec.x_max) && spec.x_min < spec.x_max,
            "grid needs x_min < x_max");
    require(is_power_of_two(spec.n) && spec.n >= 256, "grid size must be a power of two >= 256");
}

GridFunction sample(const GridSpec& spec, const std::function<cplx(double)>& f)
{
    GridFunction out{spec, std::vector<cplx>(spec.n)};
    for (int j = 0; j < spec.n; ++j)
        out.values[j] = f(spec.x(j));
    return out;
}

double h_fixture(double eps, double beta, double x)
{
    return std::exp(-(0.5 + eps) * x - beta * std::exp(-x));
}

GridFunction h_fixture(const GridSpec& spec, double eps, double beta)
{
    return sample(spec, [=](double x) { return cplx(h_fixture(eps, beta, x)); });
}

cplx h_fixture_transform(double eps, double beta, double xi)
{
    cplx e(eps, xi);
    return std::exp(-e * std::log(beta) + log_gamma(e)) * inv_sqrt_2pi;
}

GridFunction gaussian(const GridSpec& spec, double center)
{
    return sample(spec, [=](double x) { return cplx(std::exp(-(x - center) * (x - center))); });
}

double l2e_norm(const GridFunction& f)
{
    return std::sqrt(l2e_inner(f, f).real());
}

cplx l2e_inner(const GridFunction& f, const GridFunction& g)
{
    require_same(f.spec, g.spec);
    cplx s = 0.0;
    for (int j = 0; j < f.spec.n; ++j)
        s += f.values[j] * std::conj(g.values[j]) * std::exp(f.spec.x(j));
    return s * f.spec.dx();
}

double spectrum_norm(const SpectrumLine& s)
{
    double t = 0.0;
    for (const cplx& v : s.values)
        t += std::norm(v);
    return std::sqrt(t * s.spec.dxi());
}

SpectrumLine shifted_fft(const GridFunction& f) { return forward(f, true); }
GridFunction inverse_shifted_fft(const SpectrumLine& s) { return backward(s, true); }
SpectrumLine plain_fft(const GridFunction& f) { return forward(f, false); }
GridFunction plain_inverse_fft(const SpectrumLine& s) { return backward(s, false); }

cplx interpolate(const GridFunction& f, double x)
{
    const GridSpec& g = f.spec;
    double u = (x - g.x_min) / g.dx();
    if (u < 0.0 || u > g.n - 1)
        return 0.0;
    int j = std::clamp(int(std::floor(u)) - 1, 0, g.n - 4);
    double t = u - j;
    // Lagrange weights on nodes j..j+3 at offset t
    double w0 = -(t - 1) * (t - 2) * (t - 3) / 6.0;
    double w1 = t * (t - 2) * (t - 3) / 2.0;
    double w2 = -t * (t - 1) * (t - 3) / 2.0;
    double w3 = t * (t - 1) * (t - 2) / 6.0;
    return w0 * f.values[j] + w1 * f.values[j + 1] + w2 * f.values[j + 2] + w3 * f.values[j + 3];
}

HMultiplier::HMultiplier(const WienerHopfPair& pair, double tol)
    : plus_(pair.plus, tol), minus_(pair.minus, tol)
{
}

cplx HMultiplier::log_value(cplx z) const
{
    const cplx i(0.0, 1.0);
    return plus_.log_value(-i * z) - minus_.log_value(1.0 + i * z);
}

MultiplierLine multiplier_h(const WienerHopfPair& pair, const GridSpec& spec, double tol)
{
    validate_grid(spec);
    HMultiplier h(pair, tol);
    MultiplierLine m{spec, std::vector<cplx>(spec.n), MultiplierKind::H, true};
    int half = spec.n / 2;
    for (int k = half; k < spec.n; ++k) {
        m.values[k] = h(cplx(spec.xi(k), 0.5));
        if (k > half)
            m.values[2 * half - k] = std::conj(m.values[k]);
    }
    m.values[0] = h(cplx(spec.xi(0), 0.5));
    for (const cplx& v : m.values)
        if (!(std::abs(v) > 0.0))
            m.zero_free = false;
    return m;
}

MultiplierLine multiplier_lambda(const WienerHopfPair& pair, const GridSpec& spec, double tol)
{
    MultiplierLine m = multiplier_h(pair, spec, tol);
    m.kind = MultiplierKind::Lambda;
    for (int k = 0; k < spec.n; ++k) {
        double phase = 2.0 * log_gamma(cplx(0.5, spec.xi(k))).imag();
        m.values[k] *= std::exp(cplx(0.0, phase));
    }
    return m;
}

MultiplierLine multiplier_custom(const GridSpec& spec, const std::function<cplx(double)>& fn)
{
    validate_grid(spec);
    MultiplierLine m{spec, std::vector<cplx>(spec.n), MultiplierKind::Custom, true};
    for (int k = 0; k < spec.n; ++k) {
        m.values[k] = fn(spec.xi(k));
        if (!(std::abs(m.values[k]) > 0.0))
            m.zero_free = false;
    }
    return m;
}

double tail_fraction(const SpectrumLine& s)
{
    double cut = 0.5 * s.spec.nyquist();
    double all = 0.0, tail = 0.0;
    for (int k = 0; k < s.spec.n; ++k) {
        double v = std::norm(s.values[k]);
        all += v;
        if (std::abs(s.spec.xi(k)) > cut)
            tail += v;
    }
    return all > 0.0 ? tail / all : 0.0;
}

GridFunction apply_multiplier(const MultiplierLine& m, const GridFunction& f, bool invert,
                              double noise_floor, ApplyDiagnostics* diag, double tail_threshold)
{
    require_same(m.spec, f.spec);
    if (invert && !m.zero_free)
        fail(ErrorKind::Domain, "cannot invert a multiplier with zeros");
    SpectrumLine s = shifted_fft(f);
    if (noise_floor > 0.0) {
        double peak = 0.0;
        for (const cplx& v : s.values)
            peak = std::max(peak, std::abs(v));
        for (cplx& v : s.values)
            if (std::abs(v) < noise_floor * peak)
                v = 0.0;
    }
    for (int k = 0; k < m.spec.n; ++k)
        s.values[k] = invert ? s.values[k] / m.values[k] : s.values[k] * m.values[k];
    if (diag) {
        diag->tail_fraction = tail_fraction(s);
        diag->domain_warning = diag->tail_fraction > tail_threshold;
    }
    return inverse_shifted_fft(s);
}

const char* domain_verdict_name(DomainVerdict v)
{
    switch (v) {
    case DomainVerdict::Inside: return "inside";
    case DomainVerdict::Borderline: return "borderline";
    case DomainVerdict::Outside: return "outside";
    }
    return "unknown";
}

DomainReport domain_check(const MultiplierLine& m, const GridFunction& f, bool invert, double threshold)
{
    require_same(m.spec, f.spec);
    SpectrumLine s = shifted_fft(f);
    for (int k = 0; k < m.spec.n; ++k) {
        cplx mk = m.values[k];
        if (invert)
            s.values[k] = std::abs(mk) > 0.0 ? s.values[k] / mk : cplx(INFINITY, 0.0);
        else
            s.values[k] *= mk;
    }
    DomainReport r;
    double top = m.spec.nyquist();
    r.band_lower.push_back(0.0);
    for (double b = 1.0; b < top; b *= 2.0)
        r.band_lower.push_back(b);
    r.band_mass.assign(r.band_lower.size(), 0.0);
    std::vector<int> count(r.band_lower.size(), 0);
    for (int k = 0; k < m.spec.n; ++k) {
        double a = std::abs(m.spec.xi(k));
        std::size_t band = a < 1.0 ? 0 : std::min(r.band_lower.size() - 1, std::size_t(std::floor(std::log2(a))) + 1);
        r.band_mass[band] += std::norm(s.values[k]) * m.spec.dxi();
        ++count[band];
    }
    r.tail_fraction = tail_fraction(s);
    if (!std::isfinite(r.tail_fraction))
        r.tail_fraction = 1.0;
    if (r.tail_fraction <= threshold) {
        r.verdict = DomainVerdict::Inside;
    } else {
        // compare mass per sample, the top band is usually cut by the Nyquist limit
        std::size_t nb = r.band_mass.size();
        auto density = [&](std::size_t b) { return r.band_mass[b] / std::max(1, count[b]); };
        bool rising = nb >= 3 && density(nb - 1) >= density(nb - 2) && density(nb - 2) >= density(nb - 3);
        r.verdict = rising ? DomainVerdict::Outside : DomainVerdict::Borderline;
    }
    return r;
}

} // namespace ssmp
