#include "ssmp/spectrum.hpp"
#include "ssmp/errors.hpp"

#include <algorithm>
#include <cmath>

namespace ssmp {

namespace {

const double l2_slope = -0.6;
const double guard_drop = 10.0;

struct BandStats {
    std::vector<double> center;
    std::vector<double> rms;
    std::vector<double> max;
};

// Dyadic bands |xi| in [2^j, 2^{j+1}), j >= 0, that lie fully below Nyquist.
BandStats bands(const MultiplierLine& m, bool inverse)
{
    BandStats b;
    double top = m.spec.nyquist();
    for (double lo = 1.0; 2.0 * lo <= top; lo *= 2.0) {
        double sum = 0.0, mx = 0.0;
        int count = 0;
        for (int k = 0; k < m.spec.n; ++k) {
            double a = std::abs(m.spec.xi(k));
            if (a < lo || a >= 2.0 * lo)
                continue;
            double v = std::abs(m.values[k]);
            if (inverse)
                v = v > 0.0 ? 1.0 / v : INFINITY;
            sum += v * v;
            mx = std::max(mx, v);
            ++count;
        }
        if (count == 0)
            continue;
        b.center.push_back(lo * std::sqrt(2.0));
        b.rms.push_back(std::sqrt(sum / count));
        b.max.push_back(mx);
    }
    return b;
}

double upper_slope(const BandStats& b)
{
    // fit over the top three bands
    std::size_t n = b.center.size();
    std::size_t first = n > 3 ? n - 3 : 0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (std::size_t i = first; i < n; ++i) {
        double x = std::log(b.center[i]);
        double y = std::log(std::max(b.rms[i], 1e-300));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++m;
    }
    if (m < 2)
        return 0.0;
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

bool bounded(const BandStats& b)
{
    if (b.max.empty())
        return false;
    std::vector<double> s = b.max;
    std::nth_element(s.begin(), s.begin() + s.size() / 2, s.end());
    double median = s[s.size() / 2];
    return std::isfinite(b.max.back()) && b.max.back() <= 2.0 * median;
}

double l2_mass(const MultiplierLine& m, bool inverse)
{
    double t = 0.0;
    for (const cplx& v : m.values) {
        double a = std::abs(v);
        t += inverse ? (a > 0.0 ? 1.0 / (a * a) : INFINITY) : a * a;
    }
    return t * m.spec.dxi();
}

double theta_error(const ThetaSamples& s)
{
    std::size_t n = s.theta.size();
    return 0.5 * std::abs(s.theta[n - 1] - s.theta[n - 2]);
}

} // namespace

const char* verdict_name(Verdict v)
{
    switch (v) {
    case Verdict::Point: return "Point";
    case Verdict::Residual: return "Residual";
    case Verdict::Continuous: return "Continuous";
    case Verdict::ApproximateOnly: return "ApproximateOnly";
    case Verdict::Inconclusive: return "Inconclusive";
    }
    return "Unknown";
}

std::optional<Verdict> table_rule(const FactorTail& plus, const FactorTail& minus, std::string* rule)
{
    auto rv_qm = [](const TailMetadata& m) { return m.rv_index && m.quasi_monotone && *m.quasi_monotone; };
    auto one_side = [&](const FactorTail& p, const FactorTail& q) -> std::optional<std::string> {
        if (p.drift == 0.0 && q.drift == 0.0 && rv_qm(p.meta) && rv_qm(q.meta) && *q.meta.rv_index < *p.meta.rv_index)
            return "rv-jumps-both";
        if (p.drift > 0.0 && q.drift == 0.0 && rv_qm(q.meta))
            return "drift-plus-rv-minus";
        if (p.drift > 0.0 && q.drift == 0.0 && p.meta.nu_bar_finite)
            return "drift-plus-finite-jumps";
        if (p.drift > 0.0 && q.drift > 0.0 && p.meta.nu_bar_finite && !q.meta.nu_bar_finite)
            return "drifts-finite-plus-infinite-minus";
        return std::nullopt;
    };
    if (auto r = one_side(plus, minus)) {
        if (rule)
            *rule = *r;
        return Verdict::Point;
    }
    if (auto r = one_side(minus, plus)) {
        if (rule)
            *rule = *r + "-mirror";
        return Verdict::Residual;
    }
    return std::nullopt;
}

SpectrumReport classify(const WienerHopfPair& pair, const GridSpec& spec, const ClassifyOptions& opt)
{
    return classify(pair, multiplier_h(pair, spec), opt);
}

SpectrumReport classify(const WienerHopfPair& pair, const MultiplierLine& m, const ClassifyOptions& opt)
{
    require(opt.xi_max > 0.0, "xi_max must be positive");
    require(opt.theta_samples >= 2, "need at least two theta samples");
    SpectrumReport r;
    r.evidence_grid = m.spec;

    ThetaSamples tp = theta_samples(pair.plus, opt.xi_max, opt.theta_samples);
    ThetaSamples tm = theta_samples(pair.minus, opt.xi_max, opt.theta_samples);
    r.theta_plus = {*std::min_element(tp.theta.begin(), tp.theta.end()),
                    *std::max_element(tp.theta.begin(), tp.theta.end())};
    r.theta_minus = {*std::min_element(tm.theta.begin(), tm.theta.end()),
                     *std::max_element(tm.theta.begin(), tm.theta.end())};
    r.theta_plus_err = theta_error(tp);
    r.theta_minus_err = theta_error(tm);

    BandStats bm = bands(m, false);
    BandStats bi = bands(m, true);
    r.slope_m = upper_slope(bm);
    r.l2_mass_m = l2_mass(m, false);
    r.l2_mass_inv = l2_mass(m, true);
    r.l2_m_finite = r.slope_m < l2_slope;
    r.l2_inv_finite = -r.slope_m < l2_slope;
    r.bounded_above = bounded(bm);
    r.bounded_below = bounded(bi);

    std::optional<Verdict> table;
    if (pair.plus.metadata() && pair.minus.metadata()) {
        std::string name;
        table = table_rule({*pair.plus.metadata(), pair.plus.drift()},
                           {*pair.minus.metadata(), pair.minus.drift()}, &name);
        if (table)
            r.table_rule_fired = name;
    }

    // Theta branch, with a direct check that |m| really drops by a factor 10
    // between xi_max/4 and xi_max.
    HMultiplier h(pair);
    double err = r.theta_plus_err + r.theta_minus_err;
    auto drop = [&](bool inverse) {
        double a = std::abs(h(cplx(opt.xi_max / 4, 0.5)));
        double b = std::abs(h(cplx(opt.xi_max, 0.5)));
        return inverse ? a / b : b / a;
    };
    if (r.theta_plus.lower - r.theta_minus.upper > err && drop(false) <= 1.0 / guard_drop &&
        weak_nonlattice_check(pair.plus, opt.xi_max).ok) {
        r.verdict = Verdict::Point;
        r.branch = "theta";
        r.l2_m_finite = true;
        return r;
    }
    if (r.theta_minus.lower - r.theta_plus.upper > err && drop(true) <= 1.0 / guard_drop &&
        weak_nonlattice_check(pair.minus, opt.xi_max).ok) {
        r.verdict = Verdict::Residual;
        r.branch = "theta";
        r.l2_inv_finite = true;
        return r;
    }
    if (table) {
        r.verdict = *table;
        r.branch = "table";
        if (*table == Verdict::Point)
            r.l2_m_finite = true;
        else
            r.l2_inv_finite = true;
        return r;
    }

    r.branch = "bands";
    if (r.l2_m_finite)
        r.verdict = Verdict::Point;
    else if (r.l2_inv_finite)
        r.verdict = Verdict::Residual;
    else if (r.bounded_above && r.bounded_below)
        r.verdict = Verdict::Continuous;
    else if (r.bounded_above || r.bounded_below)
        r.verdict = Verdict::ApproximateOnly;
    else {
        r.verdict = Verdict::Inconclusive;
        r.branch = "none";
    }
    return r;
}

std::vector<double> spectrum_values(double t, const std::vector<double>& y)
{
    require(t >= 0.0, "t must be nonnegative");
    std::vector<double> out;
    out.reserve(y.size());
    for (double v : y)
        out.push_back(std::exp(-t * std::exp(-v)));
    return out;
}

} // namespace ssmp
