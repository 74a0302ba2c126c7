#include "ssmp/measure.hpp"
#include "ssmp/errors.hpp"
#include "ssmp/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace ssmp {

namespace {

const double tiny_ratio = 1.0 / 1048576.0; // 2^-20
const double far_mass_target = 1e-14;
const int max_far_cells = 600;
const double resolved_mass = 1e-12;

// Pieces per cell so that the phase y * dxi stays small; cells with
// negligible mass get a single piece.
int cell_pieces(double y_top, double width, double mass)
{
    if (mass < resolved_mass)
        return 1;
    return std::max(1, int(std::ceil(std::min(y_top, 50.0) * width / 0.5)));
}

void add_cells(DiscreteDensity& out, const GaussRule& rule, double s0, double s1,
               double g0, double g1, int pieces, bool power, double a)
{
    // g is y * density(y) as a function of s = ln y; linear in s on table
    // cells, exactly c e^{-a s} on the power-law tails.
    auto g_at = [&](double s) {
        if (power)
            return g0 * std::exp(-a * (s - s0));
        return g0 + (g1 - g0) * (s - s0) / (s1 - s0);
    };
    auto emit = [&](double lo, double hi) {
        double h = hi - lo;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            double s = lo + 0.5 * h * (rule.nodes[i] + 1.0);
            double w = 0.5 * h * rule.weights[i] * g_at(s);
            if (w > 0.0) {
                out.nodes.push_back(std::exp(s));
                out.weights.push_back(w);
            }
        }
    };
    double h = (s1 - s0) / pieces;
    for (int p = 0; p < pieces; ++p) {
        double lo = s0 + p * h, hi = p + 1 == pieces ? s1 : lo + h;
        // y = 1 (s = 0) is where the Levy compensator switches off
        if (lo < 0.0 && hi > 0.0) {
            emit(lo, 0.0);
            emit(0.0, hi);
        } else {
            emit(lo, hi);
        }
    }
}

} // namespace

double TabulatedDensity::density(double y) const
{
    if (y <= 0.0)
        return 0.0;
    std::size_t n = values.size();
    if (y < y_min)
        return values.front() * std::pow(y / y_min, -1.0 - lower_exponent);
    if (y > y_max)
        return values.back() * std::pow(y / y_max, -1.0 - upper_exponent);
    double step = std::log(y_max / y_min) / double(n - 1);
    double u = std::log(y / y_min) / step;
    std::size_t j = std::min<std::size_t>(std::size_t(u), n - 2);
    double f = u - double(j);
    // linear in s for y * density(y), as in the quadrature
    double yj = y_min * std::exp(step * double(j));
    double yk = y_min * std::exp(step * double(j + 1));
    double g = (1.0 - f) * values[j] * yj + f * values[j + 1] * yk;
    return g / y;
}

void validate_density(const TabulatedDensity& d, double max_lower_exponent)
{
    require(d.values.size() >= 2, "tabulated density needs at least two values");
    require(d.y_min > 0.0 && d.y_max > d.y_min, "tabulated density needs 0 < y_min < y_max");
    for (double v : d.values)
        require(std::isfinite(v) && v >= 0.0, "tabulated density values must be finite and nonnegative");
    require(d.lower_exponent < max_lower_exponent,
            "lower tail exponent too large: the measure is not integrable at 0");
    require(d.upper_exponent > 0.0, "upper tail exponent must be positive");
}

DiscreteDensity discretize(const TabulatedDensity& d, int gauss_points)
{
    const GaussRule& rule = gauss_legendre(gauss_points);
    DiscreteDensity out;
    std::size_t n = d.values.size();
    double smin = std::log(d.y_min);
    double smax = std::log(d.y_max);
    double step = (smax - smin) / double(n - 1);

    double a0 = d.lower_exponent;
    double g_lo = d.values.front() * d.y_min;
    double tiny = d.y_min * tiny_ratio;
    out.tiny_coef = d.values.front() * std::pow(d.y_min, 1.0 + a0);
    out.tiny_exponent = a0;
    out.tiny_end = tiny;
    double cell = std::log(2.0);
    // cells from tiny to y_min, in increasing s
    for (int k = 20; k > 0; --k) {
        double s0 = smin - k * cell;
        double g0 = g_lo * std::exp(a0 * k * cell);
        add_cells(out, rule, s0, s0 + cell, g0, 0.0, 1, true, a0);
    }

    for (std::size_t j = 0; j + 1 < n; ++j) {
        double s0 = smin + step * double(j);
        double s1 = s0 + step;
        double y1 = std::exp(s1);
        double g0 = d.values[j] * std::exp(s0);
        double g1 = d.values[j + 1] * y1;
        int pieces = cell_pieces(y1, step, 0.5 * step * (g0 + g1));
        add_cells(out, rule, s0, s1, g0, g1, pieces, false, 0.0);
    }

    double a1 = d.upper_exponent;
    double g_hi = d.values.back() * d.y_max;
    double s = smax;
    double g = g_hi;
    for (int k = 0; k < max_far_cells; ++k) {
        double remaining = g / a1; // int_s^inf g(s') ds'
        if (remaining <= far_mass_target)
            break;
        int pieces = cell_pieces(std::exp(s + cell), cell, remaining);
        add_cells(out, rule, s, s + cell, g, 0.0, pieces, true, a1);
        s += cell;
        g *= std::exp(-a1 * cell);
    }
    out.dropped_mass = g / a1;
    return out;
}

cplx DiscreteDensity::tiny_laplace(cplx z) const
{
    if (tiny_coef == 0.0)
        return 0.0;
    // c sum_{n>=1} (-1)^{n+1} z^n e^{n-a} / (n! (n-a))
    double a = tiny_exponent;
    cplx zp = 1.0;
    double fact = 1.0;
    cplx sum = 0.0;
    for (int k = 1; k < 60; ++k) {
        zp *= z * tiny_end;
        fact *= k;
        cplx term = zp / (fact * (k - a));
        if (k % 2 == 0)
            term = -term;
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum))
            break;
    }
    return tiny_coef * std::pow(tiny_end, -a) * sum;
}

cplx DiscreteDensity::tiny_levy(double xi) const
{
    if (tiny_coef == 0.0)
        return 0.0;
    // -c sum_{n>=2} (i xi)^n e^{n-a} / (n! (n-a))
    double a = tiny_exponent;
    cplx w(0.0, xi * tiny_end);
    cplx zp = w;
    double fact = 1.0;
    cplx sum = 0.0;
    for (int k = 2; k < 60; ++k) {
        zp *= w;
        fact *= k;
        cplx term = zp / (fact * (k - a));
        sum -= term;
        if (std::abs(term) < 1e-18 * std::abs(sum))
            break;
    }
    return tiny_coef * std::pow(tiny_end, -a) * sum;
}

double DiscreteDensity::tiny_moment(int k) const
{
    if (tiny_coef == 0.0)
        return 0.0;
    double a = tiny_exponent;
    return tiny_coef * std::pow(tiny_end, k - a) / (k - a);
}

} // namespace ssmp
