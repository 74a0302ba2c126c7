#include "ssmp/semigroup.hpp"
#include "ssmp/errors.hpp"

#include <algorithm>
#include <cmath>

namespace ssmp {

namespace {

void check_generator_condition(const LevyQuadruplet& q)
{
    if (!q.large_jumps_integrable() && !(q.psi0() > 0.0))
        fail(ErrorKind::Condition, "generator needs int_{|y|>1}|y| mu(dy) < infinity or a positive killing rate");
}

cplx jump_part(const LevyQuadruplet& q, const std::function<cplx(double)>& f, double x, cplx f0, cplx d1, cplx d2)
{
    const JumpTable& t = q.jumps();
    cplx s = 0.0;
    for (std::size_t i = 0; i < t.y.size(); ++i) {
        double y = t.y[i];
        cplx v = f(x + y) - f0;
        if (std::abs(y) <= 1.0)
            v -= y * d1;
        s += t.w[i] * v;
    }
    // second-order Taylor term for the jumps below the discretized range
    double tiny = 0.0;
    if (t.pos_tiny)
        tiny += t.pos_tiny->tiny_moment(2);
    if (t.neg_tiny)
        tiny += t.neg_tiny->tiny_moment(2);
    return s + 0.5 * tiny * d2;
}

// Zeroes samples whose L^2(e)-weighted size e^{x/2}|f| is below floor times
// the largest weighted sample.
GridFunction drop_weighted_noise(GridFunction f, double floor)
{
    double peak = 0.0;
    for (int j = 0; j < f.spec.n; ++j)
        peak = std::max(peak, std::abs(f.values[j]) * std::exp(0.5 * f.spec.x(j)));
    for (int j = 0; j < f.spec.n; ++j)
        if (std::abs(f.values[j]) * std::exp(0.5 * f.spec.x(j)) < floor * peak)
            f.values[j] = 0.0;
    return f;
}

} // namespace

EvolutionPlan make_plan(const WienerHopfPair& pair, const GridSpec& spec, double tol)
{
    EvolutionPlan p{pair, spec, multiplier_h(pair, spec, tol), false};
    p.inverse_ok = p.m.zero_free;
    return p;
}

GridFunction mult_semigroup(double t, const GridFunction& f)
{
    require(t >= 0.0, "t must be nonnegative");
    GridFunction out = f;
    for (int j = 0; j < f.spec.n; ++j)
        out.values[j] *= std::exp(-t * std::exp(-f.spec.x(j)));
    return out;
}

GridFunction evolve(const EvolutionPlan& plan, double t, const GridFunction& f,
                    const EvolveOptions& opt, EvolveDiagnostics* diag)
{
    require(t >= 0.0, "t must be nonnegative");
    if (!plan.inverse_ok)
        fail(ErrorKind::Domain, "H multiplier has zeros; H^{-1} is unavailable");
    ApplyDiagnostics inv;
    GridFunction g = apply_multiplier(plan.m, f, true, opt.noise_floor, &inv, opt.tail_threshold);
    DomainReport gate = domain_check(multiplier_custom(plan.spec, [](double) { return cplx(1.0); }), g, false,
                                     opt.tail_threshold);
    if (gate.verdict == DomainVerdict::Outside && !opt.force)
        fail(ErrorKind::Domain, "input is outside the discretized domain of H^{-1} (use force to override)");
    g = mult_semigroup(t, g);
    ApplyDiagnostics fwd;
    GridFunction out = apply_multiplier(plan.m, g, false, opt.noise_floor, &fwd, opt.tail_threshold);
    if (diag) {
        diag->gate = gate;
        diag->output_tail = fwd.tail_fraction;
        diag->domain_warning = gate.verdict != DomainVerdict::Inside || fwd.domain_warning;
    }
    return out;
}

double round_trip_error(const EvolutionPlan& plan, const GridFunction& f, const EvolveOptions& opt)
{
    GridFunction g = apply_multiplier(plan.m, f, true, opt.noise_floor);
    GridFunction back = apply_multiplier(plan.m, g, false, opt.noise_floor);
    GridFunction diff = back;
    for (int j = 0; j < f.spec.n; ++j)
        diff.values[j] -= f.values[j];
    double nf = l2e_norm(f);
    return nf > 0.0 ? l2e_norm(diff) / nf : l2e_norm(diff);
}

GridFunction generator_pdo(const std::function<cplx(double)>& psi, const GridFunction& f, GeneratorDiagnostics* diag,
                           double noise_floor)
{
    SpectrumLine s = plain_fft(f);
    double peak = 0.0;
    for (const cplx& v : s.values)
        peak = std::max(peak, std::abs(v));
    for (int k = 0; k < f.spec.n; ++k) {
        if (std::abs(s.values[k]) < noise_floor * peak)
            s.values[k] = 0.0;
        else
            s.values[k] *= psi(f.spec.xi(k));
    }
    if (diag) {
        diag->tail_fraction = tail_fraction(s);
        diag->domain_warning = diag->tail_fraction > 1e-6;
    }
    GridFunction out = plain_inverse_fft(s);
    for (int j = 0; j < f.spec.n; ++j)
        out.values[j] *= -std::exp(-f.spec.x(j));
    return out;
}

GridFunction generator_pdo(const Exponent& e, const GridFunction& f, GeneratorDiagnostics* diag, double noise_floor)
{
    return generator_pdo([&](double xi) { return e(xi); }, f, diag, noise_floor);
}

cplx generator_ido_at(const LevyQuadruplet& q, const std::function<cplx(double)>& f, double x)
{
    const double h = 1e-3;
    cplx fm2 = f(x - 2 * h), fm1 = f(x - h), f0 = f(x), fp1 = f(x + h), fp2 = f(x + 2 * h);
    cplx d1 = (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * h);
    cplx d2 = (-fm2 + 16.0 * fm1 - 30.0 * f0 + 16.0 * fp1 - fp2) / (12.0 * h * h);
    cplx v = q.sigma2() * d2 + q.b() * d1 - q.psi0() * f0 + jump_part(q, f, x, f0, d1, d2);
    return std::exp(-x) * v;
}

GridFunction generator_ido(const LevyQuadruplet& q, const std::function<cplx(double)>& f, const GridSpec& spec)
{
    check_generator_condition(q);
    GridFunction out{spec, std::vector<cplx>(spec.n)};
    for (int j = 0; j < spec.n; ++j)
        out.values[j] = generator_ido_at(q, f, spec.x(j));
    return out;
}

GridFunction generator_ido(const LevyQuadruplet& q, const GridFunction& f)
{
    check_generator_condition(q);
    const GridSpec& g = f.spec;
    int n = g.n;
    double h = g.dx();
    auto at = [&](int j) { return j >= 0 && j < n ? f.values[j] : cplx(0.0); };
    auto read = [&](double x) { return interpolate(f, x); };
    GridFunction out{g, std::vector<cplx>(n)};
    for (int j = 0; j < n; ++j) {
        cplx d1 = (at(j - 2) - 8.0 * at(j - 1) + 8.0 * at(j + 1) - at(j + 2)) / (12.0 * h);
        cplx d2 = (-at(j - 2) + 16.0 * at(j - 1) - 30.0 * at(j) + 16.0 * at(j + 1) - at(j + 2)) / (12.0 * h * h);
        double x = g.x(j);
        cplx v = q.sigma2() * d2 + q.b() * d1 - q.psi0() * at(j) + jump_part(q, read, x, at(j), d1, d2);
        out.values[j] = std::exp(-x) * v;
    }
    return out;
}

double ws_residual(const WienerHopfPair& pair, const GridSpec& spec, const std::vector<double>& centers)
{
    require(!centers.empty(), "ws_residual needs at least one center");
    validate_grid(spec);
    // Lambda f may decay slowly to the right; the doubled window keeps its
    // wrapped tail away from the e^{-x} amplification at the left end.
    GridSpec ext{spec.x_min, spec.x_min + 2.0 * (spec.x_max - spec.x_min), 2 * spec.n};
    MultiplierLine lam = multiplier_lambda(pair, ext);
    auto psi = [&](double xi) { return pair.psi(xi); };
    auto psi0 = [](double xi) { return cplx(xi * xi); };
    auto restrict = [&](const GridFunction& f) {
        return GridFunction{spec, std::vector<cplx>(f.values.begin(), f.values.begin() + spec.n)};
    };
    // both sides get the same cleaning: weighted round-off dropped from the
    // PDO input and a common spectral floor inside the PDO
    const double sample_floor = 1e-15, spectral_floor = 1e-14;
    double worst = 0.0;
    for (double a : centers) {
        GridFunction f = gaussian(ext, a);
        GridFunction lf = drop_weighted_noise(apply_multiplier(lam, f, false), sample_floor);
        GridFunction lhs = generator_pdo(psi, lf, nullptr, spectral_floor);
        GridFunction rhs =
            apply_multiplier(lam, generator_pdo(psi0, drop_weighted_noise(f, sample_floor), nullptr, spectral_floor), false);
        GridFunction diff = lhs;
        for (int j = 0; j < ext.n; ++j)
            diff.values[j] -= rhs.values[j];
        worst = std::max(worst, l2e_norm(restrict(diff)) / l2e_norm(restrict(rhs)));
    }
    return worst;
}

} // namespace ssmp
