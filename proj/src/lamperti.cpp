#include "ssmp/lamperti.hpp"
#include "ssmp/errors.hpp"
#include "ssmp/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace ssmp {

namespace {

const std::size_t chunk_paths = 1024;

std::mt19937_64 path_rng(std::uint64_t seed, std::uint64_t stream)
{
    std::seed_seq seq{std::uint32_t(seed), std::uint32_t(seed >> 32), std::uint32_t(stream),
                      std::uint32_t(stream >> 32)};
    return std::mt19937_64(seq);
}

// Increment generator for one path. Draw order per path: killing time, then
// per step the Gaussian, the jump count and the jump sizes.
class Stepper {
public:
    Stepper(const LevyQuadruplet& q, const SimConfig& cfg, std::uint64_t stream)
        : dt_(cfg.dt), rng_(path_rng(cfg.seed, stream))
    {
        const JumpTable& t = q.jumps();
        std::vector<double> w;
        for (std::size_t i = 0; i < t.y.size(); ++i) {
            if (std::abs(t.y[i]) >= cfg.jump_eps) {
                big_.push_back(t.y[i]);
                w.push_back(t.w[i]);
                rate_ += t.w[i];
            }
        }
        double var = 2.0 * q.sigma2() + q.small_jump_variance(cfg.jump_eps);
        if (!std::isfinite(var) || var < 0.0)
            fail(ErrorKind::Config, "small-jump variance is not finite at this jump_eps");
        var_rate_ = var;
        sd_ = std::sqrt(var * dt_);
        mean_rate_ = q.b() - q.compensator(cfg.jump_eps);
        mean_ = mean_rate_ * dt_;
        for (double y : big_)
            up_ = std::max(up_, y);
        if (!std::isfinite(mean_))
            fail(ErrorKind::Config, "jump compensator is not finite at this jump_eps");
        if (rate_ > 0.0) {
            pick_ = std::discrete_distribution<std::size_t>(w.begin(), w.end());
            count_ = std::poisson_distribution<long>(rate_ * dt_);
        }
        if (q.psi0() > 0.0)
            kill_ = std::exponential_distribution<double>(q.psi0())(rng_);
    }

    double kill_time() const { return kill_; }
    std::int64_t jumps() const { return jumps_; }

    double next()
    {
        double dz = mean_;
        if (sd_ > 0.0)
            dz += sd_ * normal_(rng_);
        if (rate_ > 0.0) {
            long k = count_(rng_);
            jumps_ += k;
            for (long i = 0; i < k; ++i)
                dz += big_[pick_(rng_)];
        }
        return dz;
    }

    // Increment over a step of length h; exact in law for any h.
    double next(double h)
    {
        if (h == dt_)
            return next();
        double dz = mean_rate_ * h;
        if (var_rate_ > 0.0)
            dz += std::sqrt(var_rate_ * h) * normal_(rng_);
        if (rate_ > 0.0) {
            long k = std::poisson_distribution<long>(rate_ * h)(rng_);
            jumps_ += k;
            for (long i = 0; i < k; ++i)
                dz += big_[pick_(rng_)];
        }
        return dz;
    }

    // Bound on the rise of Z over a step of length h, exceeded with negligible
    // probability.
    double reach(double h) const
    {
        double lam = rate_ * h;
        double r = 6.0 * std::sqrt(var_rate_ * h) + std::max(0.0, mean_rate_ * h);
        if (up_ > 0.0)
            r += up_ * (lam + 6.0 * std::sqrt(lam) + 1.0);
        return r;
    }

private:
    double dt_;
    std::mt19937_64 rng_;
    double mean_ = 0.0;
    double sd_ = 0.0;
    double mean_rate_ = 0.0;
    double var_rate_ = 0.0;
    double up_ = 0.0;
    double rate_ = 0.0;
    double kill_ = std::numeric_limits<double>::infinity();
    std::int64_t jumps_ = 0;
    std::vector<double> big_;
    std::normal_distribution<double> normal_;
    std::discrete_distribution<std::size_t> pick_;
    std::poisson_distribution<long> count_;
};

// int_0^r e^{z + kappa s} ds
double clock_piece(double z, double kappa, double r)
{
    double u = kappa * r;
    if (u > 1.0)
        return r * std::exp(z + u + std::log(-std::expm1(-u) / u));
    double f = std::abs(u) < 1e-12 ? 1.0 + 0.5 * u : std::expm1(u) / u;
    return std::exp(z) * r * f;
}

// r with clock_piece(z, kappa, r) = c
double clock_inverse(double z, double kappa, double c)
{
    if (kappa > 0.0) {
        double w = std::log(kappa * c) - z;
        if (w > 30.0)
            return (w + std::log1p(std::exp(-w))) / kappa;
    }
    double v = c * std::exp(-z);
    if (std::abs(kappa * v) < 1e-12)
        return v * (1.0 - 0.5 * kappa * v);
    return std::log1p(kappa * v) / kappa;
}

// Extended precision keeps the running sums exact to double rounding over
// long paths.
struct ClockState {
    long double s = 0.0; // Levy time at the start of the current step
    long double z = 0.0;
    long double A = 0.0;
};

// Advances the clock through one linear step z -> z + dz. Returns true when
// the target or the killing time falls inside the step.
bool clock_step(ClockState& st, double dz, double dt, double target, double kill, LampertiValue& out)
{
    double kappa = dz / dt;
    double r_end = std::min(dt, double(kill - st.s));
    double piece = clock_piece(double(st.z), kappa, r_end);
    if (st.A + piece >= target) {
        double r = std::min(clock_inverse(double(st.z), kappa, double(target - st.A)), r_end);
        out = {ClockOutcome::Value, 0.0, double(st.s + r)};
        out.value = double(st.z + (long double)kappa * r);
        return true;
    }
    if (r_end < dt) {
        out = {ClockOutcome::Absorbed, 0.0, kill};
        return true;
    }
    st.A += piece;
    st.z += dz;
    st.s += dt;
    return false;
}

struct Moments {
    std::int64_t n = 0;
    double mean = 0.0;
    double m2 = 0.0;
    std::int64_t absorbed = 0;

    void add(double v)
    {
        ++n;
        double d = v - mean;
        mean += d / double(n);
        m2 += d * (v - mean);
    }
    void merge(const Moments& o)
    {
        if (o.n == 0)
            return;
        std::int64_t n_ab = n + o.n;
        double d = o.mean - mean;
        mean += d * double(o.n) / double(n_ab);
        m2 += o.m2 + d * d * double(n) * double(o.n) / double(n_ab);
        n = n_ab;
        absorbed += o.absorbed;
    }
};

} // namespace

void validate_config(const SimConfig& cfg)
{
    if (!(cfg.dt > 0.0 && cfg.dt <= 1e-2))
        fail(ErrorKind::Config, "dt must lie in (0, 1e-2]");
    if (!(cfg.jump_eps > 0.0 && cfg.jump_eps <= 1.0))
        fail(ErrorKind::Config, "jump_eps must lie in (0, 1]");
    if (cfg.n_paths < 1)
        fail(ErrorKind::Config, "n_paths must be positive");
    if (!(cfg.T_max > 0.0) || !std::isfinite(cfg.T_max))
        fail(ErrorKind::Config, "T_max must be positive and finite");
}

LevyPath simulate_levy(const LevyQuadruplet& q, double T, const SimConfig& cfg, std::uint64_t stream)
{
    validate_config(cfg);
    require(T >= 0.0 && T <= cfg.T_max, "horizon must lie in [0, T_max]");
    Stepper st(q, cfg, stream);
    auto steps = std::size_t(std::ceil(T / cfg.dt - 1e-9));
    LevyPath p;
    p.dt = cfg.dt;
    p.values.reserve(steps + 1);
    p.values.push_back(0.0);
    double z = 0.0;
    for (std::size_t k = 0; k < steps; ++k) {
        z += st.next();
        p.values.push_back(z);
    }
    if (st.kill_time() <= steps * cfg.dt)
        p.killed_at = st.kill_time();
    p.jump_count = st.jumps();
    return p;
}

LampertiValue lamperti_time_change(const LevyPath& path, double x0, double t)
{
    require(x0 > 0.0, "x0 must be positive");
    require(t >= 0.0, "t must be nonnegative");
    if (t == 0.0)
        return {ClockOutcome::Value, x0, 0.0};
    double kill = path.killed_at ? *path.killed_at : std::numeric_limits<double>::infinity();
    double target = t / x0;
    ClockState st;
    LampertiValue out{ClockOutcome::NeedsLongerPath, 0.0, 0.0};
    for (std::size_t k = 0; k + 1 < path.values.size(); ++k) {
        double dz = path.values[k + 1] - path.values[k];
        if (clock_step(st, dz, path.dt, target, kill, out)) {
            if (out.outcome == ClockOutcome::Value)
                out.value = x0 * std::exp(out.value);
            return out;
        }
    }
    if (path.killed_at)
        return {ClockOutcome::Absorbed, 0.0, kill};
    return {ClockOutcome::NeedsLongerPath, 0.0, double(st.s)};
}

MCEstimate mc_expectation(const LevyQuadruplet& q, const std::function<double(double)>& f, double x, double t,
                          const SimConfig& cfg)
{
    validate_config(cfg);
    require(x > 0.0, "starting point must be positive");
    require(t >= 0.0, "t must be nonnegative");
    MCEstimate est;
    est.n_effective = cfg.n_paths;
    if (t == 0.0) {
        est.mean = f(x);
        return est;
    }
    double target = t / x;
    // a step may be coarsened while its clock contribution stays below dt
    // times the remaining clock
    const double coarse_tol = cfg.dt;
    std::size_t n = std::size_t(cfg.n_paths);
    std::size_t chunks = (n + chunk_paths - 1) / chunk_paths;
    std::vector<Moments> parts(chunks);
    parallel_for(chunks, [&](std::size_t c) {
        Moments m;
        std::size_t end = std::min(n, (c + 1) * chunk_paths);
        for (std::size_t p = c * chunk_paths; p < end; ++p) {
            Stepper st(q, cfg, p);
            ClockState cs;
            LampertiValue out{ClockOutcome::NeedsLongerPath, 0.0, 0.0};
            bool done = false;
            while (!done && cs.s < cfg.T_max) {
                double h = cfg.dt;
                double room = coarse_tol * double(target - cs.A);
                while (h < cfg.T_max && std::exp(double(cs.z) + st.reach(2.0 * h)) * 2.0 * h <= room)
                    h *= 2.0;
                done = clock_step(cs, st.next(h), h, target, st.kill_time(), out);
            }
            if (!done) {
                // the clock has stalled: Z is so low that another T_max cannot close the gap
                if (std::exp(double(cs.z)) * cfg.T_max < 1e-12 * double(target - cs.A))
                    out.outcome = ClockOutcome::Absorbed;
                else
                    fail(ErrorKind::Convergence, "Lamperti clock did not reach its target before T_max");
            }
            if (out.outcome == ClockOutcome::Value) {
                m.add(f(x * std::exp(out.value)));
            } else {
                m.add(0.0);
                ++m.absorbed;
            }
        }
        parts[c] = m;
    });
    Moments all;
    for (const Moments& m : parts)
        all.merge(m);
    est.mean = all.mean;
    double var = all.n > 1 ? all.m2 / double(all.n - 1) : 0.0;
    est.stderr_ = std::sqrt(var / double(all.n));
    est.absorbed_fraction = double(all.absorbed) / double(all.n);
    return est;
}

MCEstimate mc_expectation(const Exponent& e, const std::function<double(double)>& f, double x, double t,
                          const SimConfig& cfg)
{
    if (!e.quadruplet())
        fail(ErrorKind::Validation, "Monte Carlo needs the quadruplet form of the exponent");
    return mc_expectation(*e.quadruplet(), f, x, t, cfg);
}

} // namespace ssmp
