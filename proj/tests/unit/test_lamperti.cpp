#include "doctest.h"

#include "common.hpp"
#include "ssmp/errors.hpp"
#include "ssmp/lamperti.hpp"

#include <cmath>

using namespace ssmp;
using namespace ssmp_test;

namespace {

SimConfig config(std::int64_t n, double dt = 1e-3, std::uint64_t seed = 7)
{
    SimConfig c;
    c.n_paths = n;
    c.dt = dt;
    c.seed = seed;
    return c;
}

struct Moments {
    double mean = 0.0;
    double var = 0.0;
};

Moments moments(const std::vector<double>& v)
{
    Moments m;
    for (double x : v)
        m.mean += x;
    m.mean /= double(v.size());
    for (double x : v)
        m.var += (x - m.mean) * (x - m.mean);
    m.var /= double(v.size() - 1);
    return m;
}

} // namespace

TEST_CASE("config validation")
{
    CHECK_NOTHROW(validate_config(SimConfig{}));
    for (SimConfig c : {config(10, 0.0), config(10, 0.05), config(0)}) {
        try {
            validate_config(c);
            CHECK(false);
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::Config);
        }
    }
    SimConfig c;
    c.jump_eps = 0.0;
    CHECK_THROWS_AS(validate_config(c), Error);
}

TEST_CASE("Brownian increments have variance 2 dt")
{
    LevyQuadruplet q(0.0, 0.0, 1.0);
    SimConfig cfg = config(10000);
    double T = 1.0;
    std::vector<double> end;
    for (std::uint64_t s = 0; s < 10000; ++s) {
        LevyPath p = simulate_levy(q, T, cfg, s);
        CHECK(p.values.size() == 1001u);
        end.push_back(p.values.back());
    }
    Moments m = moments(end);
    double se_var = std::sqrt(2.0 / end.size()) * 2.0 * T;
    CHECK(std::abs(m.var - 2.0 * T) <= 3.0 * se_var);
    CHECK(std::abs(m.mean) <= 3.0 * std::sqrt(2.0 * T / end.size()));
}

TEST_CASE("pure drift is exact")
{
    double b = 0.75, T = 2.0;
    LevyPath p = simulate_levy(LevyQuadruplet(0.0, b, 0.0), T, config(1), 0);
    CHECK(std::abs(p.values.back() - b * T) <= 1e-12);
    CHECK(!p.killed_at);
    CHECK(p.jump_count == 0);
}

TEST_CASE("single atom jump count is Poisson")
{
    double lam = 2.0, T = 1.0;
    LevyQuadruplet q(0.0, 0.0, 0.0, LevyMeasure{{{1.5, lam}}, {}, {}});
    SimConfig cfg = config(10000, 1e-2);
    std::vector<double> counts;
    for (std::uint64_t s = 0; s < 10000; ++s)
        counts.push_back(double(simulate_levy(q, T, cfg, s).jump_count));
    Moments m = moments(counts);
    CHECK(std::abs(m.mean - lam * T) <= 3.0 * std::sqrt(lam * T / counts.size()));
    CHECK(std::abs(m.var - lam * T) <= 0.1 * lam * T);
}

TEST_CASE("killing happens at rate psi(0)")
{
    LevyQuadruplet q(1.0, 0.0, 0.0);
    SimConfig cfg = config(10000, 1e-2);
    int killed = 0;
    for (std::uint64_t s = 0; s < 10000; ++s)
        killed += simulate_levy(q, 1.0, cfg, s).killed_at ? 1 : 0;
    double p = 1.0 - std::exp(-1.0);
    CHECK(std::abs(killed / 1e4 - p) <= 3.0 * std::sqrt(p * (1 - p) / 1e4));
}

TEST_CASE("Lamperti time change")
{
    SimConfig cfg = config(1);
    LevyPath drift = simulate_levy(LevyQuadruplet(0.0, 1.3, 0.0), 20.0, cfg, 0);
    LampertiValue v0 = lamperti_time_change(drift, 2.0, 0.0);
    CHECK(v0.outcome == ClockOutcome::Value);
    CHECK(v0.value == 2.0);
    for (double t : {0.1, 1.0, 5.0}) {
        LampertiValue v = lamperti_time_change(drift, 2.0, t);
        REQUIRE(v.outcome == ClockOutcome::Value);
        CHECK(std::abs(v.value - (2.0 + 1.3 * t)) <= 1e-12 * (2.0 + 1.3 * t));
    }

    LevyPath bm = simulate_levy(LevyQuadruplet(0.0, 0.0, 1.0), 5.0, cfg, 3);
    double prev = 0.0;
    for (double t = 0.0; t <= 2.0; t += 0.01) {
        LampertiValue v = lamperti_time_change(bm, 1.0, t);
        if (v.outcome != ClockOutcome::Value)
            break;
        CHECK(v.clock >= prev);
        prev = v.clock;
    }

    LevyPath shortp = simulate_levy(LevyQuadruplet(0.0, 0.0, 1.0), 0.01, cfg, 1);
    CHECK(lamperti_time_change(shortp, 1.0, 10.0).outcome == ClockOutcome::NeedsLongerPath);

    LevyPath killed;
    killed.dt = 0.1;
    killed.values = {0.0, 0.0, 0.0};
    killed.killed_at = 0.15;
    CHECK(lamperti_time_change(killed, 1.0, 1.0).outcome == ClockOutcome::Absorbed);
    CHECK(lamperti_time_change(killed, 1.0, 0.1).outcome == ClockOutcome::Value);
}

TEST_CASE("mc_expectation examples")
{
    auto r = [](double x) { return x; };
    LevyQuadruplet bm(0.0, 0.0, 1.0);
    MCEstimate e0 = mc_expectation(bm, r, 1.5, 0.0, config(100));
    CHECK(e0.mean == 1.5);
    CHECK(e0.stderr_ == 0.0);

    // generator r f'' + f' sends id to 1
    double x = 1.0, t = 0.5;
    MCEstimate e = mc_expectation(bm, r, x, t, config(100000));
    CHECK(std::abs(e.mean - (x + t)) <= 3.0 * e.stderr_);
    CHECK(e.n_effective == 100000);
    CHECK(e.absorbed_fraction == 0.0);

    double d = 0.8;
    auto s = [](double y) { return std::sin(y); };
    MCEstimate ed = mc_expectation(LevyQuadruplet(0.0, d, 0.0), s, 0.7, 1.2, config(50));
    CHECK(std::abs(ed.mean - std::sin(0.7 + d * 1.2)) <= 1e-14);
    CHECK(ed.stderr_ <= 1e-14);

    // the pair-only form has no quadruplet to simulate
    CHECK_THROWS_AS(mc_expectation(Exponent(WienerHopfPair{id(), id()}), r, 1.0, 1.0, config(10)), Error);
    CHECK(mc_expectation(Exponent(bm), r, 1.0, 0.2, config(1000)).n_effective == 1000);
}

TEST_CASE("killed paths contribute zero")
{
    auto one = [](double) { return 1.0; };
    MCEstimate e = mc_expectation(LevyQuadruplet(2.0, 0.0, 0.0), one, 1.0, 0.5, config(20000, 1e-2));
    // clock of a constant path is s = t / x
    double p = std::exp(-2.0 * 0.5);
    CHECK(std::abs(e.mean - p) <= 3.0 * e.stderr_);
    CHECK(std::abs(e.absorbed_fraction - (1.0 - p)) <= 0.02);
}

TEST_CASE("stderr scaling and seed determinism")
{
    LevyQuadruplet bm(0.0, 0.0, 1.0);
    auto f = [](double x) { return std::exp(-x); };
    MCEstimate a = mc_expectation(bm, f, 1.0, 0.5, config(2000, 1e-2));
    MCEstimate b = mc_expectation(bm, f, 1.0, 0.5, config(8000, 1e-2));
    double ratio = b.stderr_ / a.stderr_;
    CHECK(ratio >= 0.5 * 0.75);
    CHECK(ratio <= 0.5 * 1.25);

    MCEstimate a2 = mc_expectation(bm, f, 1.0, 0.5, config(2000, 1e-2));
    CHECK(a2.mean == a.mean);
    CHECK(a2.stderr_ == a.stderr_);
    MCEstimate c = mc_expectation(bm, f, 1.0, 0.5, config(2000, 1e-2, 8));
    CHECK(c.mean != a.mean);

    LevyPath p1 = simulate_levy(bm, 1.0, config(1), 42), p2 = simulate_levy(bm, 1.0, config(1), 42);
    CHECK(p1.values == p2.values);
}
