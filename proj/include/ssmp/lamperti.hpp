#pragma once

#include "ssmp/exponents.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace ssmp {

struct SimConfig {
    double dt = 1e-3;       // Euler step on the Levy clock
    double jump_eps = 1e-2; // jumps below this size become Gaussian
    std::int64_t n_paths = 10000;
    std::uint64_t seed = 1;
    double T_max = 1e12;    // longest Levy horizon mc_expectation will try
};

void validate_config(const SimConfig& cfg);

struct MCEstimate {
    double mean = 0.0;
    double stderr_ = 0.0;
    std::int64_t n_effective = 0;
    double absorbed_fraction = 0.0;
};

struct LevyPath {
    double dt = 0.0;
    std::vector<double> values;       // Z at k dt, values[0] = 0
    std::optional<double> killed_at;  // killing time if before the horizon
    std::int64_t jump_count = 0;      // jumps of size >= jump_eps
};

// Euler path of the Levy process on [0, T]; stream selects the per-path RNG.
LevyPath simulate_levy(const LevyQuadruplet& q, double T, const SimConfig& cfg, std::uint64_t stream);

enum class ClockOutcome { Value, Absorbed, NeedsLongerPath };

struct LampertiValue {
    ClockOutcome outcome;
    double value = 0.0; // X_t when outcome is Value
    double clock = 0.0; // phi(t / x0) on the Levy clock
};

// X_t = x0 exp(Z_{phi(t/x0)}), phi the inverse of A(s) = int_0^s e^{Z_r} dr
// with Z linear between grid points.
LampertiValue lamperti_time_change(const LevyPath& path, double x0, double t);

// Mean of f(X_t) started at x > 0; absorbed paths contribute 0.
MCEstimate mc_expectation(const LevyQuadruplet& q, const std::function<double(double)>& f, double x, double t,
                          const SimConfig& cfg);
MCEstimate mc_expectation(const Exponent& e, const std::function<double(double)>& f, double x, double t,
                          const SimConfig& cfg);

} // namespace ssmp
