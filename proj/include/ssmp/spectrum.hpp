#pragma once

#include "ssmp/transform.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ssmp {

enum class Verdict { Point, Residual, Continuous, ApproximateOnly, Inconclusive };
const char* verdict_name(Verdict v);

struct SpectrumReport {
    Verdict verdict = Verdict::Inconclusive;
    std::string branch; // "theta", "table", "bands" or "none"
    ThetaLimits theta_plus{0.0, 0.0};
    ThetaLimits theta_minus{0.0, 0.0};
    double theta_plus_err = 0.0;
    double theta_minus_err = 0.0;
    double l2_mass_m = 0.0;
    bool l2_m_finite = false;
    double l2_mass_inv = 0.0;
    bool l2_inv_finite = false;
    double slope_m = 0.0; // log-log slope of |m| over the upper dyadic bands
    bool bounded_above = false;
    bool bounded_below = false;
    std::optional<std::string> table_rule_fired;
    GridSpec evidence_grid;
};

struct FactorTail {
    TailMetadata meta;
    double drift = 0.0;
};

// Symbolic rules for m in L^2 from the tail data of both factors; mirrored
// rows give Residual.
std::optional<Verdict> table_rule(const FactorTail& plus, const FactorTail& minus,
                                  std::string* rule = nullptr);

struct ClassifyOptions {
    double xi_max = 100.0;
    int theta_samples = 8;
};

SpectrumReport classify(const WienerHopfPair& pair, const GridSpec& spec, const ClassifyOptions& opt = {});
SpectrumReport classify(const WienerHopfPair& pair, const MultiplierLine& m, const ClassifyOptions& opt = {});

// e^{-t e^{-y}}
std::vector<double> spectrum_values(double t, const std::vector<double>& y);

} // namespace ssmp
