#pragma once

#include "ssmp/bernstein.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace ssmp {

// Levy measure on R \ {0}: signed atoms plus optional densities on y > 0 and
// y < 0 (the latter tabulated in |y|).
struct LevyMeasure {
    std::vector<Atom> atoms; // location may be negative
    std::optional<TabulatedDensity> positive;
    std::optional<TabulatedDensity> negative;
};

// All jumps of a quadruplet as signed nodes with weights, plus the exact
// small-jump power-law pieces on (0, tiny] and [-tiny, 0).
struct JumpTable {
    std::vector<double> y;
    std::vector<double> w;
    std::optional<DiscreteDensity> pos_tiny;
    std::optional<DiscreteDensity> neg_tiny;
};

class LevyQuadruplet {
public:
    LevyQuadruplet(double psi0, double b, double sigma2, LevyMeasure mu = {});

    double psi0() const { return psi0_; }
    double b() const { return b_; }
    double sigma2() const { return sigma2_; }
    const LevyMeasure& mu() const { return mu_; }
    const JumpTable& jumps() const { return *jumps_; }

    cplx operator()(double xi) const;
    LevyQuadruplet conjugate() const;

    // int_{|y|>1} |y| mu(dy) < infinity
    bool large_jumps_integrable() const;
    // int_{|y|<eps} y^2 mu(dy) and the compensator int_{eps<=|y|<=1} y mu(dy)
    double small_jump_variance(double eps) const;
    double compensator(double eps) const;

private:
    double psi0_;
    double b_;
    double sigma2_;
    LevyMeasure mu_;
    std::shared_ptr<const JumpTable> jumps_;
};

struct WienerHopfPair {
    BernsteinFunction plus;
    BernsteinFunction minus;

    cplx psi(double xi) const { return plus(cplx(0.0, -xi)) * minus(cplx(0.0, xi)); }
    WienerHopfPair conjugate() const { return {minus, plus}; }
};

class Exponent {
public:
    explicit Exponent(LevyQuadruplet q) : quad_(std::move(q)) {}
    explicit Exponent(WienerHopfPair p) : pair_(std::move(p)) {}
    Exponent(LevyQuadruplet q, WienerHopfPair p) : quad_(std::move(q)), pair_(std::move(p)) {}

    const std::optional<LevyQuadruplet>& quadruplet() const { return quad_; }
    const std::optional<WienerHopfPair>& pair() const { return pair_; }

    // Pair form when present, quadruplet otherwise.
    cplx operator()(double xi) const;

private:
    std::optional<LevyQuadruplet> quad_;
    std::optional<WienerHopfPair> pair_;
};

cplx eval_psi(const Exponent& e, double xi);
Exponent conjugate(const Exponent& e);

// max_k |psi_quad(xi_k) - psi_pair(xi_k)| / (1 + |psi_pair(xi_k)|); needs both forms.
double representation_mismatch(const Exponent& e, const std::vector<double>& xi);

struct NonLatticeReport {
    double kappa;
    bool ok;
};

// Factors psi = sigma^2 xi^2 - i b xi for jump-free, unkilled quadruplets;
// nullopt otherwise.
std::optional<WienerHopfPair> factorize_diffusion(const LevyQuadruplet& q);

NonLatticeReport weak_nonlattice_check(const BernsteinFunction& phi, double xi_max);

} // namespace ssmp
