#pragma once

#include "ssmp/transform.hpp"

#include <functional>
#include <vector>

namespace ssmp {

struct EvolutionPlan {
    WienerHopfPair pair;
    GridSpec spec;
    MultiplierLine m; // H multiplier on the line Re = 1/2
    bool inverse_ok = false;
};

EvolutionPlan make_plan(const WienerHopfPair& pair, const GridSpec& spec, double tol = 1e-8);

GridFunction mult_semigroup(double t, const GridFunction& f);

struct EvolveOptions {
    bool force = false;
    double tail_threshold = 1e-6;
    double noise_floor = 1e-13; // relative cutoff on input spectra before each multiplier
};

struct EvolveDiagnostics {
    DomainReport gate;        // spectrum of H^{-1} f
    double output_tail = 0.0; // tail fraction after applying H
    bool domain_warning = false;
};

// H e_t H^{-1} f. DomainError when H^{-1} f fails the domain gate, unless forced.
GridFunction evolve(const EvolutionPlan& plan, double t, const GridFunction& f,
                    const EvolveOptions& opt = {}, EvolveDiagnostics* diag = nullptr);

// Relative L^2(e) error of H H^{-1} f against f.
double round_trip_error(const EvolutionPlan& plan, const GridFunction& f, const EvolveOptions& opt = {});

struct GeneratorDiagnostics {
    double tail_fraction = 0.0;
    bool domain_warning = false;
};

// -e^{-x} F^{-1}[psi F f] with the unweighted transform. Spectral samples
// below noise_floor * max |F f| are dropped before psi multiplies them.
GridFunction generator_pdo(const Exponent& e, const GridFunction& f, GeneratorDiagnostics* diag = nullptr,
                           double noise_floor = 3e-16);
GridFunction generator_pdo(const std::function<cplx(double)>& psi, const GridFunction& f,
                           GeneratorDiagnostics* diag = nullptr, double noise_floor = 3e-16);

// e^{-x}(sigma^2 f'' + b f' - psi(0) f + int (f(x+y) - f(x) - y 1_{|y|<=1} f'(x)) mu(dy))
GridFunction generator_ido(const LevyQuadruplet& q, const GridFunction& f);
GridFunction generator_ido(const LevyQuadruplet& q, const std::function<cplx(double)>& f, const GridSpec& spec);
cplx generator_ido_at(const LevyQuadruplet& q, const std::function<cplx(double)>& f, double x);

// max over centers of |A_PDO[psi] Lambda f_a - Lambda A_PDO[psi_0] f_a| / |Lambda A_PDO[psi_0] f_a|
// in L^2(e), f_a(x) = e^{-(x-a)^2}, psi_0(xi) = xi^2.
double ws_residual(const WienerHopfPair& pair, const GridSpec& spec, const std::vector<double>& centers);

} // namespace ssmp
