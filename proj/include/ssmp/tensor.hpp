#pragma once

#include "ssmp/semigroup.hpp"

#include <functional>
#include <vector>

namespace ssmp {

// Samples on a product grid, last axis fastest.
struct GridND {
    std::vector<GridSpec> axes;
    std::vector<cplx> values;

    std::size_t size() const;
    std::size_t index(const std::vector<int>& idx) const;
};

GridND sample_nd(const std::vector<GridSpec>& axes, const std::function<cplx(const std::vector<double>&)>& f);
GridND outer(const GridFunction& f, const GridFunction& g);

// Multilinear interpolation; points outside the box read as 0.
cplx interpolate_nd(const GridND& F, const std::vector<double>& x);

struct TensorPlan {
    std::vector<EvolutionPlan> plans;
    std::vector<double> matrix;     // M, row-major d x d
    std::vector<double> inverse;    // M^{-1}
};

TensorPlan make_tensor_plan(std::vector<EvolutionPlan> plans, std::vector<double> matrix);

// e_M(x) = e^{<M^{-1} x, 1>}
double tensor_weight(const TensorPlan& plan, const std::vector<double>& x);
// sum F conj(G) e_M dx
cplx tensor_inner(const TensorPlan& plan, const GridND& F, const GridND& G);

// P^M_t F = P_t(F o M) o M^{-1}; each composition is resampled by multilinear
// interpolation with an 8-cell padding check.
GridND evolve_tensor(const TensorPlan& plan, double t, const GridND& F, const EvolveOptions& opt = {});

// Integro-differential generator of P^M at a point, for product quadruplets.
cplx generator_ido_tensor(const std::vector<LevyQuadruplet>& q, const std::vector<double>& matrix,
                          const std::function<cplx(const std::vector<double>&)>& f, const std::vector<double>& x);

} // namespace ssmp
