#include "ssmp/tensor.hpp"
#include "ssmp/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace ssmp {

namespace {

const int padding_cells = 8;
const double padding_tol = 1e-10;

std::vector<double> mat_vec(const std::vector<double>& A, const std::vector<double>& x)
{
    std::size_t d = x.size();
    std::vector<double> y(d, 0.0);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            y[i] += A[i * d + j] * x[j];
    return y;
}

bool is_identity(const std::vector<double>& A, std::size_t d)
{
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            if (A[i * d + j] != (i == j ? 1.0 : 0.0))
                return false;
    return true;
}

std::vector<double> point(const GridND& F, std::size_t flat)
{
    std::size_t d = F.axes.size();
    std::vector<double> x(d);
    for (std::size_t k = d; k-- > 0;) {
        int n = F.axes[k].n;
        x[k] = F.axes[k].x(int(flat % n));
        flat /= n;
    }
    return x;
}

// max |F| over the outer padding band of the box
double boundary_band_max(const GridND& F)
{
    std::size_t d = F.axes.size();
    double m = 0.0;
    for (std::size_t flat = 0; flat < F.values.size(); ++flat) {
        std::size_t rest = flat;
        bool edge = false;
        for (std::size_t k = d; k-- > 0;) {
            int n = F.axes[k].n;
            int i = int(rest % n);
            rest /= n;
            if (i < padding_cells || i >= n - padding_cells)
                edge = true;
        }
        if (edge)
            m = std::max(m, std::abs(F.values[flat]));
    }
    return m;
}

bool inside(const GridND& F, const std::vector<double>& x)
{
    for (std::size_t k = 0; k < x.size(); ++k)
        if (x[k] < F.axes[k].x_min || x[k] > F.axes[k].x(F.axes[k].n - 1))
            return false;
    return true;
}

// G(p) = F(A p) on the same product grid.
GridND resample(const GridND& F, const std::vector<double>& A)
{
    GridND G{F.axes, std::vector<cplx>(F.values.size())};
    bool outside = false;
    for (std::size_t flat = 0; flat < F.values.size(); ++flat) {
        std::vector<double> y = mat_vec(A, point(F, flat));
        if (!inside(F, y))
            outside = true;
        G.values[flat] = interpolate_nd(F, y);
    }
    if (outside) {
        double peak = 0.0;
        for (const cplx& v : F.values)
            peak = std::max(peak, std::abs(v));
        if (boundary_band_max(F) > padding_tol * peak)
            fail(ErrorKind::Interpolation, "M maps the grid outside the sampled box beyond the padding margin");
    }
    return G;
}

void apply_along_axis(GridND& F, std::size_t axis, const MultiplierLine& m, bool invert, double noise_floor)
{
    std::size_t d = F.axes.size();
    int n = F.axes[axis].n;
    std::size_t stride = 1;
    for (std::size_t k = axis + 1; k < d; ++k)
        stride *= F.axes[k].n;
    std::size_t outer = F.values.size() / (stride * n);
    GridFunction line{F.axes[axis], std::vector<cplx>(n)};
    for (std::size_t o = 0; o < outer; ++o) {
        for (std::size_t s = 0; s < stride; ++s) {
            std::size_t base = o * stride * n + s;
            for (int j = 0; j < n; ++j)
                line.values[j] = F.values[base + j * stride];
            GridFunction r = apply_multiplier(m, line, invert, noise_floor);
            for (int j = 0; j < n; ++j)
                F.values[base + j * stride] = r.values[j];
        }
    }
}

} // namespace

std::size_t GridND::size() const
{
    std::size_t s = 1;
    for (const GridSpec& a : axes)
        s *= a.n;
    return s;
}

std::size_t GridND::index(const std::vector<int>& idx) const
{
    std::size_t flat = 0;
    for (std::size_t k = 0; k < axes.size(); ++k)
        flat = flat * axes[k].n + idx[k];
    return flat;
}

GridND sample_nd(const std::vector<GridSpec>& axes, const std::function<cplx(const std::vector<double>&)>& f)
{
    require(!axes.empty() && axes.size() <= 3, "tensor grids support 1 to 3 axes");
    GridND F{axes, {}};
    F.values.resize(F.size());
    for (std::size_t flat = 0; flat < F.values.size(); ++flat)
        F.values[flat] = f(point(F, flat));
    return F;
}

GridND outer(const GridFunction& f, const GridFunction& g)
{
    GridND F{{f.spec, g.spec}, std::vector<cplx>(std::size_t(f.spec.n) * g.spec.n)};
    for (int i = 0; i < f.spec.n; ++i)
        for (int j = 0; j < g.spec.n; ++j)
            F.values[std::size_t(i) * g.spec.n + j] = f.values[i] * g.values[j];
    return F;
}

cplx interpolate_nd(const GridND& F, const std::vector<double>& x)
{
    std::size_t d = F.axes.size();
    std::vector<int> lo(d);
    std::vector<double> frac(d);
    for (std::size_t k = 0; k < d; ++k) {
        const GridSpec& a = F.axes[k];
        double u = (x[k] - a.x_min) / a.dx();
        if (u < 0.0 || u > a.n - 1)
            return 0.0;
        int i = std::min(int(std::floor(u)), a.n - 2);
        lo[k] = i;
        frac[k] = u - i;
    }
    cplx s = 0.0;
    std::vector<int> idx(d);
    for (int corner = 0; corner < (1 << d); ++corner) {
        double w = 1.0;
        for (std::size_t k = 0; k < d; ++k) {
            int bit = (corner >> k) & 1;
            idx[k] = lo[k] + bit;
            w *= bit ? frac[k] : 1.0 - frac[k];
        }
        if (w != 0.0)
            s += w * F.values[F.index(idx)];
    }
    return s;
}

TensorPlan make_tensor_plan(std::vector<EvolutionPlan> plans, std::vector<double> matrix)
{
    std::size_t d = plans.size();
    require(d >= 1 && d <= 3, "tensor plans support 1 to 3 axes");
    require(matrix.size() == d * d, "similarity matrix must be d x d");
    Eigen::MatrixXd M(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            M(i, j) = matrix[i * d + j];
    Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
    require(lu.isInvertible() && std::abs(M.determinant()) > 0.0, "similarity matrix must be invertible");
    Eigen::MatrixXd Mi = lu.inverse();
    std::vector<double> inv(d * d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            inv[i * d + j] = Mi(i, j);
    return {std::move(plans), std::move(matrix), std::move(inv)};
}

double tensor_weight(const TensorPlan& plan, const std::vector<double>& x)
{
    std::vector<double> y = mat_vec(plan.inverse, x);
    double s = 0.0;
    for (double v : y)
        s += v;
    return std::exp(s);
}

cplx tensor_inner(const TensorPlan& plan, const GridND& F, const GridND& G)
{
    require(F.values.size() == G.values.size(), "tensor grids differ");
    double cell = 1.0;
    for (const GridSpec& a : F.axes)
        cell *= a.dx();
    cplx s = 0.0;
    for (std::size_t flat = 0; flat < F.values.size(); ++flat)
        s += F.values[flat] * std::conj(G.values[flat]) * tensor_weight(plan, point(F, flat));
    return s * cell;
}

GridND evolve_tensor(const TensorPlan& plan, double t, const GridND& F, const EvolveOptions& opt)
{
    require(t >= 0.0, "t must be nonnegative");
    std::size_t d = plan.plans.size();
    require(F.axes.size() == d, "grid dimension does not match the plan");
    for (std::size_t k = 0; k < d; ++k) {
        const GridSpec& a = F.axes[k];
        const GridSpec& b = plan.plans[k].spec;
        require(a.n == b.n && a.x_min == b.x_min && a.x_max == b.x_max, "grid axis does not match its plan");
        if (!plan.plans[k].inverse_ok)
            fail(ErrorKind::Domain, "H multiplier has zeros on some axis");
    }
    bool identity = is_identity(plan.matrix, d);
    GridND G = identity ? F : resample(F, plan.matrix);
    for (std::size_t k = 0; k < d; ++k)
        apply_along_axis(G, k, plan.plans[k].m, true, opt.noise_floor);
    for (std::size_t flat = 0; flat < G.values.size(); ++flat) {
        std::vector<double> y = point(G, flat);
        double s = 0.0;
        for (double v : y)
            s += std::exp(-v);
        G.values[flat] *= std::exp(-t * s);
    }
    for (std::size_t k = 0; k < d; ++k)
        apply_along_axis(G, k, plan.plans[k].m, false, opt.noise_floor);
    return identity ? G : resample(G, plan.inverse);
}

cplx generator_ido_tensor(const std::vector<LevyQuadruplet>& q, const std::vector<double>& matrix,
                          const std::function<cplx(const std::vector<double>&)>& f, const std::vector<double>& x)
{
    std::size_t d = q.size();
    require(d >= 1 && d <= 3 && x.size() == d && matrix.size() == d * d, "dimension mismatch");
    Eigen::MatrixXd M(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            M(i, j) = matrix[i * d + j];
    Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
    require(lu.isInvertible(), "similarity matrix must be invertible");
    Eigen::VectorXd xv = Eigen::Map<const Eigen::VectorXd>(x.data(), d);
    Eigen::VectorXd y = lu.solve(xv);
    cplx total = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
        // every term of axis k acts along the column v = M e_k
        Eigen::VectorXd v = M.col(k);
        auto along = [&](double s) {
            std::vector<double> p(d);
            for (std::size_t i = 0; i < d; ++i)
                p[i] = x[i] + s * v(i);
            return f(p);
        };
        total += std::exp(-y(k)) * generator_ido_at(q[k], along, 0.0);
    }
    return total;
}

} // namespace ssmp
