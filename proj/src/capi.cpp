#include "ssmp/ssmp.h"

#include "ssmp/bernstein_gamma.hpp"
#include "ssmp/eigenfunctions.hpp"
#include "ssmp/errors.hpp"
#include "ssmp/io.hpp"
#include "ssmp/lamperti.hpp"
#include "ssmp/semigroup.hpp"
#include "ssmp/spectrum.hpp"

#include <cmath>
#include <cstring>
#include <limits>
#include <new>
#include <string>

struct ssmp_bernstein {
    ssmp::BernsteinFunction phi;
};

struct ssmp_exponent {
    ssmp::Exponent e;
};

namespace {

thread_local std::string last_error;

int status_of(ssmp::ErrorKind k)
{
    using ssmp::ErrorKind;
    switch (k) {
    case ErrorKind::Validation: return SSMP_INVALID;
    case ErrorKind::Domain: return SSMP_DOMAIN;
    case ErrorKind::Quadrature: return SSMP_QUADRATURE;
    case ErrorKind::Convergence: return SSMP_CONVERGENCE;
    case ErrorKind::Branch: return SSMP_BRANCH;
    case ErrorKind::Metadata: return SSMP_METADATA;
    case ErrorKind::Overflow: return SSMP_OVERFLOW;
    case ErrorKind::Resolution: return SSMP_RESOLUTION;
    case ErrorKind::Condition: return SSMP_CONDITION;
    case ErrorKind::Interpolation: return SSMP_INTERPOLATION;
    case ErrorKind::Config: return SSMP_CONFIG;
    case ErrorKind::Io: return SSMP_IO;
    }
    return SSMP_INTERNAL;
}

template <class F>
int guarded(F&& body)
{
    try {
        body();
        last_error.clear();
        return SSMP_OK;
    } catch (const ssmp::Error& e) {
        last_error = e.what();
        return status_of(e.kind());
    } catch (const std::bad_alloc&) {
        last_error = "out of memory";
        return SSMP_INTERNAL;
    } catch (const std::exception& e) {
        last_error = e.what();
        return SSMP_INTERNAL;
    } catch (...) {
        last_error = "unknown failure";
        return SSMP_INTERNAL;
    }
}

void need(const void* p, const char* what)
{
    if (!p)
        ssmp::fail(ssmp::ErrorKind::Validation, std::string(what) + " must not be NULL");
}

ssmp::GridSpec to_spec(ssmp_grid g)
{
    ssmp::GridSpec s{g.x_min, g.x_max, g.n};
    ssmp::validate_grid(s);
    return s;
}

ssmp_grid from_spec(const ssmp::GridSpec& s)
{
    return {s.x_min, s.x_max, s.n};
}

ssmp::WienerHopfPair pair_of(const ssmp::Exponent& e)
{
    if (e.pair())
        return *e.pair();
    if (e.quadruplet())
        if (auto p = ssmp::factorize_diffusion(*e.quadruplet()))
            return *p;
    ssmp::fail(ssmp::ErrorKind::Validation, "this operation needs a Wiener-Hopf pair");
}

ssmp::GridFunction grid_function(const ssmp::GridSpec& s, const double* re, const double* im)
{
    need(re, "f_re");
    ssmp::GridFunction f{s, std::vector<ssmp::cplx>(s.n)};
    for (int j = 0; j < s.n; ++j)
        f.values[j] = ssmp::cplx(re[j], im ? im[j] : 0.0);
    return f;
}

void split(const std::vector<ssmp::cplx>& v, double* re, double* im)
{
    for (std::size_t j = 0; j < v.size(); ++j) {
        if (re)
            re[j] = v[j].real();
        if (im)
            im[j] = v[j].imag();
    }
}

const ssmp::ClosedForm* closed_form(const ssmp::BernsteinFunction& f, ssmp::ClosedFormKind kind)
{
    const auto* c = std::get_if<ssmp::ClosedForm>(&f.measure());
    return c && c->kind == kind ? c : nullptr;
}

} // namespace

extern "C" {

const char* ssmp_last_error(void)
{
    return last_error.c_str();
}

const char* ssmp_status_name(int status)
{
    switch (status) {
    case SSMP_OK: return "ok";
    case SSMP_INVALID: return "validation";
    case SSMP_DOMAIN: return "domain";
    case SSMP_QUADRATURE: return "quadrature";
    case SSMP_CONVERGENCE: return "convergence";
    case SSMP_BRANCH: return "branch";
    case SSMP_METADATA: return "metadata";
    case SSMP_OVERFLOW: return "overflow";
    case SSMP_RESOLUTION: return "resolution";
    case SSMP_CONDITION: return "condition";
    case SSMP_INTERPOLATION: return "interpolation";
    case SSMP_CONFIG: return "config";
    case SSMP_IO: return "io";
    case SSMP_INTERNAL: return "internal";
    }
    return "unknown";
}

const char* ssmp_verdict_name(int verdict)
{
    if (verdict < SSMP_VERDICT_POINT || verdict > SSMP_VERDICT_INCONCLUSIVE)
        return "unknown";
    return ssmp::verdict_name(ssmp::Verdict(verdict));
}

ssmp_grid ssmp_default_grid(void)
{
    return from_spec(ssmp::GridSpec{});
}

ssmp_sim_config ssmp_default_sim_config(void)
{
    ssmp::SimConfig c;
    return {c.dt, c.jump_eps, c.n_paths, c.seed, c.T_max};
}

int ssmp_grid_from_json(const char* json, ssmp_grid* out)
{
    return guarded([&] {
        need(json, "json");
        need(out, "out");
        *out = from_spec(ssmp::parse_grid(json));
    });
}

int ssmp_grid_points(ssmp_grid grid, double* x, double* xi)
{
    return guarded([&] {
        ssmp::GridSpec s = to_spec(grid);
        for (int j = 0; j < s.n; ++j) {
            if (x)
                x[j] = s.x(j);
            if (xi)
                xi[j] = s.xi(j);
        }
    });
}

int ssmp_bernstein_from_json(const char* json, ssmp_bernstein** out)
{
    return guarded([&] {
        need(json, "json");
        need(out, "out");
        *out = nullptr;
        *out = new ssmp_bernstein{ssmp::parse_family(json)};
    });
}

void ssmp_bernstein_free(ssmp_bernstein* phi)
{
    delete phi;
}

int ssmp_bernstein_eval(const ssmp_bernstein* phi, double re, double im, double* out_re, double* out_im)
{
    return guarded([&] {
        need(phi, "phi");
        ssmp::cplx v = phi->phi(ssmp::cplx(re, im));
        if (out_re)
            *out_re = v.real();
        if (out_im)
            *out_im = v.imag();
    });
}

int ssmp_bgamma(const ssmp_bernstein* phi, double tol, size_t n, const double* re, const double* im,
                double* out_re, double* out_im)
{
    return guarded([&] {
        need(phi, "phi");
        need(re, "re");
        need(im, "im");
        ssmp::BernsteinGamma W(phi->phi, tol > 0.0 ? tol : 1e-8);
        for (size_t i = 0; i < n; ++i) {
            ssmp::cplx v = W(ssmp::cplx(re[i], im[i]));
            if (out_re)
                out_re[i] = v.real();
            if (out_im)
                out_im[i] = v.imag();
        }
    });
}

int ssmp_exponent_from_json(const char* json, ssmp_exponent** out)
{
    return guarded([&] {
        need(json, "json");
        need(out, "out");
        *out = nullptr;
        *out = new ssmp_exponent{ssmp::parse_exponent(json)};
    });
}

void ssmp_exponent_free(ssmp_exponent* e)
{
    delete e;
}

int ssmp_exponent_psi(const ssmp_exponent* e, double xi, double* out_re, double* out_im)
{
    return guarded([&] {
        need(e, "exponent");
        ssmp::cplx v = e->e(xi);
        if (out_re)
            *out_re = v.real();
        if (out_im)
            *out_im = v.imag();
    });
}

int ssmp_multiplier(const ssmp_exponent* e, ssmp_grid grid, int kind, double tol, double* re, double* im)
{
    return guarded([&] {
        need(e, "exponent");
        ssmp::GridSpec s = to_spec(grid);
        ssmp::WienerHopfPair p = pair_of(e->e);
        double t = tol > 0.0 ? tol : 1e-8;
        ssmp::MultiplierLine m;
        if (kind == SSMP_MULTIPLIER_H)
            m = ssmp::multiplier_h(p, s, t);
        else if (kind == SSMP_MULTIPLIER_LAMBDA)
            m = ssmp::multiplier_lambda(p, s, t);
        else
            ssmp::fail(ssmp::ErrorKind::Validation, "unknown multiplier kind");
        split(m.values, re, im);
    });
}

int ssmp_classify(const ssmp_exponent* e, ssmp_grid grid, double xi_max, int* verdict, char* buf, size_t cap,
                  size_t* len)
{
    return guarded([&] {
        need(e, "exponent");
        ssmp::ClassifyOptions opt;
        if (xi_max > 0.0)
            opt.xi_max = xi_max;
        ssmp::SpectrumReport r = ssmp::classify(pair_of(e->e), to_spec(grid), opt);
        if (verdict)
            *verdict = int(r.verdict);
        std::string js = ssmp::report_json(r);
        if (len)
            *len = js.size();
        if (buf && cap > 0) {
            size_t k = std::min(cap - 1, js.size());
            std::memcpy(buf, js.data(), k);
            buf[k] = '\0';
        }
    });
}

int ssmp_eigenfunction(const ssmp_exponent* e, ssmp_grid grid, int method, int variant, double* J)
{
    return guarded([&] {
        need(e, "exponent");
        need(J, "J");
        ssmp::GridSpec s = to_spec(grid);
        ssmp::WienerHopfPair p = pair_of(e->e);
        if (method == SSMP_EIGEN_FFT) {
            ssmp::GridFunction g = ssmp::eigenfunction_fft(p, s);
            for (int j = 0; j < s.n; ++j)
                J[j] = g.values[j].real();
            return;
        }
        const double nan = std::numeric_limits<double>::quiet_NaN();
        if (method == SSMP_EIGEN_SERIES) {
            const ssmp::BernsteinFunction& plus = p.plus;
            if (!(plus.family() == "drift" && plus.drift() == 1.0 && plus.phi0() == 0.0))
                ssmp::fail(ssmp::ErrorKind::Validation, "series eigenfunction needs plus = id");
            ssmp::SeriesEigenfunction se(p.minus);
            for (int j = 0; j < s.n; ++j) {
                try {
                    J[j] = ssmp::eigenfunction_series(se, s.x(j));
                } catch (const ssmp::Error& err) {
                    if (err.kind() != ssmp::ErrorKind::Overflow)
                        throw;
                    J[j] = nan;
                }
            }
            return;
        }
        if (method == SSMP_EIGEN_WRIGHT) {
            const ssmp::ClosedForm* cp = closed_form(p.plus, ssmp::ClosedFormKind::GammaRatioPlus);
            const ssmp::ClosedForm* cm = closed_form(p.minus, ssmp::ClosedFormKind::GammaRatioMinus);
            if (!cp || !cm)
                ssmp::fail(ssmp::ErrorKind::Validation, "wright eigenfunction needs gamma-ratio factors");
            auto v = variant == 1 ? ssmp::WrightVariant::Proof : ssmp::WrightVariant::Statement;
            for (int j = 0; j < s.n; ++j) {
                try {
                    J[j] = ssmp::gamma_ratio_eigenfunction(cp->p1, cm->p1, cm->p2, s.x(j), v);
                } catch (const ssmp::Error& err) {
                    if (err.kind() != ssmp::ErrorKind::Overflow)
                        throw;
                    J[j] = nan;
                }
            }
            return;
        }
        ssmp::fail(ssmp::ErrorKind::Validation, "unknown eigenfunction method");
    });
}

int ssmp_sample(const char* spec, ssmp_grid grid, double* re, double* im)
{
    return guarded([&] {
        need(spec, "spec");
        ssmp::GridFunction f = ssmp::function_on_grid(spec, to_spec(grid));
        split(f.values, re, im);
    });
}

int ssmp_evolve(const ssmp_exponent* e, ssmp_grid grid, double t, const double* f_re, const double* f_im, int force,
                double tail_threshold, double* out_re, double* out_im, int* domain_warning)
{
    return guarded([&] {
        need(e, "exponent");
        ssmp::GridSpec s = to_spec(grid);
        ssmp::EvolutionPlan plan = ssmp::make_plan(pair_of(e->e), s);
        ssmp::EvolveOptions opt;
        opt.force = force != 0;
        if (tail_threshold > 0.0)
            opt.tail_threshold = tail_threshold;
        ssmp::EvolveDiagnostics diag;
        ssmp::GridFunction out = ssmp::evolve(plan, t, grid_function(s, f_re, f_im), opt, &diag);
        split(out.values, out_re, out_im);
        if (domain_warning)
            *domain_warning = diag.domain_warning ? 1 : 0;
    });
}

int ssmp_generator_check(const ssmp_exponent* e, ssmp_grid grid, const double* f_re, const double* f_im,
                         double* pdo_re, double* pdo_im, double* ido_re, double* ido_im)
{
    return guarded([&] {
        need(e, "exponent");
        if (!e->e.quadruplet())
            ssmp::fail(ssmp::ErrorKind::Validation, "generator check needs the quadruplet form");
        ssmp::GridSpec s = to_spec(grid);
        ssmp::GridFunction f = grid_function(s, f_re, f_im);
        ssmp::GridFunction pdo = ssmp::generator_pdo(e->e, f);
        ssmp::GridFunction ido = ssmp::generator_ido(*e->e.quadruplet(), f);
        split(pdo.values, pdo_re, pdo_im);
        split(ido.values, ido_re, ido_im);
    });
}

int ssmp_simulate(const ssmp_exponent* e, const char* f_spec, const ssmp_grid* grid, double x, double t,
                  const ssmp_sim_config* cfg, ssmp_estimate* out)
{
    return guarded([&] {
        need(e, "exponent");
        need(f_spec, "f_spec");
        need(out, "out");
        ssmp::SimConfig c;
        if (cfg)
            c = {cfg->dt, cfg->jump_eps, cfg->n_paths, cfg->seed, cfg->t_max};
        ssmp::GridSpec s;
        if (grid)
            s = to_spec(*grid);
        auto f = ssmp::function_on_r(f_spec, grid ? &s : nullptr);
        ssmp::MCEstimate m = ssmp::mc_expectation(e->e, f, x, t, c);
        *out = {m.mean, m.stderr_, m.n_effective, m.absorbed_fraction};
    });
}

int ssmp_write_csv(const char* path, size_t n_cols, const char* const* header, size_t rows,
                   const double* const* columns)
{
    return guarded([&] {
        need(path, "path");
        ssmp::CsvTable t;
        for (size_t k = 0; k < n_cols; ++k) {
            need(header[k], "header");
            t.header.emplace_back(header[k]);
            if (rows == 0) {
                t.columns.emplace_back();
                continue;
            }
            need(columns[k], "column");
            t.columns.emplace_back(columns[k], columns[k] + rows);
        }
        ssmp::write_csv(path, t);
    });
}

} // extern "C"
