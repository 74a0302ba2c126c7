#ifndef SSMP_SSMP_H
#define SSMP_SSMP_H

#include <stddef.h>
#include <stdint.h>

#if defined(SSMP_BUILDING_LIBRARY)
#define SSMP_API __attribute__((visibility("default")))
#else
#define SSMP_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

enum {
    SSMP_OK = 0,
    SSMP_INVALID = 1,
    SSMP_DOMAIN = 2,
    SSMP_QUADRATURE = 3,
    SSMP_CONVERGENCE = 4,
    SSMP_BRANCH = 5,
    SSMP_METADATA = 6,
    SSMP_OVERFLOW = 7,
    SSMP_RESOLUTION = 8,
    SSMP_CONDITION = 9,
    SSMP_INTERPOLATION = 10,
    SSMP_CONFIG = 11,
    SSMP_IO = 12,
    SSMP_INTERNAL = 13
};

enum { SSMP_MULTIPLIER_H = 0, SSMP_MULTIPLIER_LAMBDA = 1 };

enum { SSMP_EIGEN_SERIES = 0, SSMP_EIGEN_WRIGHT = 1, SSMP_EIGEN_FFT = 2 };

enum {
    SSMP_VERDICT_POINT = 0,
    SSMP_VERDICT_RESIDUAL = 1,
    SSMP_VERDICT_CONTINUOUS = 2,
    SSMP_VERDICT_APPROXIMATE_ONLY = 3,
    SSMP_VERDICT_INCONCLUSIVE = 4
};

typedef struct ssmp_bernstein ssmp_bernstein;
typedef struct ssmp_exponent ssmp_exponent;

typedef struct {
    double x_min;
    double x_max;
    int32_t n;
} ssmp_grid;

typedef struct {
    double dt;
    double jump_eps;
    int64_t n_paths;
    uint64_t seed;
    double t_max;
} ssmp_sim_config;

typedef struct {
    double mean;
    double stderr_;
    int64_t n_effective;
    double absorbed_fraction;
} ssmp_estimate;

/* Message of the last failed call on this thread. */
SSMP_API const char* ssmp_last_error(void);
SSMP_API const char* ssmp_status_name(int status);
SSMP_API const char* ssmp_verdict_name(int verdict);

SSMP_API ssmp_grid ssmp_default_grid(void);
SSMP_API ssmp_sim_config ssmp_default_sim_config(void);
SSMP_API int ssmp_grid_from_json(const char* json, ssmp_grid* out);
/* x_j and xi_k of the grid; each array holds n values. */
SSMP_API int ssmp_grid_points(ssmp_grid grid, double* x, double* xi);

SSMP_API int ssmp_bernstein_from_json(const char* json, ssmp_bernstein** out);
SSMP_API void ssmp_bernstein_free(ssmp_bernstein* phi);
SSMP_API int ssmp_bernstein_eval(const ssmp_bernstein* phi, double re, double im, double* out_re, double* out_im);
/* W_phi at n points; tol <= 0 selects the default 1e-8. */
SSMP_API int ssmp_bgamma(const ssmp_bernstein* phi, double tol, size_t n, const double* re, const double* im,
                         double* out_re, double* out_im);

SSMP_API int ssmp_exponent_from_json(const char* json, ssmp_exponent** out);
SSMP_API void ssmp_exponent_free(ssmp_exponent* e);
SSMP_API int ssmp_exponent_psi(const ssmp_exponent* e, double xi, double* out_re, double* out_im);

/* Multiplier on the grid frequencies, n values each. */
SSMP_API int ssmp_multiplier(const ssmp_exponent* e, ssmp_grid grid, int kind, double tol, double* re, double* im);

/* Writes the report as JSON into buf (NUL-terminated if it fits); *len gets
   the length without the NUL. */
SSMP_API int ssmp_classify(const ssmp_exponent* e, ssmp_grid grid, double xi_max, int* verdict, char* buf,
                           size_t cap, size_t* len);

/* J on the grid points. The wright method needs gamma-ratio factors,
   variant 0 = statement, 1 = proof. */
SSMP_API int ssmp_eigenfunction(const ssmp_exponent* e, ssmp_grid grid, int method, int variant, double* J);

/* Samples a function spec (h:eps:beta, gauss:a, csv:path) on the grid. */
SSMP_API int ssmp_sample(const char* spec, ssmp_grid grid, double* re, double* im);

SSMP_API int ssmp_evolve(const ssmp_exponent* e, ssmp_grid grid, double t, const double* f_re, const double* f_im,
                         int force, double tail_threshold, double* out_re, double* out_im, int* domain_warning);

/* PDO and IDO forms of the generator applied to f; needs both pair and
   quadruplet. */
SSMP_API int ssmp_generator_check(const ssmp_exponent* e, ssmp_grid grid, const double* f_re, const double* f_im,
                                  double* pdo_re, double* pdo_im, double* ido_re, double* ido_im);

/* Monte Carlo E_x[f(X_t)] for f given as r, h:eps:beta, gauss:a or csv:path
   (grid may be NULL unless csv). */
SSMP_API int ssmp_simulate(const ssmp_exponent* e, const char* f_spec, const ssmp_grid* grid, double x, double t,
                           const ssmp_sim_config* cfg, ssmp_estimate* out);

/* CSV with a header row, columns given as arrays of rows values. */
SSMP_API int ssmp_write_csv(const char* path, size_t n_cols, const char* const* header, size_t rows,
                            const double* const* columns);

#ifdef __cplusplus
}
#endif

#endif
