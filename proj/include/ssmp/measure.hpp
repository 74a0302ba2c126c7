#pragma once

#include "ssmp/special.hpp"

#include <vector>

namespace ssmp {

struct Atom {
    double location;
    double mass;
};

// Density of a Levy measure on (0, inf), tabulated at log-spaced points
// y_j = y_min (y_max/y_min)^{j/(n-1)}, extended by power tails c y^{-1-a}.
struct TabulatedDensity {
    double y_min = 0.0;
    double y_max = 0.0;
    std::vector<double> values;
    double lower_exponent = 0.0;
    double upper_exponent = 1.0;

    double density(double y) const;
};

// Atomic approximation of a tabulated density: Gauss nodes in log y, plus
// the exact power-law piece c y^{-1-a} on (0, tiny_end] handled by series.
struct DiscreteDensity {
    std::vector<double> nodes;
    std::vector<double> weights;
    double tiny_coef = 0.0;
    double tiny_exponent = 0.0;
    double tiny_end = 0.0;
    double dropped_mass = 0.0;

    // int_0^{tiny_end} (1 - e^{-zy}) c y^{-1-a} dy
    cplx tiny_laplace(cplx z) const;
    // int_0^{tiny_end} (1 - e^{i xi y} + i xi y) c y^{-1-a} dy
    cplx tiny_levy(double xi) const;
    // int_0^{tiny_end} y^k c y^{-1-a} dy
    double tiny_moment(int k) const;
};

// max_lower_exponent is 1 for Bernstein measures and 2 for Levy measures.
void validate_density(const TabulatedDensity& d, double max_lower_exponent);

DiscreteDensity discretize(const TabulatedDensity& d, int gauss_points = 8);

} // namespace ssmp
