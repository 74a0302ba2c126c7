#pragma once

#include <span>
#include <vector>

namespace ssmp {

struct GaussRule {
    std::vector<double> nodes;   // on [-1, 1]
    std::vector<double> weights;
};

// Gauss-Legendre rules; points in {4, 8, 16, 32}.
const GaussRule& gauss_legendre(int points);

// Even-index Bernoulli numbers B_2, B_4, ..., B_{2k}.
std::span<const double> bernoulli_even();

} // namespace ssmp
