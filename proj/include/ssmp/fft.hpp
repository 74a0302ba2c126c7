#pragma once

#include "ssmp/special.hpp"

#include <vector>

namespace ssmp {

// Unnormalized in-place DFTs (sign -1 forward, +1 backward); plans are cached per length.
void fft_forward(std::vector<cplx>& data);
void fft_backward(std::vector<cplx>& data);

} // namespace ssmp
