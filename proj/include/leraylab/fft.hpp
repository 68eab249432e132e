#pragma once

#include <vector>

#include "leraylab/grid.hpp"

namespace leray {

/// Unnormalized forward DFT (physical -> frequency), in place.
void fft_forward(const Grid& g, std::vector<Complex>& data);

/// Unnormalized backward DFT (frequency -> physical), in place.
void fft_backward(const Grid& g, std::vector<Complex>& data);

}  // namespace leray
