#pragma once

#include <span>

#include "fournls/spectrum.hpp"

namespace fournls::fft {

// In-place unnormalized DFTs backed by FFTW. Plans are cached per length and
// shared; executing them is safe from concurrent threads.

/// X_k = sum_j x_j e^{-2 pi i jk/M}
void forward(std::span<Complex> data);
/// x_j = sum_k X_k e^{+2 pi i jk/M}
void backward(std::span<Complex> data);

}  // namespace fournls::fft
