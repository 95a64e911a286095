// fft.hpp
// In-place radix-2 complex FFT and d-dimensional transforms on M^d grids.
// Forward uses e^{-2pi i jk/M}; no normalization is applied by either
// direction (callers scale by 1/M^d where needed).
#pragma once

#include <complex>
#include <vector>

namespace gibbslab {

using cplx = std::complex<double>;

// One-dimensional transform. len must be a power of two.
void fft_inplace(cplx* data, std::size_t len, bool inverse);

// d-dimensional transform of a row-major M^d array (axis d-1 contiguous).
void fft_nd_inplace(std::vector<cplx>& data, int d, int M, bool inverse);

bool is_power_of_two(int m);
int next_power_of_two(int m);

}  // namespace gibbslab
