#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace iqsim::fft {

// Smallest power of two >= n (n >= 1).
std::size_t next_pow2(std::size_t n);

// In-place iterative radix-2 DIT transform; data.size() must be a power of
// two. Forward transform, no normalization.
void transform(std::vector<std::complex<double>>& data);

} // namespace iqsim::fft
