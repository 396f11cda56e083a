#pragma once

#include <cstdint>
#include <vector>

namespace iqsim {

// Sampled in-phase / quadrature photocurrent pair for one pixel and one
// chirp. i and q always have equal length.
struct IqTrace {
    std::vector<double> i;
    std::vector<double> q;
    double sample_rate_hz = 0.0;
    std::uint32_t pixel = 0;
    std::uint32_t chirp_index = 0;

    std::size_t size() const { return i.size(); }
};

} // namespace iqsim
