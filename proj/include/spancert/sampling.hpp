#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "spancert/geometry.hpp"

namespace spancert {

// Van der Corput radical inverse in base 2.  The result is a dyadic rational
// with at most 32 fractional bits, so it is exact in double precision.
inline double vdc32(std::uint32_t i) {
    i = (i >> 16) | (i << 16);
    i = ((i & 0x00ff00ffu) << 8) | ((i & 0xff00ff00u) >> 8);
    i = ((i & 0x0f0f0f0fu) << 4) | ((i & 0xf0f0f0f0u) >> 4);
    i = ((i & 0x33333333u) << 2) | ((i & 0xccccccccu) >> 2);
    i = ((i & 0x55555555u) << 1) | ((i & 0xaaaaaaaau) >> 1);
    return std::ldexp(static_cast<double>(i), -32);
}

// Halton radical inverse for an odd prime base.
inline double halton(std::uint64_t i, int base) {
    double f = 1.0;
    double r = 0.0;
    while (i > 0) {
        f /= static_cast<double>(base);
        r += f * static_cast<double>(i % static_cast<std::uint64_t>(base));
        i /= static_cast<std::uint64_t>(base);
    }
    return r;
}

inline constexpr int kHaltonBases[] = {3, 5, 7, 11, 13};

// The i-th point of a deterministic low-discrepancy sequence over
// [0,1] x x_domain.  The seed shifts the whole sequence; element 0 of seed 0
// is the sequence element with index 1 so t = 0 never occurs.
inline PointTX domain_sample(std::uint64_t i, std::uint64_t seed, int dim,
                             const std::vector<std::array<double, 2>>& x_domain) {
    if (dim < 1 || static_cast<std::size_t>(dim) > std::size(kHaltonBases)) {
        throw std::invalid_argument("domain_sample: unsupported dimension");
    }
    if (x_domain.size() != static_cast<std::size_t>(dim)) {
        throw std::invalid_argument("domain_sample: domain/dimension mismatch");
    }
    const std::uint64_t m = seed + i + 1;
    PointTX p;
    p.t = vdc32(static_cast<std::uint32_t>(m));
    p.x.resize(static_cast<std::size_t>(dim));
    for (int c = 0; c < dim; ++c) {
        const double u = halton(m, kHaltonBases[c]);
        const auto& iv = x_domain[static_cast<std::size_t>(c)];
        p.x[static_cast<std::size_t>(c)] = iv[0] + u * (iv[1] - iv[0]);
    }
    return p;
}

}  // namespace spancert
