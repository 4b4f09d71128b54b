#pragma once

#include <cstdint>
#include <random>

namespace maxenergy {

using Engine = std::mt19937_64;

/// Reproducible random stream identified by (seed, stream id).
///
/// Identical (seed, stream) pairs produce identical engines; substreams give
/// independent, deterministic children for batched or parallel estimation.
struct RngStream {
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;

    Engine engine() const;
    RngStream substream(std::uint64_t index) const;
};

/// Uniform draw on the open interval (0, 1).
double uniform_open(Engine& eng);

/// Standard normal draw.
double standard_normal(Engine& eng);

std::uint64_t splitmix64(std::uint64_t x);

} // namespace maxenergy
