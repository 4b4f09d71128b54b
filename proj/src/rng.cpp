#include "maxenergy/rng.hpp"

namespace maxenergy {

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

Engine RngStream::engine() const
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    return Engine(seq);
}

RngStream RngStream::substream(std::uint64_t index) const
{
    return {seed, splitmix64(stream ^ splitmix64(index + 0x5851f42d4c957f2dULL))};
}

double uniform_open(Engine& eng)
{
    // 53 random bits, shifted off zero by half an ulp of the grid.
    return (static_cast<double>(eng() >> 11) + 0.5) * 0x1.0p-53;
}

double standard_normal(Engine& eng)
{
    std::normal_distribution<double> normal(0.0, 1.0);
    return normal(eng);
}

} // namespace maxenergy
