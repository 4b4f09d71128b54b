#include "maxenergy/montecarlo.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "maxenergy/error.hpp"

namespace maxenergy {

namespace {

McEstimate aggregate_batches(const std::array<double, kBatches>& means, std::size_t samples,
                             BatchAggregate aggregate)
{
    double mean = 0.0;
    for (double m : means)
        mean += m;
    mean /= kBatches;

    double var = 0.0;
    for (double m : means)
        var += (m - mean) * (m - mean);
    var /= (kBatches - 1);
    double se = std::sqrt(var / kBatches);

    if (aggregate == BatchAggregate::Median) {
        auto sorted = means;
        std::sort(sorted.begin(), sorted.end());
        mean = 0.5 * (sorted[kBatches / 2 - 1] + sorted[kBatches / 2]);
        se *= std::sqrt(std::numbers::pi / 2.0);
    }
    return {mean, se, samples};
}

std::size_t batch_size(std::size_t samples, int b)
{
    const std::size_t base = samples / kBatches;
    return base + (static_cast<std::size_t>(b) < samples % kBatches ? 1 : 0);
}

void require_samples(std::size_t samples)
{
    if (samples < kMinSamples)
        throw DomainError("Monte-Carlo estimates need at least " + std::to_string(kMinSamples) +
                          " samples, got " + std::to_string(samples));
}

} // namespace

McEstimate batch_estimate(std::size_t samples, const RngStream& rng,
                          const std::function<double(Engine&)>& draw, BatchAggregate aggregate)
{
    require_samples(samples);
    std::array<double, kBatches> means{};
    for (int b = 0; b < kBatches; ++b) {
        Engine eng = rng.substream(static_cast<std::uint64_t>(b)).engine();
        const std::size_t count = batch_size(samples, b);
        double sum = 0.0;
        for (std::size_t i = 0; i < count; ++i)
            sum += draw(eng);
        means[b] = sum / static_cast<double>(count);
    }
    return aggregate_batches(means, samples, aggregate);
}

McPair batch_estimate_pair(std::size_t samples, const RngStream& rng,
                           const std::function<void(Engine&, double&, double&)>& draw,
                           BatchAggregate aggregate)
{
    require_samples(samples);
    std::array<double, kBatches> first{};
    std::array<double, kBatches> second{};
    for (int b = 0; b < kBatches; ++b) {
        Engine eng = rng.substream(static_cast<std::uint64_t>(b)).engine();
        const std::size_t count = batch_size(samples, b);
        double s1 = 0.0;
        double s2 = 0.0;
        for (std::size_t i = 0; i < count; ++i) {
            double a = 0.0;
            double c = 0.0;
            draw(eng, a, c);
            s1 += a;
            s2 += c;
        }
        first[b] = s1 / static_cast<double>(count);
        second[b] = s2 / static_cast<double>(count);
    }
    return {aggregate_batches(first, samples, aggregate), aggregate_batches(second, samples, aggregate)};
}

} // namespace maxenergy
