#pragma once

#include <cstddef>
#include <functional>

#include "maxenergy/rng.hpp"

namespace maxenergy {

/// Monte-Carlo estimate with batch-based standard error.
struct McEstimate {
    double estimate = 0.0;
    double std_error = 0.0;
    std::size_t samples = 0;
};

enum class BatchAggregate { Mean, Median };

inline constexpr int kBatches = 32;
inline constexpr std::size_t kMinSamples = 100;

/// Averages `draw` over `samples` draws split into kBatches batches.
///
/// Batch b draws from rng.substream(b), so the result does not depend on how
/// batches are scheduled. Median aggregation takes the median of batch means and
/// scales the batch spread by sqrt(pi/2).
McEstimate batch_estimate(std::size_t samples, const RngStream& rng,
                          const std::function<double(Engine&)>& draw,
                          BatchAggregate aggregate = BatchAggregate::Mean);

/// Same as batch_estimate for a pair of correlated quantities drawn together.
struct McPair {
    McEstimate first;
    McEstimate second;
};

McPair batch_estimate_pair(std::size_t samples, const RngStream& rng,
                           const std::function<void(Engine&, double&, double&)>& draw,
                           BatchAggregate aggregate = BatchAggregate::Mean);

} // namespace maxenergy
