#ifndef SAMPLEDRANK_ORACLE_H_
#define SAMPLEDRANK_ORACLE_H_

// Brute-force references for testing the analytic engine. Exponential, exact
// integer counting; not used by the library itself.

#include <cstdint>

#include "sampledrank/metrics.h"
#include "sampledrank/rank_sampling.h"

namespace sampledrank::oracle {

// Counts, over all C(n-1, m) subsets of irrelevant items, how many outrank r.
// Requires n <= 15.
RankPmf EnumerateWithoutReplacementPmf(Rank rank, Rank catalog_size,
                                       std::int64_t samples);

// Exact integer counts over the (n-1)^m ordered draws via Pascal's
// recurrence, normalised once. Requires (n-1)^m < 2^53.
RankPmf EnumerateWithReplacementPmf(Rank rank, Rank catalog_size,
                                    std::int64_t samples);

struct Estimate {
  double mean;
  double standard_error;
};

// Monte Carlo estimate of the expected sampled metric for a single relevant
// item at `rank`: mean of SimplifiedMetric(sampled rank, m+1, spec) over
// `repetitions` draws. repetitions >= 100.
Estimate McEstimate(Rank rank, Rank catalog_size, const SamplingScheme& scheme,
                    const MetricSpec& spec, std::int64_t repetitions,
                    std::uint64_t seed);

}  // namespace sampledrank::oracle

#endif  // SAMPLEDRANK_ORACLE_H_
