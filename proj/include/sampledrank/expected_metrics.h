#ifndef SAMPLEDRANK_EXPECTED_METRICS_H_
#define SAMPLEDRANK_EXPECTED_METRICS_H_

// Expected value of a metric measured on the sampled rank, i.e. within a
// ranking of m+1 items (the relevant one plus m sampled irrelevant ones).
// Single relevant item only.

#include <string>

#include "sampledrank/metrics.h"
#include "sampledrank/rank_sampling.h"

namespace sampledrank {

// Sum over the rank PMF of SimplifiedMetric(i, m+1, spec). The cutoff of
// `spec` applies to the (m+1)-item ranking.
double ExpectedMetric(Rank rank, Rank catalog_size,
                      const SamplingScheme& scheme, const MetricSpec& spec);

// (n-r)/(n-1) for every m: sampled AUC is unbiased.
double ExpectedAucClosed(Rank rank, Rank catalog_size, std::int64_t samples);

// Binomial CDF at k-1 with success probability (r-1)/(n-1). Sampling with
// replacement; 1 <= k <= m+1.
double ExpectedRecallClosed(Rank rank, Rank catalog_size, std::int64_t samples,
                            Rank cutoff);

// (1 - (1-p)^(m+1)) / (p (m+1)) with p = (r-1)/(n-1), and 1 at r = 1.
// Sampling with replacement.
double ExpectedApClosed(Rank rank, Rank catalog_size, std::int64_t samples);

struct LinearCoefficients {
  double slope;
  double intercept;
};

// With a single sampled item the expected metric is linear in the true rank:
// E = slope * r + intercept, for either replacement mode.
LinearCoefficients LinearCoefficientsM1(const MetricSpec& spec,
                                        Rank catalog_size);

// Mean of ExpectedMetric over the instances of `algorithm`. Throws
// std::invalid_argument if any instance has more than one relevant item.
double ExpectedMeanMetric(const EvalDataset& dataset,
                          const std::string& algorithm,
                          const SamplingScheme& scheme, const MetricSpec& spec);

}  // namespace sampledrank

#endif  // SAMPLEDRANK_EXPECTED_METRICS_H_
