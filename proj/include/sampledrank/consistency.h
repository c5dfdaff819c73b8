#ifndef SAMPLEDRANK_CONSISTENCY_H_
#define SAMPLEDRANK_CONSISTENCY_H_

// Whether sampled evaluation preserves, in expectation, the ordering of
// algorithms under the exact metric.

#include <map>
#include <string>
#include <vector>

#include "sampledrank/metrics.h"
#include "sampledrank/rank_sampling.h"

namespace sampledrank {

// Mean differences smaller than this count as ties.
inline constexpr double kTieTolerance = 1e-12;

// -1, 0 or +1 for a mean difference, with ties inside kTieTolerance.
int OrderSign(double difference);

struct PairComparison {
  std::string first;
  std::string second;
  double exact_difference;    // exact(first) - exact(second)
  double sampled_difference;  // expected sampled(first) - (second)
  bool consistent;
};

struct Inversion {
  std::string first;
  std::string second;
  int exact_order;    // OrderSign of the exact difference
  int sampled_order;  // OrderSign of the expected sampled difference
};

struct ComparisonReport {
  MetricSpec spec;
  SamplingScheme scheme;
  std::map<std::string, double> exact_means;
  std::map<std::string, double> sampled_means;
  // Every ordered pair (a, b) with a != b, so (b, a) mirrors (a, b).
  std::vector<PairComparison> pairs;
  std::vector<Inversion> inversions;

  bool consistent() const { return inversions.empty(); }
};

// Exact means against analytic expected sampled means. Single relevant item
// per instance.
ComparisonReport CheckConsistency(const EvalDataset& dataset,
                                  const MetricSpec& spec,
                                  const SamplingScheme& scheme);

struct SweepResult {
  MetricSpec spec;
  Replacement replacement;
  std::vector<std::int64_t> sample_counts;  // strictly increasing
  // means[algorithm][j] is the expected mean at sample_counts[j].
  std::map<std::string, std::vector<double>> means;
};

// Expected sampled means per (algorithm, m). Sample counts are evaluated in
// parallel; the result is independent of the thread count.
SweepResult SweepSamples(const EvalDataset& dataset, const MetricSpec& spec,
                         std::vector<std::int64_t> sample_counts,
                         Replacement replacement, int threads = 0);

// Serial reference for SweepSamples.
SweepResult SweepSamplesSerial(const EvalDataset& dataset,
                               const MetricSpec& spec,
                               std::vector<std::int64_t> sample_counts,
                               Replacement replacement);

struct Crossover {
  std::string first;
  std::string second;
  std::int64_t samples_before;
  std::int64_t samples_after;
  int order_before;  // OrderSign(first - second) at samples_before
  int order_after;
};

// Consecutive sample counts between which the order of a pair changes.
// Pairs are reported once, with first < second by name.
std::vector<Crossover> CrossoverPoints(const SweepResult& sweep);

}  // namespace sampledrank

#endif  // SAMPLEDRANK_CONSISTENCY_H_
