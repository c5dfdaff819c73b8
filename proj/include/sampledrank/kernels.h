#ifndef SAMPLEDRANK_KERNELS_H_
#define SAMPLEDRANK_KERNELS_H_

// Data-parallel kernels. Each parallel kernel has a serial twin that is kept
// as the reference in tests and benchmarks; both produce bit-identical
// results for any thread count.

#include <cstdint>
#include <string>
#include <vector>

#include "sampledrank/metrics.h"
#include "sampledrank/rank_sampling.h"

namespace sampledrank {

// Per-repetition dataset means, values[cell][repetition], where cells run
// over algorithms (name order) and, within each, over `specs`.
struct RepetitionMeans {
  std::vector<std::string> algorithms;
  std::vector<MetricSpec> specs;
  std::vector<std::vector<double>> values;

  const std::vector<double>& at(std::size_t algorithm, std::size_t spec) const {
    return values[algorithm * specs.size() + spec];
  }
};

// Repetition i re-ranks every instance among a fresh sample drawn from
// substream Split(i) of the master seed (instance j of the dataset, counted
// across algorithms in name order, uses Split(i).Split(j)).
RepetitionMeans SimulateRepetitionsSerial(const EvalDataset& dataset,
                                          const std::vector<MetricSpec>& specs,
                                          const SamplingScheme& scheme,
                                          std::int64_t repetitions,
                                          std::uint64_t seed);

// Same as the serial kernel, with repetitions spread over `threads` OpenMP
// threads (0: runtime default).
RepetitionMeans SimulateRepetitions(const EvalDataset& dataset,
                                    const std::vector<MetricSpec>& specs,
                                    const SamplingScheme& scheme,
                                    std::int64_t repetitions,
                                    std::uint64_t seed, int threads = 0);

struct Summary {
  double mean;
  double std;  // population standard deviation across repetitions
};

Summary Summarize(const std::vector<double>& values);

// ExpectedMetric(r, catalog_size, scheme, spec) for each r in `ranks`.
std::vector<double> ExpectedCurveSerial(const MetricSpec& spec,
                                        Rank catalog_size,
                                        const std::vector<Rank>& ranks,
                                        const SamplingScheme& scheme);
std::vector<double> ExpectedCurve(const MetricSpec& spec, Rank catalog_size,
                                  const std::vector<Rank>& ranks,
                                  const SamplingScheme& scheme,
                                  int threads = 0);

}  // namespace sampledrank

#endif  // SAMPLEDRANK_KERNELS_H_
