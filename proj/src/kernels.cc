#include "sampledrank/kernels.h"

#include <cmath>
#include <exception>
#include <stdexcept>

#include <omp.h>

#include "sampledrank/expected_metrics.h"

namespace sampledrank {
namespace {

struct FlatInstance {
  std::size_t algorithm;
  const PredictedRanks* ranks;
};

struct SimulationPlan {
  RepetitionMeans result;
  std::vector<FlatInstance> instances;
  std::vector<std::size_t> instances_per_algorithm;
};

SimulationPlan Plan(const EvalDataset& dataset,
                    const std::vector<MetricSpec>& specs,
                    const SamplingScheme& scheme, std::int64_t repetitions) {
  if (repetitions < 1) {
    throw std::invalid_argument("repetitions must be at least 1");
  }
  if (specs.empty()) throw std::invalid_argument("no metrics requested");
  SimulationPlan plan;
  plan.result.algorithms = dataset.algorithms();
  plan.result.specs = specs;
  for (std::size_t a = 0; a < plan.result.algorithms.size(); ++a) {
    const auto& list = dataset.instances(plan.result.algorithms[a]);
    plan.instances_per_algorithm.push_back(list.size());
    for (const auto& instance : list) {
      scheme.Validate(instance.ranks.catalog_size(), instance.ranks.size());
      plan.instances.push_back({a, &instance.ranks});
    }
  }
  plan.result.values.assign(
      plan.result.algorithms.size() * specs.size(),
      std::vector<double>(static_cast<std::size_t>(repetitions), 0.0));
  return plan;
}

void RunRepetition(SimulationPlan& plan, const SamplingScheme& scheme,
                   const RngStream& master, std::int64_t repetition) {
  auto& result = plan.result;
  const std::size_t spec_count = result.specs.size();
  const RngStream stream = master.Split(static_cast<std::uint64_t>(repetition));
  std::vector<double> sums(result.values.size(), 0.0);
  for (std::size_t j = 0; j < plan.instances.size(); ++j) {
    const auto& instance = plan.instances[j];
    RngStream rng = stream.Split(j);
    const PredictedRanks sampled(
        scheme.samples + static_cast<Rank>(instance.ranks->size()),
        MonteCarloRanks(*instance.ranks, scheme, rng));
    for (std::size_t s = 0; s < spec_count; ++s) {
      sums[instance.algorithm * spec_count + s] +=
          ExactMetric(sampled, result.specs[s]);
    }
  }
  for (std::size_t cell = 0; cell < sums.size(); ++cell) {
    const auto count =
        static_cast<double>(plan.instances_per_algorithm[cell / spec_count]);
    result.values[cell][static_cast<std::size_t>(repetition)] =
        sums[cell] / count;
  }
}

}  // namespace

RepetitionMeans SimulateRepetitionsSerial(const EvalDataset& dataset,
                                          const std::vector<MetricSpec>& specs,
                                          const SamplingScheme& scheme,
                                          std::int64_t repetitions,
                                          std::uint64_t seed) {
  SimulationPlan plan = Plan(dataset, specs, scheme, repetitions);
  const RngStream master(seed);
  for (std::int64_t i = 0; i < repetitions; ++i) {
    RunRepetition(plan, scheme, master, i);
  }
  return std::move(plan.result);
}

RepetitionMeans SimulateRepetitions(const EvalDataset& dataset,
                                    const std::vector<MetricSpec>& specs,
                                    const SamplingScheme& scheme,
                                    std::int64_t repetitions,
                                    std::uint64_t seed, int threads) {
  SimulationPlan plan = Plan(dataset, specs, scheme, repetitions);
  const RngStream master(seed);
  if (threads <= 0) threads = omp_get_max_threads();
  std::exception_ptr failure;
#pragma omp parallel for schedule(static) num_threads(threads)
  for (std::int64_t i = 0; i < repetitions; ++i) {
    try {
      RunRepetition(plan, scheme, master, i);
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return std::move(plan.result);
}

Summary Summarize(const std::vector<double>& values) {
  if (values.empty()) throw std::invalid_argument("no values to summarize");
  double sum = 0.0;
  for (const double v : values) sum += v;
  const double mean = sum / static_cast<double>(values.size());
  double squares = 0.0;
  for (const double v : values) squares += (v - mean) * (v - mean);
  return {mean, std::sqrt(squares / static_cast<double>(values.size()))};
}

std::vector<double> ExpectedCurveSerial(const MetricSpec& spec,
                                        Rank catalog_size,
                                        const std::vector<Rank>& ranks,
                                        const SamplingScheme& scheme) {
  std::vector<double> curve(ranks.size());
  for (std::size_t i = 0; i < ranks.size(); ++i) {
    curve[i] = ExpectedMetric(ranks[i], catalog_size, scheme, spec);
  }
  return curve;
}

std::vector<double> ExpectedCurve(const MetricSpec& spec, Rank catalog_size,
                                  const std::vector<Rank>& ranks,
                                  const SamplingScheme& scheme, int threads) {
  scheme.Validate(catalog_size);
  for (const Rank r : ranks) {
    if (r < 1 || r > catalog_size) {
      throw std::invalid_argument("rank outside the catalog");
    }
  }
  if (threads <= 0) threads = omp_get_max_threads();
  std::vector<double> curve(ranks.size());
  const auto count = static_cast<std::int64_t>(ranks.size());
#pragma omp parallel for schedule(dynamic, 16) num_threads(threads)
  for (std::int64_t i = 0; i < count; ++i) {
    curve[i] = ExpectedMetric(ranks[i], catalog_size, scheme, spec);
  }
  return curve;
}

}  // namespace sampledrank
