#include "sampledrank/consistency.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <stdexcept>

#include <omp.h>

#include "sampledrank/expected_metrics.h"

namespace sampledrank {
namespace {

void CheckSampleCounts(const std::vector<std::int64_t>& sample_counts) {
  if (sample_counts.empty()) {
    throw std::invalid_argument("no sample counts to sweep");
  }
  for (std::size_t j = 0; j < sample_counts.size(); ++j) {
    if (sample_counts[j] < 1) {
      throw std::invalid_argument("sample counts must be at least 1");
    }
    if (j > 0 && sample_counts[j] <= sample_counts[j - 1]) {
      throw std::invalid_argument("sample counts must be strictly increasing");
    }
  }
}

SweepResult EmptySweep(const EvalDataset& dataset, const MetricSpec& spec,
                       std::vector<std::int64_t> sample_counts,
                       Replacement replacement) {
  CheckSampleCounts(sample_counts);
  SweepResult sweep{spec, replacement, std::move(sample_counts), {}};
  for (const auto& algorithm : dataset.algorithms()) {
    // Validate up front so a bad m fails before any work is done.
    for (const auto& instance : dataset.instances(algorithm)) {
      for (const auto m : sweep.sample_counts) {
        SamplingScheme{m, replacement}.Validate(instance.ranks.catalog_size(),
                                                instance.ranks.size());
      }
    }
    sweep.means[algorithm].assign(sweep.sample_counts.size(), 0.0);
  }
  return sweep;
}

}  // namespace

int OrderSign(double difference) {
  if (std::abs(difference) < kTieTolerance) return 0;
  return difference > 0 ? 1 : -1;
}

ComparisonReport CheckConsistency(const EvalDataset& dataset,
                                  const MetricSpec& spec,
                                  const SamplingScheme& scheme) {
  ComparisonReport report{spec, scheme, {}, {}, {}, {}};
  const auto algorithms = dataset.algorithms();
  for (const auto& algorithm : algorithms) {
    report.exact_means[algorithm] = MeanMetric(dataset, algorithm, spec);
    report.sampled_means[algorithm] =
        ExpectedMeanMetric(dataset, algorithm, scheme, spec);
  }
  for (const auto& a : algorithms) {
    for (const auto& b : algorithms) {
      if (a == b) continue;
      const double exact = report.exact_means[a] - report.exact_means[b];
      const double sampled = report.sampled_means[a] - report.sampled_means[b];
      const bool consistent = OrderSign(exact) == OrderSign(sampled);
      report.pairs.push_back({a, b, exact, sampled, consistent});
      if (!consistent) {
        report.inversions.push_back({a, b, OrderSign(exact), OrderSign(sampled)});
      }
    }
  }
  return report;
}

SweepResult SweepSamplesSerial(const EvalDataset& dataset,
                               const MetricSpec& spec,
                               std::vector<std::int64_t> sample_counts,
                               Replacement replacement) {
  SweepResult sweep =
      EmptySweep(dataset, spec, std::move(sample_counts), replacement);
  for (auto& [algorithm, means] : sweep.means) {
    for (std::size_t j = 0; j < sweep.sample_counts.size(); ++j) {
      means[j] = ExpectedMeanMetric(
          dataset, algorithm, {sweep.sample_counts[j], replacement}, spec);
    }
  }
  return sweep;
}

SweepResult SweepSamples(const EvalDataset& dataset, const MetricSpec& spec,
                         std::vector<std::int64_t> sample_counts,
                         Replacement replacement, int threads) {
  SweepResult sweep =
      EmptySweep(dataset, spec, std::move(sample_counts), replacement);
  std::vector<std::pair<const std::string*, std::vector<double>*>> rows;
  for (auto& [algorithm, means] : sweep.means) rows.push_back({&algorithm, &means});
  const auto columns = static_cast<std::int64_t>(sweep.sample_counts.size());
  const auto cells = static_cast<std::int64_t>(rows.size()) * columns;
  if (threads <= 0) threads = omp_get_max_threads();
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (std::int64_t cell = 0; cell < cells; ++cell) {
    const auto& [algorithm, means] = rows[cell / columns];
    const auto j = static_cast<std::size_t>(cell % columns);
    try {
      (*means)[j] = ExpectedMeanMetric(
          dataset, *algorithm, {sweep.sample_counts[j], replacement}, spec);
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return sweep;
}

std::vector<Crossover> CrossoverPoints(const SweepResult& sweep) {
  if (sweep.sample_counts.empty()) {
    throw std::invalid_argument("empty sweep");
  }
  std::vector<Crossover> crossovers;
  for (auto a = sweep.means.begin(); a != sweep.means.end(); ++a) {
    for (auto b = std::next(a); b != sweep.means.end(); ++b) {
      for (std::size_t j = 0; j + 1 < sweep.sample_counts.size(); ++j) {
        const int before = OrderSign(a->second[j] - b->second[j]);
        const int after = OrderSign(a->second[j + 1] - b->second[j + 1]);
        if (before != after) {
          crossovers.push_back({a->first, b->first, sweep.sample_counts[j],
                                sweep.sample_counts[j + 1], before, after});
        }
      }
    }
  }
  return crossovers;
}

}  // namespace sampledrank
