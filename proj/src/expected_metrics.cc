#include "sampledrank/expected_metrics.h"

#include <cmath>
#include <stdexcept>

#include <boost/math/distributions/binomial.hpp>

namespace sampledrank {
namespace {

void CheckArguments(Rank rank, Rank catalog_size, std::int64_t samples) {
  if (catalog_size < 2) {
    throw std::invalid_argument("catalog size must be at least 2");
  }
  if (rank < 1 || rank > catalog_size) {
    throw std::invalid_argument("rank outside the catalog");
  }
  if (samples < 1) {
    throw std::invalid_argument("number of samples must be at least 1");
  }
}

}  // namespace

double ExpectedMetric(Rank rank, Rank catalog_size,
                      const SamplingScheme& scheme, const MetricSpec& spec) {
  const RankPmf pmf = SampledRankPmf(rank, catalog_size, scheme);
  const Rank sampled_catalog = scheme.samples + 1;
  const auto probabilities = pmf.probabilities();
  double expected = 0.0;
  for (Rank i = 1; i <= sampled_catalog; ++i) {
    const double p = probabilities[i - 1];
    if (p == 0.0) continue;
    expected += p * SimplifiedMetric(i, sampled_catalog, spec);
  }
  return expected;
}

double ExpectedAucClosed(Rank rank, Rank catalog_size, std::int64_t samples) {
  CheckArguments(rank, catalog_size, samples);
  return static_cast<double>(catalog_size - rank) /
         static_cast<double>(catalog_size - 1);
}

double ExpectedRecallClosed(Rank rank, Rank catalog_size, std::int64_t samples,
                            Rank cutoff) {
  CheckArguments(rank, catalog_size, samples);
  if (cutoff < 1 || cutoff > samples + 1) {
    throw std::invalid_argument("cutoff outside [1, m+1]");
  }
  if (cutoff == samples + 1 || rank == 1) return 1.0;
  if (rank == catalog_size) return 0.0;
  const double p = SuccessProbability(rank, catalog_size);
  const boost::math::binomial_distribution<double> successes(
      static_cast<double>(samples), p);
  return boost::math::cdf(successes, static_cast<double>(cutoff - 1));
}

double ExpectedApClosed(Rank rank, Rank catalog_size, std::int64_t samples) {
  CheckArguments(rank, catalog_size, samples);
  if (rank == 1) return 1.0;
  const double p = SuccessProbability(rank, catalog_size);
  const double trials = static_cast<double>(samples + 1);
  // 1 - (1-p)^(m+1), without cancellation for small p.
  const double hit_any = -std::expm1(trials * std::log1p(-p));
  return hit_any / (p * trials);
}

LinearCoefficients LinearCoefficientsM1(const MetricSpec& spec,
                                        Rank catalog_size) {
  if (catalog_size < 2) {
    throw std::invalid_argument("catalog size must be at least 2");
  }
  const double top = SimplifiedMetric(1, 2, spec);
  const double second = SimplifiedMetric(2, 2, spec);
  const double span = static_cast<double>(catalog_size - 1);
  return {(second - top) / span,
          (static_cast<double>(catalog_size) * top - second) / span};
}

double ExpectedMeanMetric(const EvalDataset& dataset,
                          const std::string& algorithm,
                          const SamplingScheme& scheme,
                          const MetricSpec& spec) {
  const auto& list = dataset.instances(algorithm);
  double sum = 0.0;
  for (const auto& instance : list) {
    if (instance.ranks.size() != 1) {
      throw std::invalid_argument(
          "instance '" + instance.id + "' of '" + algorithm +
          "' has several relevant items; expected metrics need exactly one "
          "(use simulation instead)");
    }
    sum += ExpectedMetric(instance.ranks.ranks().front(),
                          instance.ranks.catalog_size(), scheme, spec);
  }
  return sum / static_cast<double>(list.size());
}

}  // namespace sampledrank
