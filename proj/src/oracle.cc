#include "sampledrank/oracle.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace sampledrank::oracle {

RankPmf EnumerateWithoutReplacementPmf(Rank rank, Rank catalog_size,
                                       std::int64_t samples) {
  if (catalog_size > 15) throw std::invalid_argument("oracle limited to n <= 15");
  if (rank < 1 || rank > catalog_size) {
    throw std::invalid_argument("rank outside the catalog");
  }
  if (samples < 1 || samples > catalog_size - 1) {
    throw std::invalid_argument("need 1 <= m <= n-1");
  }
  // Irrelevant items are bits 0..n-2 in ranking order; the first r-1 of them
  // outrank the relevant item.
  const unsigned pool = static_cast<unsigned>(catalog_size - 1);
  const std::uint32_t above_mask = (1u << (rank - 1)) - 1;
  std::vector<std::uint64_t> counts(samples + 1, 0);
  std::uint64_t subsets = 0;
  for (std::uint32_t subset = 0; subset < (1u << pool); ++subset) {
    if (std::popcount(subset) != samples) continue;
    ++counts[std::popcount(subset & above_mask)];
    ++subsets;
  }
  std::vector<double> pmf(samples + 1);
  for (std::size_t i = 0; i < pmf.size(); ++i) {
    pmf[i] = static_cast<double>(counts[i]) / static_cast<double>(subsets);
  }
  return RankPmf(std::move(pmf));
}

RankPmf EnumerateWithReplacementPmf(Rank rank, Rank catalog_size,
                                    std::int64_t samples) {
  if (rank < 1 || rank > catalog_size || catalog_size < 2) {
    throw std::invalid_argument("rank outside the catalog");
  }
  if (samples < 1) throw std::invalid_argument("need m >= 1");
  const auto above = static_cast<std::uint64_t>(rank - 1);
  const auto below = static_cast<std::uint64_t>(catalog_size - rank);
  constexpr std::uint64_t kExact = std::uint64_t{1} << 53;
  std::uint64_t total = 1;
  for (std::int64_t t = 0; t < samples; ++t) {
    if (total > kExact / (above + below)) {
      throw std::invalid_argument("(n-1)^m too large for exact counting");
    }
    total *= above + below;
  }
  // counts[k]: ordered draws with exactly k items above the relevant one.
  std::vector<std::uint64_t> counts(samples + 1, 0);
  counts[0] = 1;
  for (std::int64_t t = 1; t <= samples; ++t) {
    for (std::int64_t k = t; k >= 1; --k) {
      counts[k] = counts[k] * below + counts[k - 1] * above;
    }
    counts[0] *= below;
  }
  std::vector<double> pmf(samples + 1);
  for (std::size_t i = 0; i < pmf.size(); ++i) {
    pmf[i] = static_cast<double>(counts[i]) / static_cast<double>(total);
  }
  return RankPmf(std::move(pmf));
}

Estimate McEstimate(Rank rank, Rank catalog_size, const SamplingScheme& scheme,
                    const MetricSpec& spec, std::int64_t repetitions,
                    std::uint64_t seed) {
  if (repetitions < 100) {
    throw std::invalid_argument("at least 100 repetitions are required");
  }
  RngStream rng(seed);
  const Rank sampled_catalog = scheme.samples + 1;
  double sum = 0.0;
  double squares = 0.0;
  for (std::int64_t i = 0; i < repetitions; ++i) {
    const double value = SimplifiedMetric(
        DrawSampledRank(rank, catalog_size, scheme, rng), sampled_catalog, spec);
    sum += value;
    squares += value * value;
  }
  const auto reps = static_cast<double>(repetitions);
  const double mean = sum / reps;
  const double variance =
      std::max(0.0, (squares - reps * mean * mean) / (reps - 1.0));
  return {mean, std::sqrt(variance / reps)};
}

}  // namespace sampledrank::oracle
