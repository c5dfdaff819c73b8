#include "sampledrank/rank_sampling.h"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace sampledrank {
namespace {

using Count = std::int64_t;

// Relative weights from a seed of 1 at `mode`, walking outward with the
// ratios P(k+1)/P(k) = up(k) and P(k-1)/P(k) = down(k). Values that
// underflow stay zero, as does everything beyond them.
template <typename Up, typename Down>
std::vector<double> WeightsFromMode(Count size, Count lo, Count hi, Count mode,
                                    Up up, Down down) {
  std::vector<double> weights(size, 0.0);
  weights[mode] = 1.0;
  for (Count k = mode; k < hi; ++k) {
    weights[k + 1] = weights[k] * up(k);
    if (weights[k + 1] == 0.0) break;
  }
  for (Count k = mode; k > lo; --k) {
    weights[k - 1] = weights[k] * down(k);
    if (weights[k - 1] == 0.0) break;
  }
  double total = 0.0;
  for (const double w : weights) total += w;
  for (double& w : weights) w /= total;
  return weights;
}

std::vector<double> BinomialSuccesses(Count trials, Count above, Count below) {
  // above: items that outrank the relevant one; below: the rest.
  std::vector<double> pmf(trials + 1, 0.0);
  if (above == 0) {
    pmf.front() = 1.0;
    return pmf;
  }
  if (below == 0) {
    pmf.back() = 1.0;
    return pmf;
  }
  const Count pool = above + below;
  const auto mode = static_cast<Count>(
      std::min<__int128>(static_cast<__int128>(trials + 1) * above / pool,
                         trials));
  const double a = static_cast<double>(above);
  const double b = static_cast<double>(below);
  return WeightsFromMode(
      trials + 1, 0, trials, mode,
      [&](Count k) {
        return (static_cast<double>(trials - k) * a) /
               (static_cast<double>(k + 1) * b);
      },
      [&](Count k) {
        return (static_cast<double>(k) * b) /
               (static_cast<double>(trials - k + 1) * a);
      });
}

std::vector<double> HypergeometricSuccesses(Count draws, Count above,
                                            Count below) {
  const Count pool = above + below;
  const Count lo = std::max<Count>(0, draws - below);
  const Count hi = std::min(above, draws);
  auto mode = static_cast<Count>(static_cast<__int128>(draws + 1) *
                                 (above + 1) / (pool + 2));
  mode = std::clamp(mode, lo, hi);
  return WeightsFromMode(
      draws + 1, lo, hi, mode,
      [&](Count k) {
        return (static_cast<double>(above - k) *
                static_cast<double>(draws - k)) /
               (static_cast<double>(k + 1) *
                static_cast<double>(below - draws + k + 1));
      },
      [&](Count k) {
        return (static_cast<double>(k) *
                static_cast<double>(below - draws + k)) /
               (static_cast<double>(above - k + 1) *
                static_cast<double>(draws - k + 1));
      });
}

void CheckRank(Rank rank, Rank catalog_size) {
  if (catalog_size < 2) {
    throw std::invalid_argument("catalog size must be at least 2");
  }
  if (rank < 1 || rank > catalog_size) {
    throw std::invalid_argument("rank " + std::to_string(rank) +
                                " outside [1, " +
                                std::to_string(catalog_size) + "]");
  }
}

}  // namespace

std::string_view ToString(Replacement replacement) {
  return replacement == Replacement::kWith ? "with" : "without";
}

Replacement ParseReplacement(std::string_view text) {
  if (text == "with") return Replacement::kWith;
  if (text == "without") return Replacement::kWithout;
  throw std::invalid_argument("unknown sampling scheme '" + std::string(text) +
                              "' (expected with|without)");
}

void SamplingScheme::Validate(Rank catalog_size, std::size_t relevant) const {
  if (samples < 1) {
    throw std::invalid_argument("number of samples must be at least 1");
  }
  const Rank irrelevant = catalog_size - static_cast<Rank>(relevant);
  if (replacement == Replacement::kWithout && samples > irrelevant) {
    throw std::invalid_argument(
        "cannot draw " + std::to_string(samples) +
        " distinct irrelevant items from " + std::to_string(irrelevant));
  }
}

RankPmf::RankPmf(std::vector<double> probabilities)
    : probabilities_(std::move(probabilities)) {
  if (probabilities_.empty()) {
    throw std::invalid_argument("empty rank distribution");
  }
}

double RankPmf::operator()(Rank rank) const {
  if (rank < 1 || rank > max_rank()) return 0.0;
  return probabilities_[rank - 1];
}

double RankPmf::Cdf(Rank k) const {
  if (k < 0 || k > max_rank()) {
    throw std::invalid_argument("CDF argument " + std::to_string(k) +
                                " outside [0, " + std::to_string(max_rank()) +
                                "]");
  }
  if (k == max_rank()) return 1.0;
  double sum = 0.0;
  for (Rank i = 0; i < k; ++i) sum += probabilities_[i];
  return std::min(sum, 1.0);
}

double RankPmf::Mean() const {
  double mean = 0.0;
  for (std::size_t i = 0; i < probabilities_.size(); ++i) {
    mean += probabilities_[i] * static_cast<double>(i + 1);
  }
  return mean;
}

double SuccessProbability(Rank rank, Rank catalog_size) {
  CheckRank(rank, catalog_size);
  return static_cast<double>(rank - 1) / static_cast<double>(catalog_size - 1);
}

RankPmf SampledRankPmf(Rank rank, Rank catalog_size,
                       const SamplingScheme& scheme) {
  CheckRank(rank, catalog_size);
  scheme.Validate(catalog_size);
  const Count above = rank - 1;
  const Count below = catalog_size - rank;
  if (scheme.replacement == Replacement::kWith) {
    return RankPmf(BinomialSuccesses(scheme.samples, above, below));
  }
  return RankPmf(HypergeometricSuccesses(scheme.samples, above, below));
}

double SampledRankCdf(Rank rank, Rank catalog_size,
                      const SamplingScheme& scheme, Rank k) {
  return SampledRankPmf(rank, catalog_size, scheme).Cdf(k);
}

Rank DrawSampledRank(Rank rank, Rank catalog_size,
                     const SamplingScheme& scheme, RngStream& rng) {
  return MonteCarloRanks(PredictedRanks(catalog_size, {rank}), scheme, rng)
      .front();
}

std::vector<Rank> MonteCarloRanks(const PredictedRanks& predicted,
                                  const SamplingScheme& scheme,
                                  RngStream& rng) {
  const auto ranks = predicted.ranks();
  scheme.Validate(predicted.catalog_size(), ranks.size());
  const auto irrelevant =
      static_cast<std::uint64_t>(predicted.catalog_size()) - ranks.size();
  const auto samples = static_cast<std::uint64_t>(scheme.samples);

  // Irrelevant items are indexed 0..irrelevant-1 in ranking order; the j-th
  // relevant item (0-based) has ranks[j] - j - 1 of them above it.
  std::vector<std::uint64_t> above(ranks.size());
  for (std::size_t j = 0; j < ranks.size(); ++j) {
    above[j] = static_cast<std::uint64_t>(ranks[j]) - j - 1;
  }
  // hits[i]: sampled items that outrank relevant items i.. but not i-1.
  std::vector<Rank> hits(ranks.size() + 1, 0);
  const auto record = [&](std::uint64_t item) {
    ++hits[std::upper_bound(above.begin(), above.end(), item) - above.begin()];
  };

  if (scheme.replacement == Replacement::kWith) {
    for (std::uint64_t s = 0; s < samples; ++s) record(rng.Below(irrelevant));
  } else {
    // Floyd's algorithm: a uniform m-subset in m draws.
    std::unordered_set<std::uint64_t> chosen;
    chosen.reserve(samples);
    for (std::uint64_t j = irrelevant - samples; j < irrelevant; ++j) {
      std::uint64_t item = rng.Below(j + 1);
      if (!chosen.insert(item).second) {
        item = j;
        chosen.insert(j);
      }
      record(item);
    }
  }

  std::vector<Rank> positions(ranks.size());
  Rank outranking = 0;
  for (std::size_t j = 0; j < ranks.size(); ++j) {
    outranking += hits[j];
    positions[j] = static_cast<Rank>(j) + 1 + outranking;
  }
  return positions;
}

}  // namespace sampledrank
