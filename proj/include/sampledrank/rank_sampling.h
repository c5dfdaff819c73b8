#ifndef SAMPLEDRANK_RANK_SAMPLING_H_
#define SAMPLEDRANK_RANK_SAMPLING_H_

// Law of the rank of a relevant item after it is re-ranked among m uniformly
// sampled irrelevant items.
//
// With replacement the number of sampled items that outrank a relevant item
// at rank r is Binomial(m, (r-1)/(n-1)); without replacement it is
// hypergeometric with population n-1, r-1 successes and m draws. The sampled
// rank is one plus that count.

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "sampledrank/metrics.h"
#include "sampledrank/rng.h"

namespace sampledrank {

enum class Replacement { kWith, kWithout };

std::string_view ToString(Replacement replacement);
// Accepts "with" and "without".
Replacement ParseReplacement(std::string_view text);

struct SamplingScheme {
  std::int64_t samples;  // m, number of sampled irrelevant items, >= 1
  Replacement replacement = Replacement::kWith;

  // Throws std::invalid_argument unless m >= 1 and, without replacement,
  // m <= catalog_size - relevant.
  void Validate(Rank catalog_size, std::size_t relevant = 1) const;
};

// Probability mass over sampled ranks 1..m+1.
class RankPmf {
 public:
  explicit RankPmf(std::vector<double> probabilities);

  // P(sampled rank == rank); zero outside [1, max_rank()].
  double operator()(Rank rank) const;
  Rank max_rank() const { return static_cast<Rank>(probabilities_.size()); }
  std::span<const double> probabilities() const { return probabilities_; }

  // P(sampled rank <= k), for k in [0, max_rank()].
  double Cdf(Rank k) const;
  double Mean() const;

 private:
  std::vector<double> probabilities_;
};

// Probability that a uniformly drawn irrelevant item outranks rank r:
// (r-1)/(n-1).
double SuccessProbability(Rank rank, Rank catalog_size);

// Shifted binomial (with replacement) or shifted hypergeometric (without).
// Evaluated by a multiplicative recurrence anchored at the mode, then
// renormalised; stable for m well beyond 1e5.
RankPmf SampledRankPmf(Rank rank, Rank catalog_size,
                       const SamplingScheme& scheme);

// P(sampled rank <= k). Throws unless 0 <= k <= m+1.
double SampledRankCdf(Rank rank, Rank catalog_size,
                      const SamplingScheme& scheme, Rank k);

// One realisation of the sampled rank of a single relevant item.
Rank DrawSampledRank(Rank rank, Rank catalog_size,
                     const SamplingScheme& scheme, RngStream& rng);

// Positions of all relevant items in a ranking of the relevant items plus
// m sampled irrelevant ones (m + |R| items). Relative order is preserved.
std::vector<Rank> MonteCarloRanks(const PredictedRanks& predicted,
                                  const SamplingScheme& scheme,
                                  RngStream& rng);

}  // namespace sampledrank

#endif  // SAMPLEDRANK_RANK_SAMPLING_H_
