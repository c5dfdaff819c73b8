#ifndef SAMPLEDRANK_METRICS_H_
#define SAMPLEDRANK_METRICS_H_

// Exact top-N ranking metrics over the predicted ranks of the relevant items
// in a full catalog ranking. Ranks are 1-based.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sampledrank {

using Rank = std::int64_t;

// Positions of the relevant items within a ranking of `catalog_size` items.
// Strictly increasing, each in [1, catalog_size], catalog_size >= 2.
class PredictedRanks {
 public:
  // Sorts `ranks` and validates; throws std::invalid_argument on duplicates,
  // out-of-range ranks or an empty list.
  PredictedRanks(Rank catalog_size, std::vector<Rank> ranks);

  Rank catalog_size() const { return catalog_size_; }
  std::span<const Rank> ranks() const { return ranks_; }
  std::size_t size() const { return ranks_.size(); }

  friend bool operator==(const PredictedRanks&, const PredictedRanks&) = default;

 private:
  Rank catalog_size_;
  std::vector<Rank> ranks_;
};

enum class MetricKind {
  kAuc,
  kPrecision,
  kRecall,
  kAveragePrecision,
  kNdcg,
  kReciprocalRank,
  kAccuracy,
};

// Which metric to evaluate, and at which cutoff. An absent cutoff means the
// whole ranking (k = n). Cutoffs larger than the catalog are clamped to it.
class MetricSpec {
 public:
  explicit MetricSpec(MetricKind kind, std::optional<Rank> cutoff = std::nullopt);

  // Parses "auc", "ap", "ndcg@10", "recall@10", "precision@5", "rr",
  // "accuracy". Throws std::invalid_argument on anything else.
  static MetricSpec Parse(std::string_view text);

  MetricKind kind() const { return kind_; }
  std::optional<Rank> cutoff() const { return cutoff_; }

  // Effective cutoff within a ranking of `catalog_size` items.
  Rank EffectiveCutoff(Rank catalog_size) const;

  // Canonical metric name without the cutoff, e.g. "recall".
  std::string_view name() const;
  // Round-trips through Parse, e.g. "recall@10".
  std::string ToString() const;

  friend bool operator==(const MetricSpec&, const MetricSpec&) = default;

 private:
  MetricKind kind_;
  std::optional<Rank> cutoff_;
};

// Named algorithms, each with its evaluated instances. Algorithms iterate in
// name order; instances keep insertion order.
class EvalDataset {
 public:
  struct Instance {
    std::string id;
    PredictedRanks ranks;
  };

  // Throws std::invalid_argument if `instance_id` already exists for
  // `algorithm`.
  void Add(const std::string& algorithm, std::string instance_id,
           PredictedRanks ranks);

  // Throws std::out_of_range for an unknown algorithm.
  const std::vector<Instance>& instances(const std::string& algorithm) const;

  std::vector<std::string> algorithms() const;
  bool empty() const { return by_algorithm_.empty(); }
  std::size_t instance_count() const;

 private:
  std::map<std::string, std::vector<Instance>> by_algorithm_;
};

// Metric value of a ranking with relevant items at `ranks`, in [0, 1].
// Throws std::invalid_argument for reciprocal rank with more than one
// relevant item, or AUC when every item is relevant.
double ExactMetric(const PredictedRanks& ranks, const MetricSpec& spec);

// Closed forms for a single relevant item at `rank` among `catalog_size`.
// Agrees with ExactMetric on PredictedRanks(catalog_size, {rank}).
double SimplifiedMetric(Rank rank, Rank catalog_size, const MetricSpec& spec);

// Unweighted mean of ExactMetric over the instances of `algorithm`.
double MeanMetric(const EvalDataset& dataset, const std::string& algorithm,
                  const MetricSpec& spec);

}  // namespace sampledrank

#endif  // SAMPLEDRANK_METRICS_H_
