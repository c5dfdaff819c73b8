#include "sampledrank/metrics.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace sampledrank {
namespace {

// 1 / log2(rank + 1).
double LogDiscount(Rank rank) {
  return std::log(2.0) / std::log(static_cast<double>(rank) + 1.0);
}

struct NamedKind {
  std::string_view name;
  MetricKind kind;
};

constexpr NamedKind kNames[] = {
    {"auc", MetricKind::kAuc},
    {"precision", MetricKind::kPrecision},
    {"recall", MetricKind::kRecall},
    {"ap", MetricKind::kAveragePrecision},
    {"ndcg", MetricKind::kNdcg},
    {"rr", MetricKind::kReciprocalRank},
    {"accuracy", MetricKind::kAccuracy},
};

void CheckCatalog(Rank rank, Rank catalog_size) {
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

PredictedRanks::PredictedRanks(Rank catalog_size, std::vector<Rank> ranks)
    : catalog_size_(catalog_size), ranks_(std::move(ranks)) {
  if (catalog_size_ < 2) {
    throw std::invalid_argument("catalog size must be at least 2");
  }
  if (ranks_.empty()) {
    throw std::invalid_argument("at least one relevant item is required");
  }
  std::sort(ranks_.begin(), ranks_.end());
  if (std::adjacent_find(ranks_.begin(), ranks_.end()) != ranks_.end()) {
    throw std::invalid_argument("duplicate predicted rank");
  }
  if (ranks_.front() < 1 || ranks_.back() > catalog_size_) {
    throw std::invalid_argument("predicted rank outside [1, " +
                                std::to_string(catalog_size_) + "]");
  }
}

MetricSpec::MetricSpec(MetricKind kind, std::optional<Rank> cutoff)
    : kind_(kind), cutoff_(cutoff) {
  if (cutoff_ && *cutoff_ < 1) {
    throw std::invalid_argument("cutoff must be at least 1");
  }
  if (kind_ == MetricKind::kAccuracy) {
    if (cutoff_ && *cutoff_ != 1) {
      throw std::invalid_argument("accuracy is only defined at cutoff 1");
    }
    cutoff_ = 1;
  }
  if (kind_ == MetricKind::kAuc) cutoff_.reset();
}

MetricSpec MetricSpec::Parse(std::string_view text) {
  std::string_view name = text;
  std::optional<Rank> cutoff;
  if (const auto at = text.find('@'); at != std::string_view::npos) {
    name = text.substr(0, at);
    const std::string_view digits = text.substr(at + 1);
    Rank k = 0;
    const auto [end, ec] =
        std::from_chars(digits.data(), digits.data() + digits.size(), k);
    if (digits.empty() || ec != std::errc() ||
        end != digits.data() + digits.size()) {
      throw std::invalid_argument("bad cutoff in metric '" +
                                  std::string(text) + "'");
    }
    cutoff = k;
  }
  for (const auto& entry : kNames) {
    if (entry.name == name) return MetricSpec(entry.kind, cutoff);
  }
  throw std::invalid_argument("unknown metric '" + std::string(text) + "'");
}

Rank MetricSpec::EffectiveCutoff(Rank catalog_size) const {
  return cutoff_ ? std::min(*cutoff_, catalog_size) : catalog_size;
}

std::string_view MetricSpec::name() const {
  for (const auto& entry : kNames) {
    if (entry.kind == kind_) return entry.name;
  }
  return "?";
}

std::string MetricSpec::ToString() const {
  std::string out(name());
  if (cutoff_ && kind_ != MetricKind::kAccuracy) {
    out += "@" + std::to_string(*cutoff_);
  }
  return out;
}

void EvalDataset::Add(const std::string& algorithm, std::string instance_id,
                      PredictedRanks ranks) {
  auto& list = by_algorithm_[algorithm];
  for (const auto& existing : list) {
    if (existing.id == instance_id) {
      throw std::invalid_argument("duplicate instance '" + instance_id +
                                  "' for algorithm '" + algorithm + "'");
    }
  }
  list.push_back({std::move(instance_id), std::move(ranks)});
}

const std::vector<EvalDataset::Instance>& EvalDataset::instances(
    const std::string& algorithm) const {
  const auto it = by_algorithm_.find(algorithm);
  if (it == by_algorithm_.end()) {
    throw std::out_of_range("unknown algorithm '" + algorithm + "'");
  }
  return it->second;
}

std::vector<std::string> EvalDataset::algorithms() const {
  std::vector<std::string> names;
  names.reserve(by_algorithm_.size());
  for (const auto& [name, list] : by_algorithm_) names.push_back(name);
  return names;
}

std::size_t EvalDataset::instance_count() const {
  std::size_t total = 0;
  for (const auto& [name, list] : by_algorithm_) total += list.size();
  return total;
}

double ExactMetric(const PredictedRanks& predicted, const MetricSpec& spec) {
  const Rank n = predicted.catalog_size();
  const auto ranks = predicted.ranks();
  const auto relevant = static_cast<Rank>(ranks.size());
  const Rank k = spec.EffectiveCutoff(n);
  const auto hits = static_cast<Rank>(
      std::upper_bound(ranks.begin(), ranks.end(), k) - ranks.begin());

  switch (spec.kind()) {
    case MetricKind::kAuc: {
      if (relevant == n) {
        throw std::invalid_argument("AUC undefined when every item is relevant");
      }
      // Count of (relevant, irrelevant) pairs ordered correctly.
      Rank correct = -relevant * (relevant - 1) / 2;
      for (const Rank r : ranks) correct += n - r;
      return static_cast<double>(correct) /
             static_cast<double>(relevant * (n - relevant));
    }
    case MetricKind::kPrecision:
    case MetricKind::kAccuracy:
      return static_cast<double>(hits) / static_cast<double>(k);
    case MetricKind::kRecall:
      return static_cast<double>(hits) / static_cast<double>(relevant);
    case MetricKind::kReciprocalRank:
      if (relevant != 1) {
        throw std::invalid_argument(
            "reciprocal rank requires exactly one relevant item");
      }
      [[fallthrough]];
    case MetricKind::kAveragePrecision: {
      // The j-th relevant item sits at ranks[j-1]; precision there is j/rank.
      double sum = 0.0;
      for (Rank j = 1; j <= hits; ++j) {
        sum += static_cast<double>(j) / static_cast<double>(ranks[j - 1]);
      }
      return sum / static_cast<double>(std::min(relevant, k));
    }
    case MetricKind::kNdcg: {
      double dcg = 0.0;
      for (Rank j = 0; j < hits; ++j) dcg += LogDiscount(ranks[j]);
      double ideal = 0.0;
      for (Rank i = 1; i <= std::min(relevant, k); ++i) ideal += LogDiscount(i);
      return dcg / ideal;
    }
  }
  throw std::logic_error("unhandled metric kind");
}

double SimplifiedMetric(Rank rank, Rank catalog_size, const MetricSpec& spec) {
  CheckCatalog(rank, catalog_size);
  const Rank k = spec.EffectiveCutoff(catalog_size);
  const bool hit = rank <= k;
  switch (spec.kind()) {
    case MetricKind::kAuc:
      return static_cast<double>(catalog_size - rank) /
             static_cast<double>(catalog_size - 1);
    case MetricKind::kPrecision:
    case MetricKind::kAccuracy:
      return hit ? 1.0 / static_cast<double>(k) : 0.0;
    case MetricKind::kRecall:
      return hit ? 1.0 : 0.0;
    case MetricKind::kAveragePrecision:
    case MetricKind::kReciprocalRank:
      return hit ? 1.0 / static_cast<double>(rank) : 0.0;
    case MetricKind::kNdcg:
      return hit ? LogDiscount(rank) : 0.0;
  }
  throw std::logic_error("unhandled metric kind");
}

double MeanMetric(const EvalDataset& dataset, const std::string& algorithm,
                  const MetricSpec& spec) {
  const auto& list = dataset.instances(algorithm);
  double sum = 0.0;
  for (const auto& instance : list) sum += ExactMetric(instance.ranks, spec);
  return sum / static_cast<double>(list.size());
}

}  // namespace sampledrank
