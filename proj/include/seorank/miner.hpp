#pragma once

// Feature selection, equal-width discretization, Apriori frequent-itemset
// mining and rank-targeted association rules.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "seorank/dataset.hpp"
#include "seorank/stats.hpp"

namespace seorank::miner {

/// An attribute is either one of the 38 metrics or the rank target.
struct Attribute {
  static constexpr std::uint8_t kRank = static_cast<std::uint8_t>(kMetricCount);
  std::uint8_t code = kRank;

  static Attribute rank() { return Attribute{kRank}; }
  static Attribute metric(MetricId id) { return Attribute{static_cast<std::uint8_t>(index_of(id))}; }

  bool is_rank() const { return code == kRank; }
  MetricId metric_id() const { return static_cast<MetricId>(code); }
  std::string name() const;

  auto operator<=>(const Attribute&) const = default;
};

/// Bin index reserved for the "value is missing" item when missing values
/// are mined as items.
inline constexpr std::uint8_t kMissingBin = 0xFF;

struct Item {
  Attribute attribute;
  std::uint8_t bin = 0;

  auto operator<=>(const Item&) const = default;
};

using Itemset = std::vector<Item>;  // sorted, at most one item per attribute

struct Condition {
  enum class Form : std::uint8_t { greater, at_most, interval, missing };
  Attribute attribute;
  Form form = Form::interval;
  double lower = 0.0;  // interval: lower <= v; greater: v > lower
  double upper = 0.0;  // interval: v < upper; at_most: v <= upper

  std::string render() const;
};

struct Rule {
  Itemset antecedent_items;
  Item consequent_item;
  std::vector<Condition> antecedent;
  Condition consequent;
  double confidence_pct = 0.0;
  double support_pct = 0.0;
  std::uint32_t match_count = 0;
  std::uint32_t antecedent_count = 0;
  std::uint32_t n = 0;

  std::string antecedent_text() const;
};

/// Per-attribute edges; k bins have k+1 strictly increasing edges. Bin i is
/// [e_i, e_{i+1}) and the last bin is closed.
class BinningScheme {
 public:
  void set(Attribute a, std::vector<double> edges);
  bool covers(Attribute a) const { return edges_.count(a) != 0; }
  const std::vector<double>& edges(Attribute a) const;
  std::size_t bin_count(Attribute a) const { return edges(a).size() - 1; }

  /// Throws AnalysisError if v lies outside [first edge, last edge].
  std::uint8_t bin_of(Attribute a, double v) const;
  Condition condition(Attribute a, std::uint8_t bin) const;

  const std::map<Attribute, std::vector<double>>& all() const { return edges_; }

 private:
  std::map<Attribute, std::vector<double>> edges_;
};

/// edges = min + i*(max-min)/k for i = 0..k. Needs k >= 2 and two distinct values.
std::vector<double> equal_width_bins(std::span<const double> values, int k);
/// Edges at the i/k empirical quantiles, duplicates collapsed.
std::vector<double> quantile_bins(std::span<const double> values, int k);

enum class BinningMethod : std::uint8_t { equal_width, quantile };

struct TransactionTable {
  std::vector<Itemset> transactions;
  std::size_t size() const { return transactions.size(); }
};

/// Each record becomes a sorted transaction of (attribute, bin) items for the
/// listed metrics plus the rank. Missing values are skipped unless
/// `missing_as_item` is set, in which case they become a kMissingBin item.
TransactionTable discretize(const Dataset& d, std::span<const MetricId> metrics, const BinningScheme& scheme,
                            bool missing_as_item = false);

struct FrequentItemset {
  Itemset items;
  std::uint32_t count = 0;
  double support_pct = 0.0;
};

/// Level-wise Apriori with downward-closure pruning. Returns every itemset
/// with support >= min_support_pct and size <= max_itemset_size, sorted
/// lexicographically by items.
std::vector<FrequentItemset> mine_frequent(const TransactionTable& t, double min_support_pct,
                                           std::size_t max_itemset_size);

/// Rules antecedent -> (consequent attribute bin) from frequent itemsets
/// holding exactly one consequent item, with confidence >= min_confidence_pct.
/// Output is sorted lexicographically by (antecedent items, consequent item).
std::vector<Rule> derive_rules(std::span<const FrequentItemset> itemsets, std::size_t n,
                               const BinningScheme& scheme, double min_confidence_pct,
                               Attribute consequent = Attribute::rank());

enum class RuleKey : std::uint8_t { confidence, support };

/// Sorted by key descending, then the other key descending, then antecedent
/// length ascending, then lexicographically; truncated to n.
std::vector<Rule> top_rules(std::span<const Rule> rules, RuleKey key, std::size_t n = 30);

/// Smallest-error integer pair (match, antecedent), 1 <= m <= a <= n, whose
/// percentages are both within 0.01 of the given values.
std::optional<std::pair<std::uint32_t, std::uint32_t>> reconstruct_counts(double confidence_pct,
                                                                          double support_pct, std::uint32_t n);

/// Ranks scored metrics (by impact) together with 0/1-valued metrics (by raw
/// R^2 against rank), keeps the top k, then drops the 0/1-valued ones.
std::vector<MetricId> select_features(const Dataset& d, int k, const stats::AnalysisOptions& opt = {});

struct MiningOptions {
  int feature_k = 14;
  int bins = 5;
  BinningMethod method = BinningMethod::equal_width;
  double min_support_pct = 5.0;
  double min_confidence_pct = 60.0;
  std::size_t max_antecedent = 4;
  std::size_t top_n = 30;
  bool missing_as_item = false;
  stats::AnalysisOptions analysis{};
};

struct MiningReport {
  std::vector<MetricId> features;
  std::vector<std::string> notices;
  BinningScheme scheme;
  std::size_t n = 0;
  std::size_t frequent_itemsets = 0;
  std::vector<Rule> rules;  // every derived rule, lexicographic order
  std::vector<Rule> by_confidence;
  std::vector<Rule> by_support;
};

/// select_features -> bin -> discretize -> Apriori -> derive_rules -> top_rules.
MiningReport mine_dataset(const Dataset& d, const MiningOptions& opt = {});

std::string rules_csv(std::span<const Rule> rules);
std::string rules_markdown(std::span<const Rule> rules);

}  // namespace seorank::miner
