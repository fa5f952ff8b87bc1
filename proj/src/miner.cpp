#include "seorank/miner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include "seorank/error.hpp"
#include "seorank/text.hpp"

namespace seorank::miner {

std::string Attribute::name() const {
  return is_rank() ? std::string("webometric_rank") : std::string(to_string(metric_id()));
}

namespace {

std::string num(double v) { return text::format_trimmed(v, 2); }

}  // namespace

std::string Condition::render() const {
  const auto n = attribute.name();
  switch (form) {
    case Form::greater:
      return n + " > " + num(lower);
    case Form::at_most:
      return n + " ≤ " + num(upper);
    case Form::interval:
      return num(lower) + " ≤ " + n + " < " + num(upper);
    case Form::missing:
      return n + " missing";
  }
  return n;
}

std::string Rule::antecedent_text() const {
  std::string out;
  for (const auto& c : antecedent) {
    if (!out.empty()) out += " AND ";
    out += c.render();
  }
  return out;
}

// --- binning ---------------------------------------------------------------

void BinningScheme::set(Attribute a, std::vector<double> edges) {
  if (edges.size() < 2) throw ArgumentError("binning for " + a.name() + " needs at least 2 edges");
  for (std::size_t i = 1; i < edges.size(); ++i) {
    if (!(edges[i] > edges[i - 1])) {
      throw ArgumentError("binning edges for " + a.name() + " must be strictly increasing");
    }
  }
  if (edges.size() - 1 >= kMissingBin) throw ArgumentError("too many bins for " + a.name());
  edges_[a] = std::move(edges);
}

const std::vector<double>& BinningScheme::edges(Attribute a) const {
  auto it = edges_.find(a);
  if (it == edges_.end()) throw ArgumentError("no binning for " + a.name());
  return it->second;
}

std::uint8_t BinningScheme::bin_of(Attribute a, double v) const {
  const auto& e = edges(a);
  if (!(v >= e.front() && v <= e.back())) {
    throw AnalysisError(a.name() + " value " + format_number(v) + " outside binning range [" +
                        format_number(e.front()) + ", " + format_number(e.back()) + "]");
  }
  const auto bins = e.size() - 1;
  auto idx = static_cast<std::size_t>(std::upper_bound(e.begin(), e.end(), v) - e.begin()) - 1;
  return static_cast<std::uint8_t>(std::min(idx, bins - 1));
}

Condition BinningScheme::condition(Attribute a, std::uint8_t bin) const {
  Condition c;
  c.attribute = a;
  if (bin == kMissingBin) {
    c.form = Condition::Form::missing;
    return c;
  }
  const auto& e = edges(a);
  const std::size_t bins = e.size() - 1;
  if (bin >= bins) throw ArgumentError("bin index out of range for " + a.name());
  if (bins == 1) {
    c.form = Condition::Form::interval;
    c.lower = e[0];
    c.upper = e[1];
  } else if (bin == 0) {
    c.form = Condition::Form::at_most;
    c.upper = e[1];
  } else if (bin == bins - 1) {
    c.form = Condition::Form::greater;
    c.lower = e[bins - 1];
  } else {
    c.form = Condition::Form::interval;
    c.lower = e[bin];
    c.upper = e[bin + 1];
  }
  return c;
}

std::vector<double> equal_width_bins(std::span<const double> values, int k) {
  if (k < 2) throw ArgumentError("equal_width_bins: k must be >= 2");
  if (values.empty()) throw AnalysisError("equal_width_bins: no values");
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  if (!(hi > lo)) throw AnalysisError("equal_width_bins: degenerate bins (constant series)");
  std::vector<double> edges;
  edges.reserve(static_cast<std::size_t>(k) + 1);
  for (int i = 0; i < k; ++i) edges.push_back(lo + i * (hi - lo) / k);
  edges.push_back(hi);
  return edges;
}

std::vector<double> quantile_bins(std::span<const double> values, int k) {
  if (k < 2) throw ArgumentError("quantile_bins: k must be >= 2");
  if (values.empty()) throw AnalysisError("quantile_bins: no values");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> edges;
  const auto last = static_cast<double>(sorted.size() - 1);
  for (int i = 0; i <= k; ++i) {
    const double pos = last * i / k;
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    const double q = sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
    if (edges.empty() || q > edges.back()) edges.push_back(q);
  }
  edges.back() = sorted.back();
  if (edges.size() < 2) throw AnalysisError("quantile_bins: degenerate bins (constant series)");
  return edges;
}

// --- transactions ------------------------------------------------------------

TransactionTable discretize(const Dataset& d, std::span<const MetricId> metrics, const BinningScheme& scheme,
                            bool missing_as_item) {
  for (auto m : metrics) {
    if (!scheme.covers(Attribute::metric(m))) {
      throw ArgumentError("binning scheme does not cover " + std::string(to_string(m)));
    }
  }
  if (!scheme.covers(Attribute::rank())) throw ArgumentError("binning scheme does not cover the rank");

  TransactionTable t;
  t.transactions.reserve(d.records.size());
  for (const auto& r : d.records) {
    Itemset items;
    for (auto m : metrics) {
      const auto a = Attribute::metric(m);
      if (const auto& v = r.value(m)) {
        items.push_back(Item{a, scheme.bin_of(a, *v)});
      } else if (missing_as_item) {
        items.push_back(Item{a, kMissingBin});
      }
    }
    items.push_back(Item{Attribute::rank(), scheme.bin_of(Attribute::rank(), static_cast<double>(r.webometric_rank))});
    std::sort(items.begin(), items.end());
    items.erase(std::unique(items.begin(), items.end(),
                            [](const Item& x, const Item& y) { return x.attribute == y.attribute; }),
                items.end());
    t.transactions.push_back(std::move(items));
  }
  return t;
}

// --- Apriori -------------------------------------------------------------------

namespace {

bool meets(std::uint64_t count, std::size_t n, double pct) {
  return 100.0 * static_cast<double>(count) >= pct * static_cast<double>(n) - 1e-9;
}

}  // namespace

std::vector<FrequentItemset> mine_frequent(const TransactionTable& t, double min_support_pct,
                                           std::size_t max_itemset_size) {
  if (!(min_support_pct > 0.0 && min_support_pct <= 100.0)) {
    throw ArgumentError("min_support_pct must be in (0, 100]");
  }
  const std::size_t n = t.size();
  std::vector<FrequentItemset> out;
  if (n == 0 || max_itemset_size == 0) return out;

  const auto emit = [&](const Itemset& items, std::uint32_t count) {
    out.push_back(FrequentItemset{items, count, 100.0 * count / static_cast<double>(n)});
  };

  std::map<Item, std::uint32_t> singles;
  for (const auto& tx : t.transactions)
    for (const auto& item : tx) ++singles[item];

  std::vector<Itemset> level;
  for (const auto& [item, count] : singles) {
    if (meets(count, n, min_support_pct)) {
      level.push_back({item});
      emit({item}, count);
    }
  }

  for (std::size_t size = 2; size <= max_itemset_size && level.size() >= 2; ++size) {
    const std::set<Itemset> previous(level.begin(), level.end());
    std::vector<Itemset> candidates;
    for (std::size_t i = 0; i < level.size(); ++i) {
      for (std::size_t j = i + 1; j < level.size(); ++j) {
        const auto& a = level[i];
        const auto& b = level[j];
        if (!std::equal(a.begin(), a.end() - 1, b.begin())) break;  // level is sorted
        if (a.back().attribute == b.back().attribute) continue;  // one bin per attribute
        Itemset c = a;
        c.push_back(b.back());
        bool closed = true;
        for (std::size_t drop = 0; drop + 2 < c.size() && closed; ++drop) {
          Itemset sub;
          sub.reserve(c.size() - 1);
          for (std::size_t k = 0; k < c.size(); ++k)
            if (k != drop) sub.push_back(c[k]);
          closed = previous.count(sub) != 0;
        }
        if (closed) candidates.push_back(std::move(c));
      }
    }

    std::vector<std::uint32_t> counts(candidates.size(), 0);
    for (const auto& tx : t.transactions) {
      if (tx.size() < size) continue;
      for (std::size_t c = 0; c < candidates.size(); ++c) {
        if (std::includes(tx.begin(), tx.end(), candidates[c].begin(), candidates[c].end())) ++counts[c];
      }
    }

    std::vector<Itemset> next;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      if (meets(counts[c], n, min_support_pct)) {
        emit(candidates[c], counts[c]);
        next.push_back(std::move(candidates[c]));
      }
    }
    std::sort(next.begin(), next.end());
    level = std::move(next);
  }

  std::sort(out.begin(), out.end(),
            [](const FrequentItemset& a, const FrequentItemset& b) { return a.items < b.items; });
  return out;
}

std::vector<Rule> derive_rules(std::span<const FrequentItemset> itemsets, std::size_t n,
                               const BinningScheme& scheme, double min_confidence_pct, Attribute consequent) {
  std::map<Itemset, std::uint32_t> counts;
  for (const auto& f : itemsets) counts.emplace(f.items, f.count);

  std::vector<Rule> rules;
  for (const auto& f : itemsets) {
    if (f.items.size() < 2) continue;
    const auto it = std::find_if(f.items.begin(), f.items.end(),
                                 [&](const Item& i) { return i.attribute == consequent; });
    if (it == f.items.end()) continue;

    Rule r;
    r.consequent_item = *it;
    for (const auto& item : f.items)
      if (item.attribute != consequent) r.antecedent_items.push_back(item);

    const auto ante = counts.find(r.antecedent_items);
    if (ante == counts.end()) {
      throw ArgumentError("derive_rules: antecedent of a frequent itemset is missing its count");
    }
    r.match_count = f.count;
    r.antecedent_count = ante->second;
    r.n = static_cast<std::uint32_t>(n);
    r.confidence_pct = 100.0 * r.match_count / r.antecedent_count;
    r.support_pct = 100.0 * r.match_count / static_cast<double>(n);
    if (r.confidence_pct < min_confidence_pct - 1e-9) continue;

    for (const auto& item : r.antecedent_items) r.antecedent.push_back(scheme.condition(item.attribute, item.bin));
    r.consequent = scheme.condition(r.consequent_item.attribute, r.consequent_item.bin);
    rules.push_back(std::move(r));
  }
  std::sort(rules.begin(), rules.end(), [](const Rule& a, const Rule& b) {
    return std::tie(a.antecedent_items, a.consequent_item) < std::tie(b.antecedent_items, b.consequent_item);
  });
  return rules;
}

std::vector<Rule> top_rules(std::span<const Rule> rules, RuleKey key, std::size_t n) {
  std::vector<Rule> out(rules.begin(), rules.end());
  const auto primary = [key](const Rule& r) { return key == RuleKey::confidence ? r.confidence_pct : r.support_pct; };
  const auto secondary = [key](const Rule& r) { return key == RuleKey::confidence ? r.support_pct : r.confidence_pct; };
  std::stable_sort(out.begin(), out.end(), [&](const Rule& a, const Rule& b) {
    if (primary(a) != primary(b)) return primary(a) > primary(b);
    if (secondary(a) != secondary(b)) return secondary(a) > secondary(b);
    if (a.antecedent_items.size() != b.antecedent_items.size())
      return a.antecedent_items.size() < b.antecedent_items.size();
    return std::tie(a.antecedent_items, a.consequent_item) < std::tie(b.antecedent_items, b.consequent_item);
  });
  if (out.size() > n) out.resize(n);
  return out;
}

std::optional<std::pair<std::uint32_t, std::uint32_t>> reconstruct_counts(double confidence_pct,
                                                                          double support_pct, std::uint32_t n) {
  if (n < 1) throw ArgumentError("reconstruct_counts: n must be >= 1");
  constexpr double kTolerance = 0.01;
  std::optional<std::pair<std::uint32_t, std::uint32_t>> best;
  double best_err = kTolerance + 1.0;
  for (std::uint32_t m = 1; m <= n; ++m) {
    const double sup_err = std::abs(100.0 * m / n - support_pct);
    if (sup_err > kTolerance + 1e-12) continue;
    for (std::uint32_t a = m; a <= n; ++a) {
      const double conf_err = std::abs(100.0 * m / a - confidence_pct);
      if (conf_err > kTolerance + 1e-12) continue;
      const double err = std::max(sup_err, conf_err);
      if (err < best_err) {
        best_err = err;
        best = std::make_pair(m, a);
      }
    }
  }
  return best;
}

// --- pipeline ------------------------------------------------------------------

namespace {

bool binary_valued(std::span<const double> values) {
  bool zero = false, one = false;
  for (double v : values) {
    if (v == 0.0) {
      zero = true;
    } else if (v == 1.0) {
      one = true;
    } else {
      return false;
    }
  }
  return zero && one;
}

std::vector<double> present(const std::vector<std::optional<double>>& column) {
  std::vector<double> out;
  for (const auto& v : column)
    if (v) out.push_back(*v);
  return out;
}

}  // namespace

std::vector<MetricId> select_features(const Dataset& d, int k, const stats::AnalysisOptions& opt) {
  if (k < 1) throw ArgumentError("select_features: k must be >= 1");
  const auto table = stats::impact_table(d, opt);
  const auto ranks = d.ranks();

  struct Candidate {
    MetricId id;
    double score;
    bool binary;
  };
  std::vector<Candidate> pool;
  for (const auto& desc : d.registry()) {
    const auto* row = table.find(desc.id);
    if (row && row->impact) {
      pool.push_back({desc.id, *row->impact, false});
      continue;
    }
    const auto column = d.column(desc.id);
    const auto values = present(column);
    if (values.size() < 3 || !binary_valued(values)) continue;
    try {
      pool.push_back({desc.id, stats::impact_score(column, ranks), true});
    } catch (const AnalysisError&) {
      // rank has zero variance; nothing to rank by
    }
  }
  std::stable_sort(pool.begin(), pool.end(), [](const Candidate& a, const Candidate& b) { return a.score > b.score; });
  if (pool.size() > static_cast<std::size_t>(k)) pool.resize(static_cast<std::size_t>(k));

  std::vector<MetricId> out;
  for (const auto& c : pool)
    if (!c.binary) out.push_back(c.id);
  return out;
}

MiningReport mine_dataset(const Dataset& d, const MiningOptions& opt) {
  if (d.records.size() < 3) throw AnalysisError("mining needs at least 3 records");
  if (opt.max_antecedent < 1) throw ArgumentError("max_antecedent must be >= 1");

  MiningReport report;
  report.n = d.records.size();

  const auto bins_for = [&](std::span<const double> values) {
    return opt.method == BinningMethod::equal_width ? equal_width_bins(values, opt.bins)
                                                    : quantile_bins(values, opt.bins);
  };

  std::vector<double> ranks;
  for (const auto& r : d.records) ranks.push_back(static_cast<double>(r.webometric_rank));
  report.scheme.set(Attribute::rank(), bins_for(ranks));

  for (auto m : select_features(d, opt.feature_k, opt.analysis)) {
    const auto values = present(d.column(m));
    try {
      report.scheme.set(Attribute::metric(m), bins_for(values));
      report.features.push_back(m);
    } catch (const Error& e) {
      report.notices.push_back(std::string(to_string(m)) + " dropped: " + e.what());
    }
  }

  const auto table = discretize(d, report.features, report.scheme, opt.missing_as_item);
  const auto frequent = mine_frequent(table, opt.min_support_pct, opt.max_antecedent + 1);
  report.frequent_itemsets = frequent.size();
  report.rules = derive_rules(frequent, report.n, report.scheme, opt.min_confidence_pct);
  report.by_confidence = top_rules(report.rules, RuleKey::confidence, opt.top_n);
  report.by_support = top_rules(report.rules, RuleKey::support, opt.top_n);
  if (report.rules.empty()) report.notices.emplace_back("no rules at the given support/confidence thresholds");
  return report;
}

namespace {

std::string pct(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

std::string rules_csv(std::span<const Rule> rules) {
  std::string out = "antecedent,consequent,confidence_pct,support_pct,match_count,antecedent_count,n\n";
  for (const auto& r : rules) {
    out += text::csv_field(r.antecedent_text()) + ',' + text::csv_field(r.consequent.render()) + ',' +
           pct(r.confidence_pct) + ',' + pct(r.support_pct) + ',' + std::to_string(r.match_count) + ',' +
           std::to_string(r.antecedent_count) + ',' + std::to_string(r.n) + '\n';
  }
  return out;
}

std::string rules_markdown(std::span<const Rule> rules) {
  std::string out =
      "| Status | Forecast | Confidence (%) | Support (%) |\n"
      "|---|---|---|---|\n";
  for (const auto& r : rules) {
    out += "| " + r.antecedent_text() + " | " + r.consequent.render() + " | " + text::format_trimmed(r.confidence_pct, 2) +
           " | " + text::format_trimmed(r.support_pct, 2) + " |\n";
  }
  return out;
}

}  // namespace seorank::miner
