#include <doctest.h>

#include <algorithm>

#include "miner_check.hpp"
#include "oracles.hpp"
#include "paths.hpp"
#include "seorank/error.hpp"
#include "seorank/miner.hpp"

using namespace seorank;
using namespace seorank::miner;

namespace {

Attribute metric(MetricId id) { return Attribute::metric(id); }

Item item(MetricId id, int bin) { return Item{metric(id), static_cast<std::uint8_t>(bin)}; }

Dataset replay() { return load_dataset_file(testing::source_path("data/replay_75.csv")); }

}  // namespace

TEST_CASE("equal_width_bins") {
  const std::vector<double> a = {0, 37, 100};
  CHECK(equal_width_bins(a, 5) == std::vector<double>{0, 20, 40, 60, 80, 100});
  const std::vector<double> tf = {1.0, 50, 88.0};
  const auto e = equal_width_bins(tf, 5);
  const std::vector<double> want = {1.0, 18.4, 35.8, 53.2, 70.6, 88.0};
  REQUIRE(e.size() == want.size());
  for (std::size_t i = 0; i < e.size(); ++i) CHECK(e[i] == doctest::Approx(want[i]).epsilon(1e-12));
  const std::vector<double> flat = {5, 5, 5};
  CHECK_THROWS_AS(equal_width_bins(flat, 5), AnalysisError);
  CHECK_THROWS_AS(equal_width_bins(a, 1), ArgumentError);
}

TEST_CASE("binning boundaries") {
  BinningScheme s;
  s.set(metric(MetricId::trust_flow), {0, 20, 40});
  CHECK(s.bin_of(metric(MetricId::trust_flow), 20) == 1);
  CHECK(s.bin_of(metric(MetricId::trust_flow), 19.999) == 0);
  CHECK(s.bin_of(metric(MetricId::trust_flow), 40) == 1);  // closed last bin
  CHECK(s.bin_of(metric(MetricId::trust_flow), 0) == 0);
  CHECK_THROWS_AS(s.bin_of(metric(MetricId::trust_flow), 41), AnalysisError);
  CHECK_THROWS_AS(s.set(metric(MetricId::page_rank), {0, 0, 1}), ArgumentError);
}

TEST_CASE("conditions render like the published table") {
  BinningScheme s;
  s.set(metric(MetricId::page_rank), {0, 1.8, 3.6, 5.4, 7.2, 9});
  s.set(Attribute::rank(), {1, 4511, 9021, 13531, 18041, 22551});
  CHECK(s.condition(metric(MetricId::page_rank), 4).render() == "page_rank > 7.2");
  CHECK(s.condition(metric(MetricId::page_rank), 0).render() == "page_rank ≤ 1.8");
  CHECK(s.condition(metric(MetricId::page_rank), 3).render() == "5.4 ≤ page_rank < 7.2");
  CHECK(s.condition(Attribute::rank(), 0).render() == "webometric_rank ≤ 4511");
  CHECK(s.condition(Attribute::rank(), 4).render() == "webometric_rank > 18041");
}

TEST_CASE("discretize") {
  Dataset d;
  for (int i = 0; i < 3; ++i) {
    SiteRecord r;
    r.domain = "d" + std::to_string(i);
    r.webometric_rank = 1 + i;
    r.value(MetricId::trust_flow) = i == 1 ? std::optional<double>{} : std::optional<double>{i * 20.0};
    d.records.push_back(r);
  }
  BinningScheme s;
  s.set(metric(MetricId::trust_flow), {0, 20, 40});
  s.set(Attribute::rank(), {1, 2, 3});
  const MetricId ids[] = {MetricId::trust_flow};
  const auto t = discretize(d, ids, s);
  REQUIRE(t.size() == 3);
  CHECK(t.transactions[0] == Itemset{item(MetricId::trust_flow, 0), Item{Attribute::rank(), 0}});
  CHECK(t.transactions[1] == Itemset{Item{Attribute::rank(), 1}});  // missing trust_flow
  CHECK(t.transactions[2] == Itemset{item(MetricId::trust_flow, 1), Item{Attribute::rank(), 1}});

  const auto with_missing = discretize(d, ids, s, true);
  CHECK(with_missing.transactions[1].size() == 2);

  BinningScheme narrow;
  narrow.set(metric(MetricId::trust_flow), {0, 10, 20});
  narrow.set(Attribute::rank(), {1, 2, 3});
  CHECK_THROWS_AS(discretize(d, ids, narrow), AnalysisError);
}

TEST_CASE("mine_frequent examples") {
  const auto A = item(MetricId::backlinks, 0), B = item(MetricId::trust_flow, 0);
  TransactionTable t{{{A, B}, {A, B}, {A}, {B}}};
  const auto f = mine_frequent(t, 50, 4);
  REQUIRE(f.size() == 3);
  CHECK(f[0].items == Itemset{A});
  CHECK(f[0].support_pct == 75);
  CHECK(f[1].items == Itemset{A, B});
  CHECK(f[1].support_pct == 50);
  CHECK(f[2].items == Itemset{B});
  CHECK(mine_frequent(t, 100, 4).empty());
  const auto single = mine_frequent(TransactionTable{{{A}}}, 50, 4);
  REQUIRE(single.size() == 1);
  CHECK(single[0].support_pct == 100);
  CHECK(mine_frequent(TransactionTable{}, 50, 4).empty());
  CHECK_THROWS_AS(mine_frequent(t, 0, 4), ArgumentError);
  CHECK_THROWS_AS(mine_frequent(t, 101, 4), ArgumentError);
}

TEST_CASE("Apriori agrees with brute force on random instances") {
  const auto r = testing::compare_miner_with_oracle(300, 99);
  CHECK(r.instances == 300);
  INFO(r.first_failure);
  CHECK(r.discrepancies == 0);
}

TEST_CASE("downward closure on the replay dataset") {
  const auto d = replay();
  const auto features = select_features(d, 14);
  BinningScheme s;
  for (auto id : features) {
    std::vector<double> vals;
    for (const auto& v : d.column(id))
      if (v) vals.push_back(*v);
    s.set(metric(id), equal_width_bins(vals, 5));
  }
  std::vector<double> ranks;
  for (const auto& v : d.ranks()) ranks.push_back(*v);
  s.set(Attribute::rank(), equal_width_bins(ranks, 5));
  const auto f = mine_frequent(discretize(d, features, s), 5, 5);
  std::map<Itemset, std::uint32_t> counts;
  for (const auto& x : f) counts.emplace(x.items, x.count);
  for (const auto& x : f) {
    for (std::size_t drop = 0; x.items.size() > 1 && drop < x.items.size(); ++drop) {
      Itemset sub = x.items;
      sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(drop));
      auto it = counts.find(sub);
      REQUIRE(it != counts.end());
      CHECK(it->second >= x.count);
    }
  }
}

TEST_CASE("derive_rules examples") {
  BinningScheme s;
  s.set(metric(MetricId::page_rank), {0, 1.8, 3.6, 5.4, 7.2, 9});
  s.set(metric(MetricId::trust_flow), {1, 18.4, 35.8, 53.2, 70.6, 88});
  s.set(Attribute::rank(), {1, 4511, 9021, 13531, 18041, 22551});
  const auto pr = item(MetricId::page_rank, 4), tf = item(MetricId::trust_flow, 3);
  const Item top{Attribute::rank(), 0};
  const std::vector<FrequentItemset> sets = {
      {{pr}, 9, 12}, {{tf}, 10, 13.33}, {{top}, 20, 26.67}, {{pr, top}, 9, 12}, {{tf, top}, 9, 12}, {{pr, tf}, 4, 5.33},
  };
  const auto rules = derive_rules(sets, 75, s, 95);
  REQUIRE(rules.size() == 1);
  CHECK(rules[0].antecedent_text() == "page_rank > 7.2");
  CHECK(rules[0].consequent.render() == "webometric_rank ≤ 4511");
  CHECK(rules[0].confidence_pct == 100);
  CHECK(rules[0].support_pct == 12);

  const auto all = derive_rules(sets, 75, s, 60);
  REQUIRE(all.size() == 2);
  const auto it = std::find_if(all.begin(), all.end(), [](const Rule& r) { return r.antecedent_count == 10; });
  REQUIRE(it != all.end());
  CHECK(it->confidence_pct == 90);
  CHECK(it->support_pct == 12);
}

TEST_CASE("top_rules ordering") {
  auto rule = [](double conf, double sup, std::size_t len, std::uint8_t bin) {
    Rule r;
    r.confidence_pct = conf;
    r.support_pct = sup;
    for (std::size_t i = 0; i < len; ++i) r.antecedent_items.push_back(Item{Attribute{static_cast<std::uint8_t>(i)}, bin});
    return r;
  };
  const std::vector<Rule> rules = {rule(90, 12, 1, 0), rule(100, 8, 1, 0), rule(100, 12, 2, 0), rule(100, 12, 1, 1),
                                   rule(100, 12, 1, 0)};
  const auto by_conf = top_rules(rules, RuleKey::confidence);
  REQUIRE(by_conf.size() == 5);
  CHECK(by_conf[0].antecedent_items.size() == 1);
  CHECK(by_conf[0].antecedent_items[0].bin == 0);
  CHECK(by_conf[1].antecedent_items[0].bin == 1);
  CHECK(by_conf[2].antecedent_items.size() == 2);
  CHECK(by_conf[3].support_pct == 8);
  CHECK(by_conf[4].confidence_pct == 90);
  const auto by_sup = top_rules(rules, RuleKey::support, 2);
  REQUIRE(by_sup.size() == 2);
  CHECK(by_sup[0].support_pct == 12);
  CHECK(by_sup[0].confidence_pct == 100);
}

TEST_CASE("reconstruct_counts") {
  using P = std::pair<std::uint32_t, std::uint32_t>;
  CHECK(reconstruct_counts(100, 12, 75) == P{9, 9});
  CHECK(reconstruct_counts(61.54, 10.67, 75) == P{8, 13});
  CHECK(reconstruct_counts(90, 12, 75) == P{9, 10});
  CHECK(reconstruct_counts(100, 10.67, 75) == P{8, 8});
  CHECK(reconstruct_counts(100, 5.33, 75) == P{4, 4});
  CHECK(reconstruct_counts(100, 8, 75) == P{6, 6});
  CHECK_FALSE(reconstruct_counts(100, 12.5, 75));
}

TEST_CASE("select_features") {
  const auto d = replay();
  const auto f = select_features(d, 14);
  const std::set<MetricId> want = {MetricId::page_rank,        MetricId::alexa_rank,     MetricId::backlinks,
                                   MetricId::external_links,   MetricId::trust_flow,     MetricId::domain_authority,
                                   MetricId::page_authority,   MetricId::indexed_pages,  MetricId::referring_domains,
                                   MetricId::referring_ips};
  CHECK(f.size() == 10);
  CHECK(std::set<MetricId>(f.begin(), f.end()) == want);
  CHECK(std::find(f.begin(), f.end(), MetricId::security) == f.end());
  CHECK_THROWS_AS(select_features(d, 0), ArgumentError);

  Dataset two;
  for (int i = 1; i <= 6; ++i) {
    SiteRecord r;
    r.domain = "x" + std::to_string(i);
    r.webometric_rank = i;
    r.value(MetricId::backlinks) = i * i;
    r.value(MetricId::trust_flow) = 100 - i * 7;
    two.records.push_back(r);
  }
  CHECK(select_features(two, 3).size() == 2);
}

TEST_CASE("security is dropped when it ranks among the top k") {
  Dataset d;
  for (int i = 1; i <= 12; ++i) {
    SiteRecord r;
    r.domain = "s" + std::to_string(i);
    r.webometric_rank = i * 100;
    r.value(MetricId::security) = i <= 6 ? 1 : 0;
    r.value(MetricId::trust_flow) = 40 + (i % 3) * 5 + (i > 6 ? 2 : 0);
    d.records.push_back(r);
  }
  const auto f = select_features(d, 2);
  CHECK(std::find(f.begin(), f.end(), MetricId::security) == f.end());
  CHECK(f == std::vector<MetricId>{MetricId::trust_flow});
}

TEST_CASE("mine_dataset on the replay dataset embeds the published rules") {
  const auto report = mine_dataset(replay());
  CHECK(report.features.size() == 10);
  const auto has = [&](std::string_view ante, double conf, double sup) {
    return std::any_of(report.rules.begin(), report.rules.end(), [&](const Rule& r) {
      return r.antecedent_text() == ante && std::abs(r.confidence_pct - conf) < 0.01 &&
             std::abs(r.support_pct - sup) < 0.01;
    });
  };
  CHECK(has("page_rank > 7.2", 100, 12));
  CHECK(has("domain_authority > 75", 100, 12));
  CHECK(has("page_authority > 76", 100, 100.0 * 8 / 75));
  CHECK(has("53.2 ≤ trust_flow < 70.6", 90, 12));
  for (const auto& r : report.rules) {
    CHECK(r.support_pct <= r.confidence_pct);
    CHECK(r.antecedent.size() <= 4);
  }
  CHECK(report.by_confidence.size() == 30);
  CHECK(report.by_support.size() == 30);
  const auto csv = rules_csv(report.rules);
  CHECK(csv.starts_with("antecedent,consequent,confidence_pct,support_pct,match_count,antecedent_count,n\n"));
}
