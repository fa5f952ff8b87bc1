#include <doctest.h>

#include "seorank/error.hpp"
#include "seorank/providers.hpp"

using namespace seorank;

namespace {

const char* kFixture = R"({
  "Harvard.edu": {"trust_flow": 88, "page_rank": 9, "backlinks": null},
  "mit.edu": {"domain_authority": 95}
})";

class BrokenClient final : public SearchClient {
 public:
  std::optional<std::uint64_t> result_count(const std::string&) const override {
    throw ProviderError("search backend refused the request");
  }
};

}  // namespace

TEST_CASE("fixture provider echoes its data") {
  const auto p = FixtureProvider::from_json(kFixture);
  CHECK(p->domain_count() == 2);
  const auto r = p->get(" HARVARD.edu", MetricId::trust_flow);
  REQUIRE(r.available());
  CHECK(*r.value == 88);
  CHECK(r.source_name == "fixture");
  CHECK(r.retrieved_at.size() == 20);
  CHECK_FALSE(p->get("harvard.edu", MetricId::backlinks).available());      // explicit null
  CHECK_FALSE(p->get("harvard.edu", MetricId::alexa_rank).available());     // absent metric
  CHECK_FALSE(p->get("unknown.example", MetricId::trust_flow).available());  // absent domain
}

TEST_CASE("provider preconditions") {
  const auto p = FixtureProvider::from_json(kFixture);
  CHECK_THROWS_AS(p->get("harvard.edu", MetricId::h1_count), ArgumentError);
  CHECK_THROWS_AS(p->get("harvard.edu", MetricId::gzip), ArgumentError);
}

TEST_CASE("fixtures are validated at load") {
  CHECK_THROWS_AS(FixtureProvider::from_json(R"({"a.edu": {"page_rank": 11}})"), ParseError);
  CHECK_THROWS_AS(FixtureProvider::from_json(R"({"a.edu": {"trust_flow": -1}})"), ParseError);
  CHECK_THROWS_AS(FixtureProvider::from_json(R"({"a.edu": {"no_such_metric": 1}})"), ParseError);
  CHECK_THROWS_AS(FixtureProvider::from_json(R"({"a.edu": 3})"), ParseError);
  CHECK_THROWS_AS(FixtureProvider::from_json("[1,2]"), ParseError);
  CHECK_THROWS_AS(FixtureProvider::from_json("{oops"), ParseError);
  try {
    FixtureProvider::from_json(R"({"bad.edu": {"page_rank": 12}})");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("bad.edu") != std::string::npos);
  }
}

TEST_CASE("composite takes the first available answer") {
  const std::shared_ptr<const Provider> a = FixtureProvider::from_json(R"({"x.edu": {"trust_flow": null}})", "a");
  const std::shared_ptr<const Provider> b = FixtureProvider::from_json(R"({"x.edu": {"trust_flow": 40}})", "b");
  const std::shared_ptr<const Provider> c = FixtureProvider::from_json(R"({"x.edu": {"trust_flow": 70}})", "c");
  const auto chain = composite({a, b, c});
  const auto r = chain->get("x.edu", MetricId::trust_flow);
  REQUIRE(r.available());
  CHECK(*r.value == 40);
  CHECK(r.source_name == "b");
  CHECK_FALSE(composite({})->get("x.edu", MetricId::trust_flow).available());
}

TEST_CASE("search client answers site queries") {
  const auto client = FixtureSearchClient::from_json(R"({"harvard.edu": 1200000})");
  CHECK(indexed_pages_query("Harvard.EDU", *client) == 1200000u);
  CHECK_FALSE(indexed_pages_query("mit.edu", *client));
  CHECK_FALSE(client->result_count("harvard.edu"));
  CHECK_THROWS_AS(FixtureSearchClient::from_json(R"({"a.edu": -3})"), ParseError);

  SearchProvider sp(client);
  CHECK(*sp.get("harvard.edu", MetricId::indexed_pages).value == 1200000);
  CHECK_FALSE(sp.get("harvard.edu", MetricId::backlinks).available());

  SearchProvider broken(std::make_shared<BrokenClient>());
  CHECK_THROWS_AS(broken.get("harvard.edu", MetricId::indexed_pages), ProviderError);
}

TEST_CASE("collect fills every slot") {
  const auto& reg = builtin_registry();
  std::size_t provider_slots = 0;
  for (const auto& d : reg) provider_slots += d.source == MetricSource::provider ? 1 : 0;
  CHECK(provider_slots == 11);

  const auto p = FixtureProvider::from_json(kFixture);
  MetricValues measured{};
  measured[index_of(MetricId::h1_count)] = 1;
  measured[index_of(MetricId::page_rank)] = 4;  // measured beats the fixture's 9
  const auto c = collect("harvard.edu", p.get(), reg, measured);

  std::size_t filled = 0, missing = 0;
  for (std::size_t i = 0; i < kMetricCount; ++i) {
    if (c.values[i]) ++filled;
    CHECK((c.provenance[i] == Provenance::missing) == !c.values[i]);
    missing += c.provenance[i] == Provenance::missing ? 1 : 0;
  }
  CHECK(filled == 3);
  CHECK(missing == kMetricCount - 3);
  CHECK(*c.values[index_of(MetricId::page_rank)] == 4);
  CHECK(c.provenance[index_of(MetricId::page_rank)] == Provenance::measured);
  CHECK(c.provenance[index_of(MetricId::trust_flow)] == Provenance::provider);

  const auto none = collect("harvard.edu", nullptr, reg, MetricValues{});
  for (std::size_t i = 0; i < kMetricCount; ++i) CHECK(none.provenance[i] == Provenance::missing);
}
