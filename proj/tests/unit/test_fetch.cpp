#include <doctest.h>

#include <chrono>

#include "paths.hpp"
#include "seorank/error.hpp"
#include "seorank/fetch.hpp"
#include "test_server.hpp"

using namespace seorank;
using testing::MissingPage;
using testing::ServerConfig;
using testing::TestServer;

namespace {

FetchPolicy quick() {
  FetchPolicy p;
  p.timeout_ms = 3000;
  p.per_host_delay_ms = 0;
  return p;
}

FetchErrorKind error_kind(const std::string& url, const FetchPolicy& p) {
  try {
    fetch_page(url, p);
  } catch (const FetchError& e) {
    return e.kind();
  }
  FAIL("expected FetchError");
  return FetchErrorKind::other;
}

}  // namespace

TEST_CASE("gzip flag follows the server") {
  for (bool gzip : {true, false}) {
    CAPTURE(gzip);
    TestServer server(ServerConfig{.gzip = gzip});
    const auto r = fetch_page(server.origin() + "/", quick());
    CHECK(r.status == 200);
    CHECK(r.gzip == gzip);
    CHECK_FALSE(r.https);
    CHECK(r.body == TestServer::home_page(12 * 1024));
    CHECK(fetch_metrics(r, {}).page_size_kb == 12.0);
  }
}

TEST_CASE("page size is measured on decoded bytes") {
  TestServer server(ServerConfig{.home_bytes = 5000});
  const auto r = fetch_page(server.origin() + "/", quick());
  CHECK(r.body.size() == 5000);
  CHECK(fetch_metrics(r, {}).page_size_kb == 4.9);  // 4.8828 rounds to 4.9
}

TEST_CASE("fetch_metrics arithmetic") {
  FetchResult r;
  r.body.assign(2048, 'a');
  r.load_time_ms = 123.4;
  r.gzip = true;
  r.https = true;
  const auto m = fetch_metrics(r, {"https://a/x.js", "https://a/y.css", "https://a/x.js"});
  CHECK(m.page_size_kb == 2.0);
  CHECK(m.request_count == 3);
  CHECK(m.load_time_ms == 123.4);
  CHECK(m.gzip);
  CHECK(m.security);
  CHECK(fetch_metrics(FetchResult{}, {}).request_count == 1);
}

TEST_CASE("redirect limit") {
  TestServer server(ServerConfig{});
  const auto r = fetch_page(server.origin() + "/r/5", quick());
  CHECK(r.status == 200);
  CHECK(r.redirects == 5);
  CHECK(r.final_url == server.origin() + "/");
  CHECK(error_kind(server.origin() + "/r/6", quick()) == FetchErrorKind::too_many_redirects);
}

TEST_CASE("tls") {
  ServerConfig cfg;
  cfg.tls = true;
  cfg.cert_file = testing::source_path("tests/data/tls/cert.pem");
  cfg.key_file = testing::source_path("tests/data/tls/key.pem");
  TestServer server(cfg);

  auto p = quick();
  p.ca_file = cfg.cert_file;
  const auto r = fetch_page(server.origin() + "/", p);
  CHECK(r.status == 200);
  CHECK(r.https);
  CHECK(fetch_metrics(r, {}).security);

  CHECK(error_kind(server.origin() + "/", quick()) == FetchErrorKind::tls_error);

  auto lax = quick();
  lax.verify_tls = false;
  CHECK(fetch_page(server.origin() + "/", lax).https);
}

TEST_CASE("transport failures") {
  CHECK(error_kind("http://no-such-host.invalid/", quick()) == FetchErrorKind::dns_failure);
  CHECK_THROWS_AS(fetch_page("not a url", quick()), ArgumentError);
  CHECK_THROWS_AS(fetch_page("ftp://example.org/", quick()), ArgumentError);

  TestServer server(ServerConfig{});
  auto p = quick();
  p.timeout_ms = 300;
  const auto start = std::chrono::steady_clock::now();
  CHECK(error_kind(server.origin() + "/slow?ms=1500", p) == FetchErrorKind::timeout);
  CHECK(std::chrono::steady_clock::now() - start < std::chrono::milliseconds(1400));
}

TEST_CASE("bodies are truncated at the cap") {
  TestServer server(ServerConfig{.gzip = false, .home_bytes = 40 * 1024});
  auto p = quick();
  p.max_body_kb = 16;
  const auto r = fetch_page(server.origin() + "/", p);
  CHECK(r.truncated);
  CHECK(r.body.size() == 16 * 1024);
  CHECK_FALSE(fetch_page(server.origin() + "/", quick()).truncated);
}

TEST_CASE("robots and sitemap probes") {
  {
    TestServer server(ServerConfig{});
    CHECK(check_robots(server.origin(), quick()));
    CHECK(check_sitemap(server.origin(), quick()));
  }
  {
    TestServer server(ServerConfig{.robots = false});
    CHECK_FALSE(check_robots(server.origin(), quick()));
    CHECK_FALSE(check_sitemap(server.origin(), quick()));
  }
  {
    // Every path answers 200 HTML; neither file exists.
    TestServer server(ServerConfig{.robots = false, .missing = MissingPage::soft_404});
    CHECK_FALSE(check_robots(server.origin(), quick()));
    CHECK_FALSE(check_sitemap(server.origin(), quick()));
  }
  {
    TestServer server(ServerConfig{.robots = false, .sitemap_xml = true});
    CHECK(check_sitemap(server.origin(), quick()));
  }
  {
    TestServer server(ServerConfig{.sitemap_in_robots = false});
    CHECK(check_robots(server.origin(), quick()));
    CHECK_FALSE(check_sitemap(server.origin(), quick()));
  }
}

TEST_CASE("custom 404 probe") {
  const std::pair<MissingPage, bool> cases[] = {
      {MissingPage::proper_404, true}, {MissingPage::soft_404, false}, {MissingPage::error_500, false}};
  for (const auto& [missing, want] : cases) {
    TestServer server(ServerConfig{.missing = missing});
    CHECK(check_custom_404(server.origin(), quick()) == want);
  }
}

TEST_CASE("broken links") {
  TestServer server(ServerConfig{});
  const auto o = server.origin();
  const std::vector<std::string> links = {o + "/ok", o + "/missing", o + "/gone", o + "/nohead"};
  auto p = quick();
  p.per_host_delay_ms = 20;
  const auto r = probe_broken_links(links, p);
  CHECK(r.checked == TestServer::kHomeDistinctLinks);
  CHECK(r.broken == TestServer::kHomeBrokenLinks);
  REQUIRE(r.links.size() == 4);
  CHECK(r.links[0].status == 200);
  CHECK(r.links[1].status == 404);
  CHECK(r.links[2].status == 410);
  CHECK(r.links[3].status == 200);  // HEAD answered 405, GET succeeded
  CHECK_FALSE(r.links[3].broken);

  p.broken_link_sample = 2;
  const auto sampled = probe_broken_links(links, p);
  CHECK(sampled.checked == 2);
  CHECK(sampled.broken == 1);

  const auto empty = probe_broken_links({}, p);
  CHECK(empty.checked == 0);
  CHECK(empty.broken == 0);

  auto polite = quick();
  const auto skipped = probe_broken_links({o + "/private/x", "http://no-such-host.invalid/"}, polite);
  REQUIRE(skipped.links.size() == 2);
  CHECK(skipped.links[0].skipped);
  CHECK(skipped.links[1].broken);
  CHECK(skipped.checked == 1);
  CHECK(skipped.broken == 1);
}

TEST_CASE("fetch policy validation") {
  CHECK_NOTHROW(FetchPolicy{}.validate());
  FetchPolicy p;
  p.timeout_ms = 0;
  CHECK_THROWS_AS(p.validate(), ArgumentError);
  p = FetchPolicy{};
  p.max_concurrent = 0;
  CHECK_THROWS_AS(p.validate(), ArgumentError);
}
