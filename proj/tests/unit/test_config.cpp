#include <doctest.h>

#include <cstdlib>
#include <filesystem>

#include "seorank/config.hpp"
#include "seorank/error.hpp"
#include "seorank/text.hpp"

using namespace seorank;

TEST_CASE("empty config is the default") {
  const auto c = parse_config("");
  CHECK(c.fetch == FetchPolicy{});
  CHECK(c.mining.bins == 5);
  CHECK(c.mining.feature_k == 14);
  CHECK(c.mining.min_support_pct == 5.0);
  CHECK(c.mining.min_confidence_pct == 60.0);
  CHECK(c.social_domains == default_social_domains());
  CHECK(c.fixtures.empty());
}

TEST_CASE("config values override defaults") {
  const auto c = parse_config(R"(
[fetch]
timeout_ms = 2000
user_agent = "probe"
verify_tls = false

[mining]
bins = 3
method = "quantile"
min_support_pct = 10.0

[analysis]
log_shift = 0.5

[providers]
fixtures = ["a.json", "b.json"]
)");
  CHECK(c.fetch.timeout_ms == 2000);
  CHECK(c.fetch.user_agent == "probe");
  CHECK_FALSE(c.fetch.verify_tls);
  CHECK(c.mining.bins == 3);
  CHECK(c.mining.method == miner::BinningMethod::quantile);
  CHECK(c.mining.min_support_pct == 10.0);
  CHECK(c.analysis().log_shift == 0.5);
  CHECK(c.fixtures == std::vector<std::string>{"a.json", "b.json"});
}

TEST_CASE("config round trip") {
  auto c = parse_config("[mining]\nbins = 4\n[audit]\nsocial_domains = [\"x.com\"]\n");
  const auto again = parse_config(to_toml(c));
  CHECK(to_toml(again) == to_toml(c));
  CHECK(again.mining.bins == 4);
  CHECK(again.social_domains == std::vector<std::string>{"x.com"});
}

TEST_CASE("config rejects unknown keys and bad values") {
  CHECK_THROWS_AS(parse_config("[fetch]\ntimeout = 5\n"), ParseError);
  CHECK_THROWS_AS(parse_config("[nope]\nx = 1\n"), ParseError);
  CHECK_THROWS_AS(parse_config("[fetch]\ntimeout_ms = \"fast\"\n"), ParseError);
  CHECK_THROWS_AS(parse_config("[mining]\nmethod = \"kmeans\"\n"), ParseError);
  CHECK_THROWS_AS(parse_config("this is not toml"), ParseError);
}

TEST_CASE("config from the environment") {
  const auto path = (std::filesystem::temp_directory_path() / "seorank_env_config.toml").string();
  text::write_file(path, "[mining]\ntop_n = 7\n");
  ::setenv(std::string(kConfigEnvVar).c_str(), path.c_str(), 1);
  CHECK(load_default_config().mining.top_n == 7);
  ::unsetenv(std::string(kConfigEnvVar).c_str());
  CHECK(load_default_config().mining.top_n == 30);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(load_config_file(path), IoError);
}
