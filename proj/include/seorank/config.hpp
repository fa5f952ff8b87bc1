#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "seorank/audit.hpp"
#include "seorank/fetch.hpp"
#include "seorank/miner.hpp"

namespace seorank {

inline constexpr std::string_view kConfigEnvVar = "SEO_RANKMINER_CONFIG";

/// Every tunable of a run. Defaults live in the member initializers of the
/// nested structs; a default-constructed RunConfig is the documented default.
struct RunConfig {
  FetchPolicy fetch{};
  miner::MiningOptions mining{};  // includes the analysis options
  std::vector<std::string> social_domains = default_social_domains();
  std::vector<std::string> fixtures;  // provider fixture JSON files, queried in order
  std::string search_fixture;         // site: result counts; empty = none

  const stats::AnalysisOptions& analysis() const { return mining.analysis; }
  stats::AnalysisOptions& analysis() { return mining.analysis; }
};

/// Tables: [fetch] [analysis] [mining] [audit] [providers]. Missing keys keep
/// their defaults; unknown keys and wrongly typed values throw ParseError.
RunConfig parse_config(std::string_view toml);
RunConfig load_config_file(const std::string& path);
/// Emits every field, so parse_config(to_toml(c)) reproduces c.
std::string to_toml(const RunConfig& c);

/// $SEO_RANKMINER_CONFIG when set, else defaults.
RunConfig load_default_config();

}  // namespace seorank
