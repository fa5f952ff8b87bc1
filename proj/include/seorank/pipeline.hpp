#pragma once

// End-to-end runs: audit one site, collect a dataset, and the CLI driver.

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "seorank/audit.hpp"
#include "seorank/config.hpp"
#include "seorank/dataset.hpp"
#include "seorank/providers.hpp"

namespace seorank {

/// Composite of the configured fixture files (and search fixture), or null
/// when none are configured.
std::shared_ptr<Provider> build_provider(const RunConfig& config);

/// Measures every fetch and on-page metric of one page. Throws FetchError
/// when the page itself cannot be retrieved; failing site probes leave their
/// metric missing and add a note.
struct Measurement {
  MetricValues values{};
  std::string final_url;
  std::vector<std::string> notes;
};
Measurement measure_url(const std::string& url, const RunConfig& config);

/// measure_url + collect. `domain` keys provider lookups; by default the
/// URL host without "www.".
AuditReport audit_url(const std::string& url, const RunConfig& config, const Provider* provider,
                      std::optional<std::string> domain = std::nullopt);

struct SiteEntry {
  std::string domain;  // host, host:port, or absolute URL
  std::int64_t rank = 0;
};

/// "domain,rank" lines; a header line, blank lines and '#' comments are
/// skipped. Throws ParseError naming the line.
std::vector<SiteEntry> parse_sites(std::string_view text);

/// Candidate home URLs for a sites-file entry: the URL itself, or https
/// then http for a bare host.
std::vector<std::string> home_candidates(const std::string& domain);

struct CollectResult {
  Dataset dataset;
  std::vector<std::string> notes;
};

/// Audits each site in order; unreachable sites keep only provider values.
CollectResult collect_sites(const std::vector<SiteEntry>& sites, const RunConfig& config, const Provider* provider);

/// Entry point of the seo-rankminer executable. Exit codes: 0 success,
/// 1 data or validation failure, 2 usage or I/O failure.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace seorank
