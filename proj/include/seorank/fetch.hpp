#pragma once

// Timed HTTP retrieval and the site-level probes behind the fetch metrics.

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "seorank/error.hpp"

namespace seorank {

struct FetchPolicy {
  int timeout_ms = 15000;
  int max_redirects = 5;
  int max_body_kb = 5120;
  std::string user_agent = "seo-rankminer/0.1";
  int max_concurrent = 8;
  int per_host_delay_ms = 500;
  int broken_link_sample = 50;
  bool verify_tls = true;
  bool respect_robots = true;
  std::string ca_file;  // extra trust anchors (PEM); empty = system store

  /// Throws ArgumentError when a field is outside its domain.
  void validate() const;
  bool operator==(const FetchPolicy&) const = default;
};

struct FetchResult {
  std::string requested_url;
  std::string final_url;
  int status = 0;
  std::string body;  // decoded bytes, at most max_body_kb * 1024
  double load_time_ms = 0;  // request start to last body byte, final hop
  bool gzip = false;        // response carried a compressing Content-Encoding
  bool https = false;
  bool truncated = false;
  int redirects = 0;
  std::map<std::string, std::string> headers;  // lowercase names

  std::string header(std::string_view name) const;
};

enum class FetchErrorKind : std::uint8_t {
  dns_failure,
  timeout,
  too_many_redirects,
  tls_error,
  connection,
  disallowed,  // robots.txt forbids the probe path
  other,
};

std::string_view to_string(FetchErrorKind kind);

class FetchError : public Error {
 public:
  FetchError(FetchErrorKind kind, const std::string& url, const std::string& detail);
  FetchErrorKind kind() const { return kind_; }

 private:
  FetchErrorKind kind_;
};

enum class HttpMethod : std::uint8_t { get, head };

/// Fetches an absolute http(s) URL, following up to policy.max_redirects
/// redirects. Throws ArgumentError for a malformed URL and FetchError for
/// transport failures.
FetchResult fetch_page(const std::string& url, const FetchPolicy& policy);

/// Single request with no redirect handling.
FetchResult fetch_once(const std::string& url, const FetchPolicy& policy, HttpMethod method = HttpMethod::get);

struct FetchMetrics {
  double page_size_kb = 0;
  double load_time_ms = 0;
  std::size_t request_count = 0;
  bool gzip = false;
  bool security = false;

  bool operator==(const FetchMetrics&) const = default;
};

/// page_size_kb = body bytes / 1024 rounded to one decimal;
/// request_count = 1 + distinct subresource URLs.
FetchMetrics fetch_metrics(const FetchResult& home, const std::vector<std::string>& subresources);

/// True iff GET /robots.txt answers 200 with a non-blank, non-HTML body.
bool check_robots(const std::string& origin, const FetchPolicy& policy);

/// True iff a Sitemap: URL from robots.txt answers 200, or GET /sitemap.xml does.
/// A text/html answer never counts (soft-404 pages).
bool check_sitemap(const std::string& origin, const FetchPolicy& policy);

/// Requests a random nonexistent path without following redirects. True iff
/// the status is exactly 404. With respect_robots, a disallowed probe path
/// throws FetchError(disallowed).
bool check_custom_404(const std::string& origin, const FetchPolicy& policy);

struct LinkCheck {
  std::string url;
  int status = 0;  // 0 on transport failure or when skipped
  bool broken = false;
  bool skipped = false;  // disallowed by robots.txt
  std::string error;
};

struct BrokenLinkReport {
  std::size_t checked = 0;
  std::size_t broken = 0;
  std::vector<LinkCheck> links;  // in input order
};

/// Probes the first broken_link_sample URLs with HEAD (GET on 405). A link is
/// broken on status >= 400 or transport failure. Hosts are probed in
/// parallel up to max_concurrent; requests to one host are serialized and
/// spaced by per_host_delay_ms.
BrokenLinkReport probe_broken_links(const std::vector<std::string>& urls, const FetchPolicy& policy);

}  // namespace seorank
