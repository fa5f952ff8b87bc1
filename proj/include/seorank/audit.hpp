#pragma once

// On-page metric extraction and the approximate markup/style linter.

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "seorank/css_lint.hpp"
#include "seorank/dataset.hpp"
#include "seorank/html.hpp"
#include "seorank/url.hpp"

namespace seorank {

const std::vector<std::string>& default_social_domains();

struct OnPageMetrics {
  std::size_t h1_count = 0;
  std::size_t img_without_alt = 0;
  std::size_t iframe_count = 0;
  std::size_t embed_object_count = 0;
  std::size_t title_chars = 0;
  std::size_t meta_description_chars = 0;
  bool doctype = false;
  bool encoding_declared = false;
  bool language_english = false;
  bool responsive = false;
  std::size_t social_media = 0;
  std::size_t total_links = 0;
  std::size_t internal_links = 0;
  std::size_t external_links = 0;

  bool operator==(const OnPageMetrics&) const = default;
};

/// Anchors count as links when their href resolves to an http(s) URL;
/// empty, fragment-only, javascript:, mailto: and similar hrefs are skipped.
/// A link is internal when its host is the page host (minus "www.") or a
/// subdomain of it.
OnPageMetrics extract_onpage(const html::Document& doc, const Url& page_url,
                             const std::vector<std::string>& social_domains = default_social_domains());

struct LintReport {
  std::size_t html_errors = 0;
  std::size_t html_warnings = 0;
  std::size_t css_errors = 0;
  std::size_t css_warnings = 0;

  bool operator==(const LintReport&) const = default;
};

inline constexpr std::string_view kMarkupRuleSet = "html-lint/1";

/// Rule set html-lint/1.
///   errors:   E1 unclosed non-void element, E2 duplicate id value (each
///             repeat), E3 misnested end tag, E4 end tag with no open
///             element, E5 unknown element (custom elements and svg/math
///             content exempt)
///   warnings: W1 <img> without alt, W2 <html> without lang,
///             W3 deprecated presentational element
/// CSS counts cover `stylesheets`, inline <style> blocks and style="" attributes.
LintReport lint_markup(const html::Document& doc, const std::vector<std::string>& stylesheets = {});

/// Distinct absolute URLs of images, scripts, stylesheets and iframes
/// referenced by the document, in document order. data: URIs are skipped.
std::vector<std::string> extract_subresources(const html::Document& doc, const Url& page_url);

/// Distinct absolute http(s) anchor targets in document order, fragments
/// stripped. This is the candidate list for broken-link probing.
std::vector<std::string> extract_links(const html::Document& doc, const Url& page_url);

/// Stylesheet URLs (<link rel=stylesheet>) in document order.
std::vector<std::string> extract_stylesheets(const html::Document& doc, const Url& page_url);

/// Base URL in effect for the document: <base href> resolved against the page.
Url effective_base(const html::Document& doc, const Url& page_url);

/// Writes the on-page and lint values into their metric slots.
void store(const OnPageMetrics& m, MetricValues& values);
void store(const LintReport& r, MetricValues& values);

enum class Provenance : std::uint8_t { measured, provider, missing };
std::string_view to_string(Provenance p);

using ProvenanceMap = std::array<Provenance, kMetricCount>;

/// One audited URL. Every one of the 38 slots is either filled or missing.
struct AuditReport {
  std::string url;
  std::string fetched_at;  // ISO 8601 UTC
  MetricValues values{};
  ProvenanceMap provenance{};
  std::vector<std::string> notes;  // diagnostics for skipped probes

  /// {url, fetched_at, metrics: {id: value|null}, provenance: {id: ...}},
  /// keys in registry order.
  std::string to_json(int indent = 2) const;
};

}  // namespace seorank
