#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

namespace seorank {

// The 38 SEO metrics, in catalog order. Order is part of the CSV contract:
// save_dataset_csv writes columns in this order.
enum class MetricId : std::uint8_t {
  alexa_rank,
  backlinks,
  total_links,
  internal_links,
  external_links,
  broken_links,
  trust_flow,
  request_count,
  load_time_ms,
  h1_count,
  img_without_alt,
  iframe_count,
  embed_object_count,
  html_errors,
  html_warnings,
  css_errors,
  css_warnings,
  title_chars,
  meta_description_chars,
  page_size_kb,
  encoding_declared,
  robots_txt,
  sitemap,
  responsive,
  social_media,
  indexed_pages,
  language_english,
  doctype,
  page_404,
  gzip,
  referring_domains,
  referring_ips,
  security,
  performance,
  accessibility,
  page_rank,
  domain_authority,
  page_authority,
};

inline constexpr std::size_t kMetricCount = 38;

constexpr std::size_t index_of(MetricId id) { return static_cast<std::size_t>(id); }

enum class MetricKind : std::uint8_t { numeric, boolean };
enum class MetricSource : std::uint8_t { fetch, onpage, provider };
enum class MetricScale : std::uint8_t {
  count,
  milliseconds,
  kilobytes,
  rank_position,
  score_0_100,
  score_0_10,
  flag,
};
enum class TransformPolicy : std::uint8_t { never_log, log_candidate };

struct MetricDescriptor {
  MetricId id;
  std::string_view name;
  MetricKind kind;
  MetricSource source;
  MetricScale scale;
  TransformPolicy transform_policy;

  bool is_boolean() const { return kind == MetricKind::boolean; }
};

/// Checks a value against the metric's scale: counts/ms/kb >= 0, rank
/// positions >= 1, scores within their range, flags in {0,1}. Non-finite
/// values never fit.
bool within_scale(const MetricDescriptor& d, double value);

/// Human-readable scale bounds, e.g. "[0, 10]".
std::string_view scale_bounds(MetricScale scale);

class MetricRegistry {
 public:
  explicit MetricRegistry(std::span<const MetricDescriptor> entries) : entries_(entries) {}

  std::size_t size() const { return entries_.size(); }
  const MetricDescriptor& at(MetricId id) const { return entries_[index_of(id)]; }
  std::optional<MetricId> find(std::string_view name) const;

  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

 private:
  std::span<const MetricDescriptor> entries_;
};

/// The canonical 38-entry catalog. The returned reference is to static storage.
const MetricRegistry& builtin_registry();

std::string_view to_string(MetricId id);
std::string_view to_string(MetricKind kind);
std::string_view to_string(MetricSource source);
std::string_view to_string(MetricScale scale);
std::string_view to_string(TransformPolicy policy);

std::optional<MetricId> parse_metric_id(std::string_view name);

}  // namespace seorank
