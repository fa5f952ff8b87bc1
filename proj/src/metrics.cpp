#include "seorank/metrics.hpp"

#include <cmath>

namespace seorank {
namespace {

using K = MetricKind;
using S = MetricSource;
using C = MetricScale;
using P = TransformPolicy;

constexpr std::array<MetricDescriptor, kMetricCount> kCatalog{{
    {MetricId::alexa_rank, "alexa_rank", K::numeric, S::provider, C::rank_position, P::log_candidate},
    {MetricId::backlinks, "backlinks", K::numeric, S::provider, C::count, P::log_candidate},
    {MetricId::total_links, "total_links", K::numeric, S::onpage, C::count, P::log_candidate},
    {MetricId::internal_links, "internal_links", K::numeric, S::onpage, C::count, P::log_candidate},
    {MetricId::external_links, "external_links", K::numeric, S::onpage, C::count, P::log_candidate},
    {MetricId::broken_links, "broken_links", K::numeric, S::fetch, C::count, P::log_candidate},
    {MetricId::trust_flow, "trust_flow", K::numeric, S::provider, C::score_0_100, P::log_candidate},
    {MetricId::request_count, "request_count", K::numeric, S::fetch, C::count, P::log_candidate},
    {MetricId::load_time_ms, "load_time_ms", K::numeric, S::fetch, C::milliseconds, P::log_candidate},
    {MetricId::h1_count, "h1_count", K::numeric, S::onpage, C::count, P::log_candidate},
    {MetricId::img_without_alt, "img_without_alt", K::numeric, S::onpage, C::count, P::log_candidate},
    {MetricId::iframe_count, "iframe_count", K::numeric, S::onpage, C::count, P::log_candidate},
    {MetricId::embed_object_count, "embed_object_count", K::numeric, S::onpage, C::count, P::log_candidate},
    {MetricId::html_errors, "html_errors", K::numeric, S::onpage, C::count, P::log_candidate},
    {MetricId::html_warnings, "html_warnings", K::numeric, S::onpage, C::count, P::log_candidate},
    {MetricId::css_errors, "css_errors", K::numeric, S::onpage, C::count, P::log_candidate},
    {MetricId::css_warnings, "css_warnings", K::numeric, S::onpage, C::count, P::log_candidate},
    {MetricId::title_chars, "title_chars", K::numeric, S::onpage, C::count, P::log_candidate},
    {MetricId::meta_description_chars, "meta_description_chars", K::numeric, S::onpage, C::count, P::log_candidate},
    {MetricId::page_size_kb, "page_size_kb", K::numeric, S::fetch, C::kilobytes, P::log_candidate},
    {MetricId::encoding_declared, "encoding_declared", K::boolean, S::onpage, C::flag, P::never_log},
    {MetricId::robots_txt, "robots_txt", K::boolean, S::fetch, C::flag, P::never_log},
    {MetricId::sitemap, "sitemap", K::boolean, S::fetch, C::flag, P::never_log},
    {MetricId::responsive, "responsive", K::boolean, S::onpage, C::flag, P::never_log},
    {MetricId::social_media, "social_media", K::numeric, S::onpage, C::count, P::log_candidate},
    {MetricId::indexed_pages, "indexed_pages", K::numeric, S::provider, C::count, P::log_candidate},
    {MetricId::language_english, "language_english", K::boolean, S::onpage, C::flag, P::never_log},
    {MetricId::doctype, "doctype", K::boolean, S::onpage, C::flag, P::never_log},
    {MetricId::page_404, "page_404", K::boolean, S::fetch, C::flag, P::never_log},
    {MetricId::gzip, "gzip", K::boolean, S::fetch, C::flag, P::never_log},
    {MetricId::referring_domains, "referring_domains", K::numeric, S::provider, C::count, P::log_candidate},
    {MetricId::referring_ips, "referring_ips", K::numeric, S::provider, C::count, P::log_candidate},
    {MetricId::security, "security", K::boolean, S::fetch, C::flag, P::never_log},
    {MetricId::performance, "performance", K::numeric, S::provider, C::score_0_100, P::never_log},
    {MetricId::accessibility, "accessibility", K::numeric, S::provider, C::score_0_100, P::never_log},
    {MetricId::page_rank, "page_rank", K::numeric, S::provider, C::score_0_10, P::log_candidate},
    {MetricId::domain_authority, "domain_authority", K::numeric, S::provider, C::score_0_100, P::never_log},
    {MetricId::page_authority, "page_authority", K::numeric, S::provider, C::score_0_100, P::never_log},
}};

constexpr bool catalog_is_ordered() {
  for (std::size_t i = 0; i < kCatalog.size(); ++i) {
    if (index_of(kCatalog[i].id) != i) return false;
    if (kCatalog[i].kind == K::boolean && kCatalog[i].transform_policy != P::never_log) return false;
  }
  return true;
}
static_assert(catalog_is_ordered());

}  // namespace

bool within_scale(const MetricDescriptor& d, double value) {
  if (!std::isfinite(value)) return false;
  switch (d.scale) {
    case C::count:
    case C::milliseconds:
    case C::kilobytes:
      return value >= 0.0;
    case C::rank_position:
      return value >= 1.0;
    case C::score_0_100:
      return value >= 0.0 && value <= 100.0;
    case C::score_0_10:
      return value >= 0.0 && value <= 10.0;
    case C::flag:
      return value == 0.0 || value == 1.0;
  }
  return false;
}

std::string_view scale_bounds(MetricScale scale) {
  switch (scale) {
    case C::count:
    case C::milliseconds:
    case C::kilobytes:
      return ">= 0";
    case C::rank_position:
      return ">= 1";
    case C::score_0_100:
      return "[0, 100]";
    case C::score_0_10:
      return "[0, 10]";
    case C::flag:
      return "{0, 1}";
  }
  return "?";
}

std::optional<MetricId> MetricRegistry::find(std::string_view name) const {
  for (const auto& d : entries_) {
    if (d.name == name) return d.id;
  }
  return std::nullopt;
}

const MetricRegistry& builtin_registry() {
  static const MetricRegistry registry{std::span<const MetricDescriptor>(kCatalog)};
  return registry;
}

std::string_view to_string(MetricId id) { return kCatalog[index_of(id)].name; }

std::string_view to_string(MetricKind kind) {
  return kind == K::boolean ? "boolean" : "numeric";
}

std::string_view to_string(MetricSource source) {
  switch (source) {
    case S::fetch:
      return "fetch";
    case S::onpage:
      return "onpage";
    case S::provider:
      return "provider";
  }
  return "?";
}

std::string_view to_string(MetricScale scale) {
  switch (scale) {
    case C::count:
      return "count";
    case C::milliseconds:
      return "milliseconds";
    case C::kilobytes:
      return "kilobytes";
    case C::rank_position:
      return "rank-position";
    case C::score_0_100:
      return "score-0-100";
    case C::score_0_10:
      return "score-0-10";
    case C::flag:
      return "flag";
  }
  return "?";
}

std::string_view to_string(TransformPolicy policy) {
  return policy == P::log_candidate ? "log-candidate" : "never-log";
}

std::optional<MetricId> parse_metric_id(std::string_view name) {
  return builtin_registry().find(name);
}

}  // namespace seorank
