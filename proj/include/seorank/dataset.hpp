#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "seorank/metrics.hpp"

namespace seorank {

/// Per-metric value slots; booleans are stored as 0/1 and missing as nullopt.
using MetricValues = std::array<std::optional<double>, kMetricCount>;

struct SiteRecord {
  std::string domain;
  std::int64_t webometric_rank = 1;  // lower is better
  MetricValues values{};

  const std::optional<double>& value(MetricId id) const { return values[index_of(id)]; }
  std::optional<double>& value(MetricId id) { return values[index_of(id)]; }

  bool operator==(const SiteRecord&) const = default;
};

struct Dataset {
  std::vector<SiteRecord> records;

  const MetricRegistry& registry() const { return builtin_registry(); }
  std::size_t size() const { return records.size(); }
  bool empty() const { return records.empty(); }

  /// Column view of one metric, aligned to records.
  std::vector<std::optional<double>> column(MetricId id) const;
  /// Ranks as doubles, aligned to records.
  std::vector<std::optional<double>> ranks() const;

  bool operator==(const Dataset&) const = default;
};

enum class ViolationKind : std::uint8_t {
  duplicate_domain,
  empty_domain,
  rank_below_one,
  non_finite_value,
  negative_value,
  not_boolean,
  out_of_scale,
};

std::string_view to_string(ViolationKind kind);

struct Violation {
  std::size_t record = 0;  // index into Dataset::records
  std::string domain;
  std::optional<MetricId> metric;
  ViolationKind kind{};
  std::string message;
};

/// Checks every record and dataset invariant. Pure; an empty result means
/// the dataset is well formed.
std::vector<Violation> validate_dataset(const Dataset& d);

/// Lowercased domain, used for uniqueness checks.
std::string normalize_domain(std::string_view domain);

/// Parses the dataset CSV: header "domain,webometric_rank,<metric ids...>".
/// Metric columns may be any subset of the registry, in any order; absent
/// columns and empty cells load as missing. Throws ParseError naming the
/// row and column of the first problem.
Dataset load_dataset_csv(std::string_view bytes);
Dataset load_dataset_file(const std::string& path);

/// Writes all 38 metric columns in registry order with shortest round-trip
/// number formatting, LF line endings.
std::string save_dataset_csv(const Dataset& d);
void save_dataset_file(const Dataset& d, const std::string& path);

/// Shortest decimal text that parses back to exactly `v`.
std::string format_number(double v);

}  // namespace seorank
