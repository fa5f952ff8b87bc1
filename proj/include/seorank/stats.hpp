#pragma once

// Per-metric distribution screening, shifted-log normalization and the
// impact (R^2 against rank) table with its scatter-point export.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "seorank/dataset.hpp"
#include "seorank/metrics.hpp"

namespace seorank::stats {

using Series = std::vector<std::optional<double>>;

/// v' = log10(v + shift); missing entries stay missing. Throws AnalysisError
/// if any present v + shift <= 0.
Series shift_log(std::span<const std::optional<double>> values, double shift);
std::vector<double> shift_log(std::span<const double> values, double shift);

/// Adjusted Fisher-Pearson sample skewness (G1). Needs n >= 3.
double sample_skewness(std::span<const double> values);
/// Sample excess kurtosis (G2). Needs n >= 4.
double sample_excess_kurtosis(std::span<const double> values);

struct NormalityThresholds {
  double max_abs_skewness = 1.0;
  double max_abs_excess_kurtosis = 2.0;
};

/// |G1| and |G2| within thresholds. The kurtosis check is skipped below 4 values.
bool passes_screen(std::span<const double> values, const NormalityThresholds& t);

enum class Classification : std::uint8_t { normal, log_normalizable, excluded };
std::string_view to_string(Classification c);

struct AnalysisOptions {
  NormalityThresholds thresholds{};
  /// Added before the log when the series contains a zero.
  double log_shift = 1.0;
};

/// Shift actually used for a series: options.log_shift if any value is 0, else 0.
double effective_shift(std::span<const double> values, const AnalysisOptions& opt);

/// Classifies present values (at least 3). Boolean metrics and series with
/// <= 2 distinct values are excluded; raw values passing the screen are
/// normal; values passing it after shift_log are log-normalizable (only for
/// log-candidate metrics); anything else is excluded.
Classification classify_distribution(std::span<const double> values, const MetricDescriptor& d,
                                     const AnalysisOptions& opt = {});

struct TransformOutcome {
  MetricId metric{};
  Classification classification = Classification::excluded;
  double shift = 0.0;
  Series values;  // aligned to records; raw when normal, transformed when log-normalizable
};

TransformOutcome transform_metric(const Dataset& d, MetricId metric, const AnalysisOptions& opt = {});

/// Squared Pearson correlation of the paired present values (listwise
/// deletion). Throws AnalysisError with fewer than 3 pairs or zero variance.
double impact_score(std::span<const std::optional<double>> x, std::span<const std::optional<double>> y);
double impact_score(std::span<const double> x, std::span<const double> y);

struct ImpactRow {
  MetricId metric{};
  Classification classification = Classification::excluded;
  bool log_applied = false;
  double shift = 0.0;
  std::optional<double> impact;  // nullopt for excluded rows
  std::size_t pairs = 0;
  std::string reason;  // why the row is excluded
};

struct ImpactTable {
  /// Scored rows sorted by impact descending (ties in registry order), then
  /// excluded rows in registry order.
  std::vector<ImpactRow> rows;

  const ImpactRow* find(MetricId id) const;
  std::size_t scored_count() const;
};

ImpactTable impact_table(const Dataset& d, const AnalysisOptions& opt = {});

/// CSV "transformed_value,rank" with exactly the pairs behind the metric's
/// impact score. Throws AnalysisError if the metric has no score.
std::string scatter_export(const Dataset& d, MetricId metric, const AnalysisOptions& opt = {});

std::string impact_table_csv(const ImpactTable& t);
std::string impact_table_markdown(const ImpactTable& t);

}  // namespace seorank::stats
