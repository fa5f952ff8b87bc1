#include "seorank/stats.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "seorank/error.hpp"
#include "seorank/text.hpp"

namespace seorank::stats {
namespace {

std::vector<double> present(std::span<const std::optional<double>> values) {
  std::vector<double> out;
  for (const auto& v : values)
    if (v) out.push_back(*v);
  return out;
}

double mean(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

// Central moments m2, m3, m4 with 1/n normalization.
struct Moments {
  double m2 = 0, m3 = 0, m4 = 0;
};

Moments central_moments(std::span<const double> v) {
  const double mu = mean(v);
  Moments m;
  for (double x : v) {
    const double d = x - mu;
    const double d2 = d * d;
    m.m2 += d2;
    m.m3 += d2 * d;
    m.m4 += d2 * d2;
  }
  const auto n = static_cast<double>(v.size());
  m.m2 /= n;
  m.m3 /= n;
  m.m4 /= n;
  return m;
}

std::size_t distinct_count(std::span<const double> v) {
  return std::set<double>(v.begin(), v.end()).size();
}

}  // namespace

std::vector<double> shift_log(std::span<const double> values, double shift) {
  std::vector<double> out;
  out.reserve(values.size());
  for (double v : values) {
    const double arg = v + shift;
    if (!(arg > 0.0)) {
      throw AnalysisError("log argument " + format_number(arg) + " is not positive (value " +
                          format_number(v) + ", shift " + format_number(shift) + ")");
    }
    out.push_back(std::log10(arg));
  }
  return out;
}

Series shift_log(std::span<const std::optional<double>> values, double shift) {
  Series out;
  out.reserve(values.size());
  for (const auto& v : values) {
    if (!v) {
      out.emplace_back();
      continue;
    }
    const double one = *v;
    out.emplace_back(shift_log(std::span<const double>(&one, 1), shift).front());
  }
  return out;
}

double sample_skewness(std::span<const double> values) {
  const auto n = static_cast<double>(values.size());
  if (values.size() < 3) throw AnalysisError("skewness needs at least 3 values");
  const auto m = central_moments(values);
  if (m.m2 == 0.0) return 0.0;
  const double g1 = m.m3 / std::pow(m.m2, 1.5);
  return std::sqrt(n * (n - 1.0)) / (n - 2.0) * g1;
}

double sample_excess_kurtosis(std::span<const double> values) {
  const auto n = static_cast<double>(values.size());
  if (values.size() < 4) throw AnalysisError("kurtosis needs at least 4 values");
  const auto m = central_moments(values);
  if (m.m2 == 0.0) return 0.0;
  const double g2 = m.m4 / (m.m2 * m.m2) - 3.0;
  return (n - 1.0) / ((n - 2.0) * (n - 3.0)) * ((n + 1.0) * g2 + 6.0);
}

bool passes_screen(std::span<const double> values, const NormalityThresholds& t) {
  if (std::abs(sample_skewness(values)) > t.max_abs_skewness) return false;
  if (values.size() >= 4 && std::abs(sample_excess_kurtosis(values)) > t.max_abs_excess_kurtosis)
    return false;
  return true;
}

std::string_view to_string(Classification c) {
  switch (c) {
    case Classification::normal:
      return "normal";
    case Classification::log_normalizable:
      return "log-normalizable";
    case Classification::excluded:
      return "excluded";
  }
  return "?";
}

double effective_shift(std::span<const double> values, const AnalysisOptions& opt) {
  const bool has_zero = std::any_of(values.begin(), values.end(), [](double v) { return v == 0.0; });
  return has_zero ? opt.log_shift : 0.0;
}

Classification classify_distribution(std::span<const double> values, const MetricDescriptor& d,
                                     const AnalysisOptions& opt) {
  if (values.size() < 3) {
    throw AnalysisError(std::string(d.name) + ": classification needs at least 3 values, got " +
                        std::to_string(values.size()));
  }
  if (d.is_boolean() || distinct_count(values) <= 2) return Classification::excluded;
  if (passes_screen(values, opt.thresholds)) return Classification::normal;
  if (d.transform_policy != TransformPolicy::log_candidate) return Classification::excluded;

  const double shift = effective_shift(values, opt);
  const bool loggable = std::all_of(values.begin(), values.end(), [&](double v) { return v + shift > 0.0; });
  if (!loggable) return Classification::excluded;
  if (passes_screen(shift_log(values, shift), opt.thresholds)) return Classification::log_normalizable;
  return Classification::excluded;
}

TransformOutcome transform_metric(const Dataset& d, MetricId metric, const AnalysisOptions& opt) {
  TransformOutcome out;
  out.metric = metric;
  const auto column = d.column(metric);
  const auto values = present(column);
  out.classification = classify_distribution(values, d.registry().at(metric), opt);
  switch (out.classification) {
    case Classification::normal:
      out.values = column;
      break;
    case Classification::log_normalizable:
      out.shift = effective_shift(values, opt);
      out.values = shift_log(column, out.shift);
      break;
    case Classification::excluded:
      out.values.assign(column.size(), std::nullopt);
      break;
  }
  return out;
}

double impact_score(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ArgumentError("impact_score: series lengths differ");
  if (x.size() < 3) {
    throw AnalysisError("impact needs at least 3 pairs, got " + std::to_string(x.size()));
  }
  const double mx = mean(x);
  const double my = mean(y);
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw AnalysisError("impact undefined: zero variance");
  const double r2 = (sxy * sxy) / (sxx * syy);
  return std::clamp(r2, 0.0, 1.0);
}

namespace {

void paired(std::span<const std::optional<double>> x, std::span<const std::optional<double>> y,
            std::vector<double>& px, std::vector<double>& py) {
  if (x.size() != y.size()) throw ArgumentError("impact_score: series lengths differ");
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] && y[i]) {
      px.push_back(*x[i]);
      py.push_back(*y[i]);
    }
  }
}

}  // namespace

double impact_score(std::span<const std::optional<double>> x, std::span<const std::optional<double>> y) {
  std::vector<double> px, py;
  paired(x, y, px, py);
  return impact_score(px, py);
}

const ImpactRow* ImpactTable::find(MetricId id) const {
  for (const auto& r : rows)
    if (r.metric == id) return &r;
  return nullptr;
}

std::size_t ImpactTable::scored_count() const {
  return static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(), [](const ImpactRow& r) { return r.impact.has_value(); }));
}

ImpactTable impact_table(const Dataset& d, const AnalysisOptions& opt) {
  const auto ranks = d.ranks();
  std::vector<ImpactRow> scored, excluded;

  for (const auto& desc : d.registry()) {
    ImpactRow row;
    row.metric = desc.id;
    try {
      const auto t = transform_metric(d, desc.id, opt);
      row.classification = t.classification;
      if (t.classification == Classification::excluded) {
        row.reason = desc.is_boolean() ? "boolean metric" : "distribution not normalizable";
      } else {
        row.log_applied = t.classification == Classification::log_normalizable;
        row.shift = t.shift;
        std::vector<double> px, py;
        paired(t.values, ranks, px, py);
        row.pairs = px.size();
        row.impact = impact_score(px, py);
      }
    } catch (const AnalysisError& e) {
      row.classification = Classification::excluded;
      row.log_applied = false;
      row.impact.reset();
      row.reason = e.what();
    }
    (row.impact ? scored : excluded).push_back(std::move(row));
  }

  std::stable_sort(scored.begin(), scored.end(),
                   [](const ImpactRow& a, const ImpactRow& b) { return *a.impact > *b.impact; });
  ImpactTable table;
  table.rows = std::move(scored);
  table.rows.insert(table.rows.end(), excluded.begin(), excluded.end());
  return table;
}

std::string scatter_export(const Dataset& d, MetricId metric, const AnalysisOptions& opt) {
  const auto t = transform_metric(d, metric, opt);
  if (t.classification == Classification::excluded) {
    throw AnalysisError(std::string(to_string(metric)) + " is excluded from scoring; no scatter points");
  }
  const auto ranks = d.ranks();
  std::vector<double> px, py;
  paired(t.values, ranks, px, py);
  impact_score(px, py);  // same preconditions as the score itself

  std::string out = "transformed_value,rank\n";
  for (std::size_t i = 0; i < px.size(); ++i) {
    out += format_number(px[i]);
    out += ',';
    out += format_number(py[i]);
    out += '\n';
  }
  return out;
}

std::string impact_table_csv(const ImpactTable& t) {
  std::string out = "metric,classification,log_applied,shift,impact,pairs,reason\n";
  for (const auto& r : t.rows) {
    out += std::string(to_string(r.metric)) + ',' + std::string(to_string(r.classification)) + ',' +
           (r.log_applied ? "1" : "0") + ',' + format_number(r.shift) + ',' +
           (r.impact ? format_number(*r.impact) : std::string()) + ',' + std::to_string(r.pairs) + ',' +
           text::csv_field(r.reason) + '\n';
  }
  return out;
}

std::string impact_table_markdown(const ImpactTable& t) {
  std::string out =
      "| Metric | Logarithm | Impact on rank (R²) |\n"
      "|---|---|---|\n";
  std::vector<std::string> excluded;
  for (const auto& r : t.rows) {
    if (!r.impact) {
      excluded.emplace_back(to_string(r.metric));
      continue;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", *r.impact);
    out += "| " + std::string(to_string(r.metric)) + " | " + (r.log_applied ? "✓" : "-") + " | " + buf + " |\n";
  }
  if (!excluded.empty()) {
    std::string names;
    for (const auto& n : excluded) names += (names.empty() ? "" : ", ") + n;
    out += "| " + names + " | - | - |\n";
  }
  return out;
}

}  // namespace seorank::stats
