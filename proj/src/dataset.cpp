#include "seorank/dataset.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <system_error>

#include "seorank/error.hpp"
#include "seorank/text.hpp"

namespace seorank {

std::vector<std::optional<double>> Dataset::column(MetricId id) const {
  std::vector<std::optional<double>> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(r.value(id));
  return out;
}

std::vector<std::optional<double>> Dataset::ranks() const {
  std::vector<std::optional<double>> out;
  out.reserve(records.size());
  for (const auto& r : records) out.emplace_back(static_cast<double>(r.webometric_rank));
  return out;
}

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::duplicate_domain:
      return "duplicate-domain";
    case ViolationKind::empty_domain:
      return "empty-domain";
    case ViolationKind::rank_below_one:
      return "rank-below-one";
    case ViolationKind::non_finite_value:
      return "non-finite-value";
    case ViolationKind::negative_value:
      return "negative-value";
    case ViolationKind::not_boolean:
      return "not-boolean";
    case ViolationKind::out_of_scale:
      return "out-of-scale";
  }
  return "?";
}

std::string normalize_domain(std::string_view domain) { return text::to_lower(text::trim(domain)); }

std::vector<Violation> validate_dataset(const Dataset& d) {
  std::vector<Violation> out;
  std::map<std::string, std::size_t> seen;
  const auto& registry = d.registry();

  for (std::size_t i = 0; i < d.records.size(); ++i) {
    const auto& r = d.records[i];
    const auto add = [&](std::optional<MetricId> m, ViolationKind k, std::string msg) {
      out.push_back(Violation{i, r.domain, m, k, std::move(msg)});
    };

    const auto key = normalize_domain(r.domain);
    if (key.empty()) {
      add(std::nullopt, ViolationKind::empty_domain, "domain is empty");
    } else if (auto [it, inserted] = seen.emplace(key, i); !inserted) {
      add(std::nullopt, ViolationKind::duplicate_domain,
          "domain '" + r.domain + "' duplicates record " + std::to_string(it->second));
    }
    if (r.webometric_rank < 1) {
      add(std::nullopt, ViolationKind::rank_below_one,
          "webometric_rank " + std::to_string(r.webometric_rank) + " must be >= 1");
    }

    for (const auto& desc : registry) {
      const auto& v = r.value(desc.id);
      if (!v) continue;
      const std::string name(desc.name);
      if (!std::isfinite(*v)) {
        add(desc.id, ViolationKind::non_finite_value, name + " is not finite");
      } else if (desc.is_boolean()) {
        if (*v != 0.0 && *v != 1.0)
          add(desc.id, ViolationKind::not_boolean, name + " = " + format_number(*v) + " is not 0/1");
      } else if (*v < 0.0) {
        add(desc.id, ViolationKind::negative_value, name + " = " + format_number(*v) + " is negative");
      } else if (!within_scale(desc, *v)) {
        add(desc.id, ViolationKind::out_of_scale,
            name + " = " + format_number(*v) + " outside " + std::string(scale_bounds(desc.scale)));
      }
    }
  }
  return out;
}

std::string format_number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

[[noreturn]] void fail(std::size_t row, std::string_view column, const std::string& what) {
  throw ParseError("row " + std::to_string(row) + ", column '" + std::string(column) + "': " + what);
}

double parse_double(std::string_view cell, std::size_t row, std::string_view column) {
  double v = 0.0;
  const auto* first = cell.data();
  const auto* last = cell.data() + cell.size();
  if (!cell.empty() && cell.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last || first == last) {
    fail(row, column, "non-numeric cell '" + std::string(cell) + "'");
  }
  return v;
}

}  // namespace

Dataset load_dataset_csv(std::string_view bytes) {
  if (bytes.size() >= 3 && bytes.substr(0, 3) == "\xEF\xBB\xBF") bytes.remove_prefix(3);
  const auto lines = text::split_lines(bytes);
  if (lines.empty()) throw ParseError("row 1: missing header");

  std::vector<std::string> header;
  try {
    header = text::split_csv_record(lines[0]);
  } catch (const ParseError& e) {
    throw ParseError(std::string("row 1: ") + e.what());
  }
  if (header.size() < 2 || header[0] != "domain" || header[1] != "webometric_rank") {
    throw ParseError("row 1: header must start with 'domain,webometric_rank'");
  }

  const auto& registry = builtin_registry();
  std::vector<MetricId> columns;
  std::array<bool, kMetricCount> used{};
  for (std::size_t c = 2; c < header.size(); ++c) {
    auto id = registry.find(header[c]);
    if (!id) fail(1, header[c], "unknown metric column");
    if (used[index_of(*id)]) fail(1, header[c], "duplicate metric column");
    used[index_of(*id)] = true;
    columns.push_back(*id);
  }

  Dataset d;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    const std::size_t row = li + 1;
    if (text::trim(lines[li]).empty()) continue;
    std::vector<std::string> cells;
    try {
      cells = text::split_csv_record(lines[li]);
    } catch (const ParseError& e) {
      throw ParseError("row " + std::to_string(row) + ": " + e.what());
    }
    if (cells.size() != header.size()) {
      throw ParseError("row " + std::to_string(row) + ": expected " + std::to_string(header.size()) +
                       " cells, found " + std::to_string(cells.size()));
    }

    SiteRecord r;
    r.domain = cells[0];
    const auto rank_cell = text::trim(cells[1]);
    std::int64_t rank = 0;
    auto [ptr, ec] = std::from_chars(rank_cell.data(), rank_cell.data() + rank_cell.size(), rank);
    if (rank_cell.empty() || ec != std::errc{} || ptr != rank_cell.data() + rank_cell.size()) {
      fail(row, "webometric_rank", "non-integer rank '" + std::string(rank_cell) + "'");
    }
    r.webometric_rank = rank;

    for (std::size_t c = 0; c < columns.size(); ++c) {
      const auto cell = text::trim(cells[c + 2]);
      if (cell.empty()) continue;
      r.value(columns[c]) = parse_double(cell, row, header[c + 2]);
    }
    d.records.push_back(std::move(r));
  }
  return d;
}

Dataset load_dataset_file(const std::string& path) { return load_dataset_csv(text::read_file(path)); }

std::string save_dataset_csv(const Dataset& d) {
  std::string out = "domain,webometric_rank";
  for (const auto& desc : builtin_registry()) {
    out += ',';
    out += desc.name;
  }
  out += '\n';
  for (const auto& r : d.records) {
    out += text::csv_field(r.domain);
    out += ',';
    out += std::to_string(r.webometric_rank);
    for (const auto& v : r.values) {
      out += ',';
      if (v) out += format_number(*v);
    }
    out += '\n';
  }
  return out;
}

void save_dataset_file(const Dataset& d, const std::string& path) {
  text::write_file(path, save_dataset_csv(d));
}

}  // namespace seorank
