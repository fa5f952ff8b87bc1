#include "seorank/providers.hpp"

#include <chrono>
#include <cmath>
#include <ctime>

#include <nlohmann/json.hpp>

#include "seorank/dataset.hpp"
#include "seorank/text.hpp"

namespace seorank {

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

ProviderResponse Provider::get(std::string_view domain, MetricId metric) const {
  if (builtin_registry().at(metric).source != MetricSource::provider) {
    throw ArgumentError("metric " + std::string(to_string(metric)) + " is not provider-sourced");
  }
  return lookup(normalize_domain(domain), metric);
}

std::shared_ptr<FixtureProvider> FixtureProvider::from_json(std::string_view json, std::string name) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("fixture " + name + ": " + e.what());
  }
  if (!doc.is_object()) throw ParseError("fixture " + name + ": top level must be an object");

  auto p = std::shared_ptr<FixtureProvider>(new FixtureProvider());
  p->name_ = std::move(name);
  for (const auto& [domain, metrics] : doc.items()) {
    const auto where = "fixture " + p->name_ + ": entry \"" + domain + "\"";
    if (!metrics.is_object()) throw ParseError(where + " must be an object");
    auto& slot = p->data_[normalize_domain(domain)];
    for (const auto& [key, value] : metrics.items()) {
      const auto id = parse_metric_id(key);
      if (!id) throw ParseError(where + ": unknown metric \"" + key + "\"");
      if (value.is_null()) {
        slot[*id] = std::nullopt;
        continue;
      }
      if (!value.is_number() && !value.is_boolean()) throw ParseError(where + "." + key + ": not a number");
      const double v = value.is_boolean() ? (value.get<bool>() ? 1.0 : 0.0) : value.get<double>();
      const auto& d = builtin_registry().at(*id);
      if (!std::isfinite(v) || !within_scale(d, v)) {
        throw ParseError(where + "." + key + ": value " + format_number(v) + " outside scale " +
                         std::string(scale_bounds(d.scale)));
      }
      slot[*id] = v;
    }
  }
  return p;
}

std::shared_ptr<FixtureProvider> FixtureProvider::from_file(const std::string& path) {
  return from_json(text::read_file(path), path);
}

ProviderResponse FixtureProvider::lookup(const std::string& domain, MetricId metric) const {
  ProviderResponse r{metric, std::nullopt, name_, utc_timestamp()};
  if (auto d = data_.find(domain); d != data_.end()) {
    if (auto m = d->second.find(metric); m != d->second.end()) r.value = m->second;
  }
  return r;
}

ProviderResponse CompositeProvider::lookup(const std::string& domain, MetricId metric) const {
  for (const auto& p : chain_) {
    auto r = p->get(domain, metric);
    if (r.available()) return r;
  }
  return ProviderResponse{metric, std::nullopt, "composite", utc_timestamp()};
}

std::shared_ptr<Provider> fixture_provider(const std::string& path) { return FixtureProvider::from_file(path); }

std::shared_ptr<Provider> composite(std::vector<std::shared_ptr<const Provider>> providers) {
  return std::make_shared<CompositeProvider>(std::move(providers));
}

std::shared_ptr<FixtureSearchClient> FixtureSearchClient::from_json(std::string_view json) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("search fixture: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("search fixture: top level must be an object");
  auto c = std::make_shared<FixtureSearchClient>();
  for (const auto& [domain, count] : doc.items()) {
    if (!count.is_number_unsigned() && !(count.is_number_integer() && count.get<std::int64_t>() >= 0)) {
      throw ParseError("search fixture: entry \"" + domain + "\" must be a non-negative integer");
    }
    c->counts_[normalize_domain(domain)] = count.get<std::uint64_t>();
  }
  return c;
}

std::optional<std::uint64_t> FixtureSearchClient::result_count(const std::string& query) const {
  constexpr std::string_view kPrefix = "site:";
  if (!query.starts_with(kPrefix)) return std::nullopt;
  auto it = counts_.find(normalize_domain(query.substr(kPrefix.size())));
  if (it == counts_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::uint64_t> indexed_pages_query(std::string_view domain, const SearchClient& client) {
  return client.result_count("site:" + normalize_domain(domain));
}

ProviderResponse SearchProvider::lookup(const std::string& domain, MetricId metric) const {
  ProviderResponse r{metric, std::nullopt, "search", utc_timestamp()};
  if (metric != MetricId::indexed_pages) return r;
  if (auto n = indexed_pages_query(domain, *client_)) r.value = static_cast<double>(*n);
  return r;
}

Collected collect(std::string_view domain, const Provider* provider, const MetricRegistry& registry,
                  const MetricValues& measured) {
  Collected out;
  for (const auto& d : registry) {
    const auto i = index_of(d.id);
    if (measured[i]) {
      out.values[i] = measured[i];
      out.provenance[i] = Provenance::measured;
      continue;
    }
    out.provenance[i] = Provenance::missing;
    if (provider && d.source == MetricSource::provider) {
      if (auto r = provider->get(domain, d.id); r.value) {
        out.values[i] = r.value;
        out.provenance[i] = Provenance::provider;
      }
    }
  }
  return out;
}

}  // namespace seorank
