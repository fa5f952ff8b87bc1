#pragma once

// Off-page metrics from third-party sources, behind one pluggable interface.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "seorank/audit.hpp"
#include "seorank/error.hpp"
#include "seorank/metrics.hpp"

namespace seorank {

struct ProviderResponse {
  MetricId metric{};
  std::optional<double> value;  // nullopt = unavailable
  std::string source_name;
  std::string retrieved_at;  // ISO 8601 UTC

  bool available() const { return value.has_value(); }
};

/// Transport or authentication failure, as opposed to "no value".
class ProviderError : public Error {
 public:
  using Error::Error;
};

class Provider {
 public:
  virtual ~Provider() = default;
  /// Throws ArgumentError when `metric` is not provider-sourced.
  ProviderResponse get(std::string_view domain, MetricId metric) const;
  virtual std::string name() const = 0;

 protected:
  virtual ProviderResponse lookup(const std::string& domain, MetricId metric) const = 0;
};

/// Offline provider backed by a JSON object {domain: {metric_id: value}}.
/// Domains are matched case-insensitively. Values are scale-checked at load.
class FixtureProvider final : public Provider {
 public:
  static std::shared_ptr<FixtureProvider> from_json(std::string_view json, std::string name = "fixture");
  static std::shared_ptr<FixtureProvider> from_file(const std::string& path);

  std::string name() const override { return name_; }
  std::size_t domain_count() const { return data_.size(); }

 protected:
  ProviderResponse lookup(const std::string& domain, MetricId metric) const override;

 private:
  std::string name_;
  std::map<std::string, std::map<MetricId, std::optional<double>>> data_;
};

/// Queries providers in order; the first available response wins.
class CompositeProvider final : public Provider {
 public:
  explicit CompositeProvider(std::vector<std::shared_ptr<const Provider>> chain) : chain_(std::move(chain)) {}
  std::string name() const override { return "composite"; }

 protected:
  ProviderResponse lookup(const std::string& domain, MetricId metric) const override;

 private:
  std::vector<std::shared_ptr<const Provider>> chain_;
};

std::shared_ptr<Provider> fixture_provider(const std::string& path);
std::shared_ptr<Provider> composite(std::vector<std::shared_ptr<const Provider>> providers);

/// Answers "site:<domain>" result-count queries.
class SearchClient {
 public:
  virtual ~SearchClient() = default;
  /// nullopt when the engine reports nothing; throws ProviderError on failure.
  virtual std::optional<std::uint64_t> result_count(const std::string& query) const = 0;
};

/// Offline client: JSON object {domain: count}, answering "site:<domain>".
class FixtureSearchClient final : public SearchClient {
 public:
  static std::shared_ptr<FixtureSearchClient> from_json(std::string_view json);
  std::optional<std::uint64_t> result_count(const std::string& query) const override;

 private:
  std::map<std::string, std::uint64_t> counts_;
};

std::optional<std::uint64_t> indexed_pages_query(std::string_view domain, const SearchClient& client);

/// Adapts a search client into an indexed_pages provider.
class SearchProvider final : public Provider {
 public:
  explicit SearchProvider(std::shared_ptr<const SearchClient> client) : client_(std::move(client)) {}
  std::string name() const override { return "search"; }

 protected:
  ProviderResponse lookup(const std::string& domain, MetricId metric) const override;

 private:
  std::shared_ptr<const SearchClient> client_;
};

/// Merges measured values with provider values. Measured slots always win;
/// provider-sourced slots left empty are asked of `provider` (if any).
/// Every slot ends up filled or explicitly missing.
struct Collected {
  MetricValues values{};
  ProvenanceMap provenance{};
};

Collected collect(std::string_view domain, const Provider* provider, const MetricRegistry& registry,
                  const MetricValues& measured);

std::string utc_timestamp();

}  // namespace seorank
