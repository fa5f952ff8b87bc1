#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace seorank {

/// Absolute URL split into the parts the crawler needs. Scheme and host are
/// lowercased; `target` is path plus query ("/" when empty).
struct Url {
  std::string scheme;
  std::string host;
  std::uint16_t port = 0;
  std::string target = "/";
  std::string fragment;

  static std::optional<Url> parse(std::string_view text);

  bool is_http() const { return scheme == "http" || scheme == "https"; }
  bool default_port() const;
  /// "scheme://host[:port]"
  std::string origin() const;
  /// "host[:port]", port only when non-default.
  std::string authority() const;
  std::string path() const;
  std::string str() const;  // without fragment

  /// Resolves a reference (absolute, scheme-relative, absolute-path or
  /// relative-path) against this URL. Returns nullopt for references that
  /// do not name a fetchable http(s) resource.
  std::optional<Url> resolve(std::string_view ref) const;

  bool operator==(const Url&) const = default;
};

/// True iff `host` equals `domain` or is a subdomain of it (both lowercase).
bool host_within(std::string_view host, std::string_view domain);

/// Host with a leading "www." removed.
std::string_view registrable_host(std::string_view host);

}  // namespace seorank
