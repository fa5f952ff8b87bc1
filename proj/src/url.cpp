#include "seorank/url.hpp"

#include <charconv>
#include <vector>

#include "seorank/text.hpp"

namespace seorank {
namespace {

std::uint16_t scheme_port(std::string_view scheme) {
  if (scheme == "http") return 80;
  if (scheme == "https") return 443;
  return 0;
}

bool valid_scheme(std::string_view s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  for (char c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '+' && c != '-' && c != '.') return false;
  }
  return true;
}

// RFC 3986 remove_dot_segments on an absolute path.
std::string remove_dot_segments(std::string_view path) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  const bool trailing = path.ends_with("/.") || path.ends_with("/..") || path == "." || path == "..";
  while (i <= path.size()) {
    auto j = path.find('/', i);
    if (j == std::string_view::npos) j = path.size();
    auto seg = path.substr(i, j - i);
    if (seg == "..") {
      if (!out.empty()) out.pop_back();
    } else if (seg != "." && !(seg.empty() && i == 0)) {
      out.push_back(seg);
    }
    i = j + 1;
  }
  std::string result;
  for (auto seg : out) {
    result += '/';
    result += seg;
  }
  if (trailing || result.empty()) result += '/';
  return result;
}

}  // namespace

std::optional<Url> Url::parse(std::string_view text) {
  text = text::trim(text);
  const auto colon = text.find("://");
  if (colon == std::string_view::npos) return std::nullopt;
  Url u;
  u.scheme = text::to_lower(text.substr(0, colon));
  if (!valid_scheme(u.scheme)) return std::nullopt;
  auto rest = text.substr(colon + 3);

  if (auto hash = rest.find('#'); hash != std::string_view::npos) {
    u.fragment = std::string(rest.substr(hash + 1));
    rest = rest.substr(0, hash);
  }
  const auto path_start = rest.find_first_of("/?");
  auto authority = rest.substr(0, path_start);
  if (path_start != std::string_view::npos) {
    u.target = std::string(rest.substr(path_start));
    if (u.target.front() == '?') u.target.insert(0, "/");
  }
  if (auto at = authority.rfind('@'); at != std::string_view::npos) authority = authority.substr(at + 1);
  if (authority.empty()) return std::nullopt;

  std::string_view host = authority;
  std::string_view port;
  if (authority.front() == '[') {
    const auto close = authority.find(']');
    if (close == std::string_view::npos) return std::nullopt;
    host = authority.substr(0, close + 1);
    if (close + 1 < authority.size()) {
      if (authority[close + 1] != ':') return std::nullopt;
      port = authority.substr(close + 2);
    }
  } else if (auto c = authority.rfind(':'); c != std::string_view::npos) {
    host = authority.substr(0, c);
    port = authority.substr(c + 1);
  }
  if (host.empty()) return std::nullopt;
  for (char ch : host) {
    if (std::isspace(static_cast<unsigned char>(ch)) || ch == '/' || ch == '\\') return std::nullopt;
  }
  u.host = text::to_lower(host);
  u.port = scheme_port(u.scheme);
  if (!port.empty()) {
    unsigned value = 0;
    auto [ptr, ec] = std::from_chars(port.data(), port.data() + port.size(), value);
    if (ec != std::errc{} || ptr != port.data() + port.size() || value == 0 || value > 65535) return std::nullopt;
    u.port = static_cast<std::uint16_t>(value);
  }
  if (u.port == 0) return std::nullopt;
  return u;
}

bool Url::default_port() const { return port == scheme_port(scheme); }

std::string Url::authority() const {
  return default_port() ? host : host + ":" + std::to_string(port);
}

std::string Url::origin() const { return scheme + "://" + authority(); }

std::string Url::path() const {
  const auto q = target.find('?');
  return target.substr(0, q);
}

std::string Url::str() const { return origin() + target; }

std::optional<Url> Url::resolve(std::string_view ref) const {
  ref = text::trim(ref);
  if (ref.empty()) return *this;
  // Absolute reference with a scheme.
  const auto colon = ref.find(':');
  const auto first_delim = ref.find_first_of("/?#");
  if (colon != std::string_view::npos && (first_delim == std::string_view::npos || colon < first_delim)) {
    const auto scheme = text::to_lower(ref.substr(0, colon));
    if (!valid_scheme(scheme)) return std::nullopt;
    if (scheme != "http" && scheme != "https") return std::nullopt;
    auto u = Url::parse(ref);
    if (u) u->target = remove_dot_segments(u->path()) + u->target.substr(u->path().size());
    return u;
  }
  if (ref.starts_with("//")) return Url::parse(scheme + ":" + std::string(ref));

  Url out = *this;
  out.fragment.clear();
  std::string_view r = ref;
  if (auto hash = r.find('#'); hash != std::string_view::npos) {
    out.fragment = std::string(r.substr(hash + 1));
    r = r.substr(0, hash);
  }
  if (r.empty()) return out;
  if (r.front() == '?') {
    out.target = path() + std::string(r);
    return out;
  }
  std::string_view query;
  if (auto q = r.find('?'); q != std::string_view::npos) {
    query = r.substr(q);
    r = r.substr(0, q);
  }
  std::string merged;
  if (r.front() == '/') {
    merged = std::string(r);
  } else {
    const auto base = path();
    merged = base.substr(0, base.rfind('/') + 1) + std::string(r);
  }
  out.target = remove_dot_segments(merged) + std::string(query);
  return out;
}

bool host_within(std::string_view host, std::string_view domain) {
  if (domain.empty()) return false;
  if (host == domain) return true;
  return host.size() > domain.size() && host.ends_with(domain) && host[host.size() - domain.size() - 1] == '.';
}

std::string_view registrable_host(std::string_view host) {
  if (host.starts_with("www.") && host.size() > 4) host.remove_prefix(4);
  return host;
}

}  // namespace seorank
