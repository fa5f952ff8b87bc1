#include "seorank/fetch.hpp"

#include <netdb.h>
#include <sys/socket.h>

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <optional>
#include <random>
#include <set>
#include <thread>

#include <httplib.h>

#include "seorank/robots.hpp"
#include "seorank/text.hpp"
#include "seorank/url.hpp"

namespace seorank {
namespace {

using Clock = std::chrono::steady_clock;

Url require_url(const std::string& text) {
  auto u = Url::parse(text);
  if (!u || !u->is_http()) throw ArgumentError("not an absolute http(s) URL: " + text);
  return *u;
}

void resolve_host(const Url& u) {
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* res = nullptr;
  const int rc = ::getaddrinfo(u.host.c_str(), nullptr, &hints, &res);
  if (res) ::freeaddrinfo(res);
  if (rc != 0) throw FetchError(FetchErrorKind::dns_failure, u.str(), ::gai_strerror(rc));
}

FetchErrorKind classify(httplib::Error e, double elapsed_ms, const FetchPolicy& policy) {
  switch (e) {
    case httplib::Error::ConnectionTimeout:
      return FetchErrorKind::timeout;
    case httplib::Error::SSLConnection:
    case httplib::Error::SSLLoadingCerts:
    case httplib::Error::SSLServerVerification:
      return FetchErrorKind::tls_error;
    case httplib::Error::ExceedRedirectCount:
      return FetchErrorKind::too_many_redirects;
    case httplib::Error::Read:
    case httplib::Error::Write:
      // httplib reports an expired read deadline as a plain read failure.
      return elapsed_ms >= 0.9 * policy.timeout_ms ? FetchErrorKind::timeout : FetchErrorKind::connection;
    case httplib::Error::Connection:
      return FetchErrorKind::connection;
    default:
      return FetchErrorKind::other;
  }
}

bool is_redirect(int status) {
  return status == 301 || status == 302 || status == 303 || status == 307 || status == 308;
}

std::string random_probe_path() {
  std::random_device rd;
  std::mt19937_64 gen((static_cast<std::uint64_t>(rd()) << 32) ^ rd());
  char buf[40];
  std::snprintf(buf, sizeof buf, "/seorank-probe-%016llx", static_cast<unsigned long long>(gen()));
  return buf;
}

// Fetches and parses robots.txt; a missing or failing file allows everything.
RobotsRules robots_for(const Url& u, const FetchPolicy& policy) {
  try {
    auto r = fetch_page(u.origin() + "/robots.txt", policy);
    if (r.status == 200) return RobotsRules::parse(r.body, policy.user_agent);
  } catch (const FetchError&) {
  }
  return RobotsRules::parse("", policy.user_agent);
}

}  // namespace

void FetchPolicy::validate() const {
  if (timeout_ms <= 0) throw ArgumentError("timeout_ms must be positive");
  if (max_redirects < 0) throw ArgumentError("max_redirects must be >= 0");
  if (max_body_kb <= 0) throw ArgumentError("max_body_kb must be positive");
  if (max_concurrent < 1) throw ArgumentError("max_concurrent must be >= 1");
  if (per_host_delay_ms < 0) throw ArgumentError("per_host_delay_ms must be >= 0");
  if (broken_link_sample < 0) throw ArgumentError("broken_link_sample must be >= 0");
}

std::string FetchResult::header(std::string_view name) const {
  auto it = headers.find(text::to_lower(name));
  return it == headers.end() ? std::string{} : it->second;
}

std::string_view to_string(FetchErrorKind kind) {
  switch (kind) {
    case FetchErrorKind::dns_failure: return "dns-failure";
    case FetchErrorKind::timeout: return "timeout";
    case FetchErrorKind::too_many_redirects: return "too-many-redirects";
    case FetchErrorKind::tls_error: return "tls-error";
    case FetchErrorKind::connection: return "connection";
    case FetchErrorKind::disallowed: return "disallowed";
    case FetchErrorKind::other: return "other";
  }
  return "other";
}

FetchError::FetchError(FetchErrorKind kind, const std::string& url, const std::string& detail)
    : Error(std::string(to_string(kind)) + ": " + url + (detail.empty() ? "" : " (" + detail + ")")), kind_(kind) {}

FetchResult fetch_once(const std::string& url, const FetchPolicy& policy, HttpMethod method) {
  policy.validate();
  const Url u = require_url(url);
  resolve_host(u);

  httplib::Client cli(u.origin());
  const auto t = std::chrono::milliseconds(policy.timeout_ms);
  cli.set_connection_timeout(t);
  cli.set_read_timeout(t);
  cli.set_write_timeout(t);
  cli.set_follow_location(false);
  cli.set_decompress(true);
  cli.set_keep_alive(false);
  if (u.scheme == "https") {
    cli.enable_server_certificate_verification(policy.verify_tls);
    if (!policy.ca_file.empty()) cli.set_ca_cert_path(policy.ca_file);
  }
  const httplib::Headers headers = {
      {"User-Agent", policy.user_agent},
      {"Accept-Encoding", "gzip, deflate"},
      {"Accept", "text/html,application/xhtml+xml,*/*;q=0.8"},
  };

  FetchResult out;
  out.requested_url = url;
  out.final_url = u.str();
  out.https = u.scheme == "https";
  const std::size_t limit = static_cast<std::size_t>(policy.max_body_kb) * 1024;

  std::optional<httplib::Response> head;
  const auto start = Clock::now();
  httplib::Result res = [&] {
    if (method == HttpMethod::head) return cli.Head(u.target, headers);
    return cli.Get(
        u.target, headers,
        [&](const httplib::Response& r) {
          head = r;
          return true;
        },
        [&](const char* data, std::size_t len) {
          const auto room = limit - out.body.size();
          if (len > room) {
            out.body.append(data, room);
            out.truncated = true;
            return false;
          }
          out.body.append(data, len);
          return true;
        });
  }();
  out.load_time_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();

  const httplib::Response* resp = nullptr;
  if (res) {
    resp = &res.value();
  } else if (res.error() == httplib::Error::Canceled && out.truncated && head) {
    resp = &*head;
  } else {
    throw FetchError(classify(res.error(), out.load_time_ms, policy), url, httplib::to_string(res.error()));
  }
  out.status = resp->status;
  for (const auto& [k, v] : resp->headers) out.headers.emplace(text::to_lower(k), v);
  const auto enc = text::to_lower(out.header("content-encoding"));
  out.gzip = enc.find("gzip") != std::string::npos || enc.find("deflate") != std::string::npos ||
             enc.find("br") != std::string::npos;
  return out;
}

FetchResult fetch_page(const std::string& url, const FetchPolicy& policy) {
  std::string current = url;
  for (int hop = 0;; ++hop) {
    auto r = fetch_once(current, policy);
    r.requested_url = url;
    r.redirects = hop;
    const auto location = r.header("location");
    if (!is_redirect(r.status) || location.empty()) return r;
    if (hop >= policy.max_redirects) {
      throw FetchError(FetchErrorKind::too_many_redirects, url,
                       "more than " + std::to_string(policy.max_redirects) + " redirects");
    }
    auto next = require_url(current).resolve(location);
    if (!next) throw FetchError(FetchErrorKind::other, url, "redirect to unsupported location " + location);
    current = next->str();
  }
}

FetchMetrics fetch_metrics(const FetchResult& home, const std::vector<std::string>& subresources) {
  FetchMetrics m;
  m.page_size_kb = std::round(static_cast<double>(home.body.size()) / 1024.0 * 10.0) / 10.0;
  m.load_time_ms = home.load_time_ms;
  m.request_count = 1 + std::set<std::string>(subresources.begin(), subresources.end()).size();
  m.gzip = home.gzip;
  m.security = home.https;
  return m;
}

// Soft-404 sites answer every path with a 200 HTML page; that is not a
// robots file or a sitemap.
static bool served_as_file(const FetchResult& r) {
  return r.status == 200 && !text::to_lower(r.header("content-type")).starts_with("text/html");
}

bool check_robots(const std::string& origin, const FetchPolicy& policy) {
  const auto r = fetch_page(require_url(origin).origin() + "/robots.txt", policy);
  return served_as_file(r) && !text::trim(r.body).empty();
}

bool check_sitemap(const std::string& origin, const FetchPolicy& policy) {
  const Url base = require_url(origin);
  const auto robots = fetch_page(base.origin() + "/robots.txt", policy);
  if (robots.status == 200) {
    const auto rules = RobotsRules::parse(robots.body, policy.user_agent);
    for (const auto& s : rules.sitemaps()) {
      auto target = base.resolve(s);
      if (!target) continue;
      try {
        if (served_as_file(fetch_page(target->str(), policy))) return true;
      } catch (const FetchError&) {
        // A dead declared sitemap does not hide /sitemap.xml.
      }
    }
  }
  return served_as_file(fetch_page(base.origin() + "/sitemap.xml", policy));
}

bool check_custom_404(const std::string& origin, const FetchPolicy& policy) {
  const Url base = require_url(origin);
  const auto path = random_probe_path();
  if (policy.respect_robots && !robots_for(base, policy).allowed(path)) {
    throw FetchError(FetchErrorKind::disallowed, base.origin() + path, "robots.txt");
  }
  return fetch_once(base.origin() + path, policy).status == 404;
}

BrokenLinkReport probe_broken_links(const std::vector<std::string>& urls, const FetchPolicy& policy) {
  policy.validate();
  BrokenLinkReport report;
  const auto n = std::min(urls.size(), static_cast<std::size_t>(policy.broken_link_sample));
  report.links.resize(n);

  // Group sample indexes by origin; each group is one serialized queue.
  std::vector<std::pair<std::string, std::vector<std::size_t>>> groups;
  std::map<std::string, std::size_t> group_of;
  for (std::size_t i = 0; i < n; ++i) {
    report.links[i].url = urls[i];
    const auto u = Url::parse(urls[i]);
    const auto key = u ? u->origin() : std::string{};
    auto [it, fresh] = group_of.emplace(key, groups.size());
    if (fresh) groups.push_back({key, {}});
    groups[it->second].second.push_back(i);
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t g; (g = next.fetch_add(1)) < groups.size();) {
      const auto& [origin, members] = groups[g];
      std::optional<RobotsRules> rules;
      if (policy.respect_robots && !origin.empty()) rules = robots_for(*Url::parse(origin), policy);
      bool first = true;
      for (auto i : members) {
        auto& link = report.links[i];
        const auto u = Url::parse(link.url);
        if (rules && u && !rules->allowed(u->target)) {
          link.skipped = true;
          continue;
        }
        if (!first && policy.per_host_delay_ms > 0) {
          std::this_thread::sleep_for(std::chrono::milliseconds(policy.per_host_delay_ms));
        }
        first = false;
        try {
          if (!u || !u->is_http()) throw ArgumentError("not an http(s) URL");
          auto r = fetch_once(link.url, policy, HttpMethod::head);
          int hops = 0;
          while (is_redirect(r.status) && !r.header("location").empty() && hops < policy.max_redirects) {
            auto target = Url::parse(r.final_url)->resolve(r.header("location"));
            if (!target) break;
            r = fetch_once(target->str(), policy, HttpMethod::head);
            ++hops;
          }
          if (r.status == 405 || r.status == 501) r = fetch_page(link.url, policy);
          link.status = r.status;
          link.broken = r.status >= 400;
        } catch (const std::exception& e) {
          link.broken = true;
          link.error = e.what();
        }
      }
    }
  };

  const auto threads = std::min(groups.size(), static_cast<std::size_t>(policy.max_concurrent));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  if (threads > 0) worker();
  for (auto& th : pool) th.join();

  for (const auto& link : report.links) {
    if (link.skipped) continue;
    ++report.checked;
    if (link.broken) ++report.broken;
  }
  return report;
}

}  // namespace seorank
