#pragma once

// Local HTTP(S) server whose every observable is fixed by its config, so
// fetch probes can be checked bit for bit.

#include <cstddef>
#include <memory>
#include <string>

namespace seorank::testing {

enum class MissingPage { proper_404, soft_404, error_500 };

struct ServerConfig {
  bool gzip = true;
  bool tls = false;
  bool robots = true;
  bool sitemap_in_robots = true;  // robots.txt declares Sitemap: /s.xml
  bool sitemap_xml = false;       // /sitemap.xml answers 200
  MissingPage missing = MissingPage::proper_404;
  std::size_t home_bytes = 12 * 1024;
  std::string cert_file;  // PEM pair, required when tls
  std::string key_file;
};

/// Routes:
///   /              home page, exactly home_bytes of HTML
///   /robots.txt    when robots
///   /s.xml         sitemap (always served)
///   /sitemap.xml   when sitemap_xml
///   /style.css     small stylesheet with one error and one warning
///   /ok /missing /gone /nohead   200 / 404 / 410 / 405-on-HEAD
///   /r/N           redirect chain: N redirects ending at /
///   /slow?ms=M     answers after M milliseconds
///   /private/...   disallowed by robots.txt
///   anything else  per `missing`
class TestServer {
 public:
  explicit TestServer(ServerConfig config);
  ~TestServer();
  TestServer(const TestServer&) = delete;
  TestServer& operator=(const TestServer&) = delete;

  int port() const { return port_; }
  /// "http://127.0.0.1:PORT" or "https://127.0.0.1:PORT"
  std::string origin() const;
  const ServerConfig& config() const { return config_; }

  /// The home page bytes served at "/".
  static std::string home_page(std::size_t bytes);
  /// Links in the home page, in document order.
  static constexpr std::size_t kHomeAnchors = 5;        // /ok /missing /gone /nohead /ok#top
  static constexpr std::size_t kHomeDistinctLinks = 4;  // fragments stripped
  static constexpr std::size_t kHomeBrokenLinks = 2;    // /missing /gone
  static constexpr std::size_t kHomeSubresources = 3;   // /logo.png (twice) /app.js /style.css

  void stop();

 private:
  struct Impl;
  ServerConfig config_;
  std::unique_ptr<Impl> impl_;
  int port_ = 0;
};

}  // namespace seorank::testing
