#include "test_server.hpp"

#include <chrono>
#include <stdexcept>
#include <thread>

#include <httplib.h>

namespace seorank::testing {
namespace {

void send_plain(httplib::Response& res, const std::string& body, const char* type, bool gzip) {
  if (gzip) {
    res.set_content(body, type);
    return;
  }
  // A sized content provider bypasses httplib's response compression.
  auto shared = std::make_shared<std::string>(body);
  res.set_content_provider(shared->size(), type,
                           [shared](std::size_t offset, std::size_t length, httplib::DataSink& sink) {
                             sink.write(shared->data() + offset, length);
                             return true;
                           });
}

}  // namespace

struct TestServer::Impl {
  std::unique_ptr<httplib::Server> server;
  std::thread thread;
};

std::string TestServer::home_page(std::size_t bytes) {
  std::string page =
      "<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n"
      "<meta name=\"viewport\" content=\"width=device-width\">\n"
      "<title>Probe University</title>\n"
      "<meta name=\"description\" content=\"Fixture home page\">\n"
      "<link rel=\"stylesheet\" href=\"/style.css\">\n"
      "<script src=\"/app.js\"></script>\n</head>\n<body>\n<h1>Probe</h1>\n"
      "<img src=\"/logo.png\" alt=\"logo\"><img src=\"logo.png\" alt=\"\">\n"
      "<a href=\"/ok\">ok</a> <a href=\"/missing\">missing</a> <a href=\"/gone\">gone</a>\n"
      "<a href=\"/nohead\">nohead</a> <a href=\"/ok#top\">again</a>\n"
      "</body>\n</html>\n";
  const std::string open = "<!--", close = "-->\n";
  if (page.size() + open.size() + close.size() > bytes) throw std::invalid_argument("home page too small");
  page += open;
  page.append(bytes - page.size() - close.size(), 'x');
  page += close;
  return page;
}

TestServer::TestServer(ServerConfig config) : config_(std::move(config)), impl_(std::make_unique<Impl>()) {
  if (config_.tls) {
    impl_->server = std::make_unique<httplib::SSLServer>(config_.cert_file.c_str(), config_.key_file.c_str());
  } else {
    impl_->server = std::make_unique<httplib::Server>();
  }
  auto& s = *impl_->server;
  if (!s.is_valid()) throw std::runtime_error("test server: invalid TLS material");
  const auto cfg = config_;

  const auto home = home_page(cfg.home_bytes);
  s.Get("/", [cfg, home](const httplib::Request&, httplib::Response& res) {
    send_plain(res, home, "text/html; charset=utf-8", cfg.gzip);
  });
  if (cfg.robots) {
    std::string robots = "User-agent: *\nDisallow: /private\n";
    if (cfg.sitemap_in_robots) robots += "Sitemap: /s.xml\n";
    s.Get("/robots.txt", [cfg, robots](const httplib::Request&, httplib::Response& res) {
      send_plain(res, robots, "text/plain", cfg.gzip);
    });
  }
  const std::string sitemap =
      "<?xml version=\"1.0\"?><urlset xmlns=\"http://www.sitemaps.org/schemas/sitemap/0.9\">"
      "<url><loc>/</loc></url></urlset>\n";
  s.Get("/s.xml", [cfg, sitemap](const httplib::Request&, httplib::Response& res) {
    send_plain(res, sitemap, "application/xml", cfg.gzip);
  });
  if (cfg.sitemap_xml) {
    s.Get("/sitemap.xml", [cfg, sitemap](const httplib::Request&, httplib::Response& res) {
      send_plain(res, sitemap, "application/xml", cfg.gzip);
    });
  }
  s.Get("/style.css", [cfg](const httplib::Request&, httplib::Response& res) {
    send_plain(res, "body { color: red; }\np { colr: blue; }\na { color: ; }\n", "text/css", cfg.gzip);
  });
  s.Get("/ok", [](const httplib::Request&, httplib::Response& res) { res.set_content("ok", "text/plain"); });
  s.Get("/missing", [](const httplib::Request&, httplib::Response& res) {
    res.status = 404;
    res.set_content("missing", "text/plain");
  });
  s.Get("/gone", [](const httplib::Request&, httplib::Response& res) {
    res.status = 410;
    res.set_content("gone", "text/plain");
  });
  s.Get("/nohead", [](const httplib::Request& req, httplib::Response& res) {
    if (req.method == "HEAD") {
      res.status = 405;
      return;
    }
    res.set_content("fine", "text/plain");
  });
  s.Get(R"(/r/(\d+))", [](const httplib::Request& req, httplib::Response& res) {
    const int n = std::stoi(req.matches[1]);
    res.set_redirect(n <= 1 ? "/" : "/r/" + std::to_string(n - 1), 302);
  });
  s.Get("/slow", [](const httplib::Request& req, httplib::Response& res) {
    const int ms = req.has_param("ms") ? std::stoi(req.get_param_value("ms")) : 1000;
    std::this_thread::sleep_for(std::chrono::milliseconds(ms));
    res.set_content("late", "text/plain");
  });
  s.Get(".*", [cfg](const httplib::Request&, httplib::Response& res) {
    switch (cfg.missing) {
      case MissingPage::proper_404:
        res.status = 404;
        res.set_content("<!DOCTYPE html><title>Not found</title><p>Sorry, no such page.</p>", "text/html");
        break;
      case MissingPage::soft_404:
        res.status = 200;
        res.set_content("<!DOCTYPE html><title>Home</title><p>Welcome!</p>", "text/html");
        break;
      case MissingPage::error_500:
        res.status = 500;
        res.set_content("server error", "text/plain");
        break;
    }
  });

  port_ = s.bind_to_any_port("127.0.0.1");
  if (port_ <= 0) throw std::runtime_error("test server: bind failed");
  impl_->thread = std::thread([&s] { s.listen_after_bind(); });
  s.wait_until_ready();
}

TestServer::~TestServer() { stop(); }

void TestServer::stop() {
  if (!impl_ || !impl_->server) return;
  impl_->server->stop();
  if (impl_->thread.joinable()) impl_->thread.join();
  impl_->server.reset();
}

std::string TestServer::origin() const {
  return std::string(config_.tls ? "https" : "http") + "://127.0.0.1:" + std::to_string(port_);
}

}  // namespace seorank::testing
