#include "seorank/config.hpp"

#include <cstdlib>
#include <set>
#include <sstream>

#include <toml.hpp>

#include "seorank/text.hpp"

namespace seorank {
namespace {

class Reader {
 public:
  Reader(const toml::table& t, std::string section) : t_(t), section_(std::move(section)) {}

  ~Reader() = default;

  void check_unknown() const {
    for (const auto& [k, v] : t_) {
      if (!seen_.count(std::string(k.str()))) throw ParseError("config: unknown key " + section_ + "." + std::string(k.str()));
    }
  }

  void get(std::string_view key, int& out) {
    if (auto n = node(key)) {
      auto v = n->value<std::int64_t>();
      if (!n->is_integer() || !v) fail(key, "an integer");
      out = static_cast<int>(*v);
    }
  }
  void get(std::string_view key, std::size_t& out) {
    int v = static_cast<int>(out);
    get(key, v);
    if (v < 0) fail(key, "a non-negative integer");
    out = static_cast<std::size_t>(v);
  }
  void get(std::string_view key, double& out) {
    if (auto n = node(key)) {
      auto v = n->value<double>();  // integers are accepted and widened
      if (!v || !(n->is_floating_point() || n->is_integer())) fail(key, "a number");
      out = *v;
    }
  }
  void get(std::string_view key, bool& out) {
    if (auto n = node(key)) {
      if (!n->is_boolean()) fail(key, "a boolean");
      out = *n->value<bool>();
    }
  }
  void get(std::string_view key, std::string& out) {
    if (auto n = node(key)) {
      if (!n->is_string()) fail(key, "a string");
      out = *n->value<std::string>();
    }
  }
  void get(std::string_view key, std::vector<std::string>& out) {
    if (auto n = node(key)) {
      const auto* arr = n->as_array();
      if (!arr) fail(key, "an array of strings");
      out.clear();
      for (const auto& e : *arr) {
        if (!e.is_string()) fail(key, "an array of strings");
        out.push_back(*e.value<std::string>());
      }
    }
  }

 private:
  const toml::node* node(std::string_view key) {
    seen_.insert(std::string(key));
    return t_.get(key);
  }
  [[noreturn]] void fail(std::string_view key, std::string_view what) const {
    throw ParseError("config: " + section_ + "." + std::string(key) + " must be " + std::string(what));
  }

  const toml::table& t_;
  std::string section_;
  std::set<std::string> seen_;
};

const toml::table& section(const toml::table& root, std::string_view name) {
  static const toml::table kEmpty;
  const auto* n = root.get(name);
  if (!n) return kEmpty;
  if (!n->is_table()) throw ParseError("config: [" + std::string(name) + "] must be a table");
  return *n->as_table();
}

toml::array string_array(const std::vector<std::string>& v) {
  toml::array a;
  for (const auto& s : v) a.push_back(s);
  return a;
}

}  // namespace

RunConfig parse_config(std::string_view text) {
  toml::table root;
  try {
    root = toml::parse(text);
  } catch (const toml::parse_error& e) {
    std::ostringstream msg;
    msg << "config: " << e.description() << " at line " << e.source().begin.line;
    throw ParseError(msg.str());
  }
  static const std::set<std::string> kSections = {"fetch", "analysis", "mining", "audit", "providers"};
  for (const auto& [k, v] : root) {
    if (!kSections.count(std::string(k.str()))) throw ParseError("config: unknown table [" + std::string(k.str()) + "]");
  }

  RunConfig c;
  {
    Reader r(section(root, "fetch"), "fetch");
    auto& f = c.fetch;
    r.get("timeout_ms", f.timeout_ms);
    r.get("max_redirects", f.max_redirects);
    r.get("max_body_kb", f.max_body_kb);
    r.get("user_agent", f.user_agent);
    r.get("max_concurrent", f.max_concurrent);
    r.get("per_host_delay_ms", f.per_host_delay_ms);
    r.get("broken_link_sample", f.broken_link_sample);
    r.get("verify_tls", f.verify_tls);
    r.get("respect_robots", f.respect_robots);
    r.get("ca_file", f.ca_file);
    r.check_unknown();
    try {
      f.validate();
    } catch (const ArgumentError& e) {
      throw ParseError(std::string("config: [fetch] ") + e.what());
    }
  }
  {
    Reader r(section(root, "analysis"), "analysis");
    auto& a = c.analysis();
    r.get("log_shift", a.log_shift);
    r.get("max_abs_skewness", a.thresholds.max_abs_skewness);
    r.get("max_abs_excess_kurtosis", a.thresholds.max_abs_excess_kurtosis);
    r.check_unknown();
    if (!(a.log_shift >= 0)) throw ParseError("config: analysis.log_shift must be >= 0");
  }
  {
    Reader r(section(root, "mining"), "mining");
    auto& m = c.mining;
    std::string method = m.method == miner::BinningMethod::quantile ? "quantile" : "equal-width";
    r.get("feature_k", m.feature_k);
    r.get("bins", m.bins);
    r.get("method", method);
    r.get("min_support_pct", m.min_support_pct);
    r.get("min_confidence_pct", m.min_confidence_pct);
    r.get("max_antecedent", m.max_antecedent);
    r.get("top_n", m.top_n);
    r.get("missing_as_item", m.missing_as_item);
    r.check_unknown();
    if (method == "equal-width") {
      m.method = miner::BinningMethod::equal_width;
    } else if (method == "quantile") {
      m.method = miner::BinningMethod::quantile;
    } else {
      throw ParseError("config: mining.method must be \"equal-width\" or \"quantile\"");
    }
  }
  {
    Reader r(section(root, "audit"), "audit");
    r.get("social_domains", c.social_domains);
    r.check_unknown();
  }
  {
    Reader r(section(root, "providers"), "providers");
    r.get("fixtures", c.fixtures);
    r.get("search_fixture", c.search_fixture);
    r.check_unknown();
  }
  return c;
}

RunConfig load_config_file(const std::string& path) { return parse_config(text::read_file(path)); }

std::string to_toml(const RunConfig& c) {
  const auto& f = c.fetch;
  const auto& m = c.mining;
  const auto& a = c.analysis();
  toml::table root{
      {"fetch", toml::table{
                    {"timeout_ms", f.timeout_ms},
                    {"max_redirects", f.max_redirects},
                    {"max_body_kb", f.max_body_kb},
                    {"user_agent", f.user_agent},
                    {"max_concurrent", f.max_concurrent},
                    {"per_host_delay_ms", f.per_host_delay_ms},
                    {"broken_link_sample", f.broken_link_sample},
                    {"verify_tls", f.verify_tls},
                    {"respect_robots", f.respect_robots},
                    {"ca_file", f.ca_file},
                }},
      {"analysis", toml::table{
                       {"log_shift", a.log_shift},
                       {"max_abs_skewness", a.thresholds.max_abs_skewness},
                       {"max_abs_excess_kurtosis", a.thresholds.max_abs_excess_kurtosis},
                   }},
      {"mining", toml::table{
                     {"feature_k", m.feature_k},
                     {"bins", m.bins},
                     {"method", m.method == miner::BinningMethod::quantile ? "quantile" : "equal-width"},
                     {"min_support_pct", m.min_support_pct},
                     {"min_confidence_pct", m.min_confidence_pct},
                     {"max_antecedent", static_cast<std::int64_t>(m.max_antecedent)},
                     {"top_n", static_cast<std::int64_t>(m.top_n)},
                     {"missing_as_item", m.missing_as_item},
                 }},
      {"audit", toml::table{{"social_domains", string_array(c.social_domains)}}},
      {"providers", toml::table{
                        {"fixtures", string_array(c.fixtures)},
                        {"search_fixture", c.search_fixture},
                    }},
  };
  std::ostringstream out;
  out << root << "\n";
  return out.str();
}

RunConfig load_default_config() {
  if (const char* path = std::getenv(std::string(kConfigEnvVar).c_str()); path && *path) {
    return load_config_file(path);
  }
  return RunConfig{};
}

}  // namespace seorank
