#include "seorank/audit.hpp"

#include <algorithm>
#include <map>
#include <set>

#include <nlohmann/json.hpp>

#include "seorank/text.hpp"

namespace seorank {
namespace {

using html::Document;
using html::Node;

std::string collapse_whitespace(std::string_view s) {
  std::string out;
  bool pending = false;
  for (char c : s) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f') {
      pending = !out.empty();
    } else {
      if (pending) out.push_back(' ');
      pending = false;
      out.push_back(c);
    }
  }
  return out;
}

// The page's links resolve against this; empty/fragment-only/script hrefs
// never count.
std::optional<Url> resolve_href(const Url& base, std::string_view href) {
  href = text::trim(href);
  if (href.empty() || href.front() == '#') return std::nullopt;
  return base.resolve(href);
}

bool in_social(std::string_view host, const std::vector<std::string>& domains) {
  const auto h = registrable_host(host);
  return std::any_of(domains.begin(), domains.end(),
                     [&](const std::string& d) { return host_within(h, text::to_lower(d)); });
}

bool rel_has(std::string_view rel, std::string_view token) {
  const auto lower = text::to_lower(rel);
  std::string_view s = lower;
  while (!s.empty()) {
    const auto sp = s.find_first_of(" \t\n\r\f");
    if (s.substr(0, sp) == token) return true;
    if (sp == std::string_view::npos) break;
    s.remove_prefix(sp + 1);
  }
  return false;
}

void push_unique(std::vector<std::string>& out, std::set<std::string>& seen, const std::string& s) {
  if (seen.insert(s).second) out.push_back(s);
}

}  // namespace

const std::vector<std::string>& default_social_domains() {
  static const std::vector<std::string> kDomains = {
      "facebook.com", "twitter.com", "x.com", "instagram.com", "linkedin.com", "youtube.com",
  };
  return kDomains;
}

Url effective_base(const Document& doc, const Url& page_url) {
  if (const auto& href = doc.base_href()) {
    if (auto u = page_url.resolve(*href)) return *u;
  }
  return page_url;
}

OnPageMetrics extract_onpage(const Document& doc, const Url& page_url,
                             const std::vector<std::string>& social_domains) {
  OnPageMetrics m;
  m.h1_count = doc.elements("h1").size();
  m.iframe_count = doc.elements("iframe").size();
  m.embed_object_count = doc.elements("embed").size() + doc.elements("object").size();
  for (auto i : doc.elements("img")) {
    if (!doc.node(i).has_attr("alt")) ++m.img_without_alt;
  }

  if (auto t = doc.first("title")) {
    m.title_chars = text::utf8_length(collapse_whitespace(doc.text_content(*t)));
  }
  bool described = false;
  for (auto i : doc.elements("meta")) {
    const auto& n = doc.node(i);
    const auto name = text::to_lower(text::trim(n.attr("name").value_or("")));
    if (name == "description" && !described) {
      described = true;
      m.meta_description_chars = text::utf8_length(collapse_whitespace(n.attr("content").value_or("")));
    } else if (name == "viewport") {
      m.responsive = true;
    }
  }

  m.doctype = doc.has_doctype();
  m.encoding_declared = doc.declared_encoding().has_value() || doc.encoding_hint().has_value();
  if (auto h = doc.first("html")) {
    m.language_english = text::starts_with_icase(text::trim(doc.node(*h).attr("lang").value_or("")), "en");
  }

  const auto base = effective_base(doc, page_url);
  const auto site = std::string(registrable_host(page_url.host));
  for (auto i : doc.elements("a")) {
    const auto href = doc.node(i).attr("href");
    if (!href) continue;
    const auto target = resolve_href(base, *href);
    if (!target) continue;
    ++m.total_links;
    if (host_within(target->host, site)) {
      ++m.internal_links;
    } else {
      ++m.external_links;
    }
    if (in_social(target->host, social_domains)) ++m.social_media;
  }
  return m;
}

LintReport lint_markup(const Document& doc, const std::vector<std::string>& stylesheets) {
  LintReport r;
  r.html_errors += doc.issues().size();  // E1, E3, E4

  std::map<std::string, std::size_t> ids;
  css::LintCounts css_counts;
  for (const auto& n : doc.nodes()) {
    if (n.type != Node::Type::element) continue;
    if (auto id = n.attr("id"); id && !id->empty()) {
      if (ids[std::string(*id)]++ > 0) ++r.html_errors;  // E2
    }
    if (!n.foreign && n.name.find('-') == std::string::npos && !html::is_known_element(n.name)) {
      ++r.html_errors;  // E5
    }
    if (n.name == "img" && !n.has_attr("alt")) ++r.html_warnings;  // W1
    if (html::is_deprecated_element(n.name)) ++r.html_warnings;    // W3
    if (auto style = n.attr("style")) css_counts += css::lint_declarations(*style);
  }
  const auto root = doc.first("html");
  if (!root || !doc.node(*root).has_attr("lang")) ++r.html_warnings;  // W2

  for (auto i : doc.elements("style")) css_counts += css::lint_stylesheet(doc.text_content(i));
  for (const auto& sheet : stylesheets) css_counts += css::lint_stylesheet(sheet);
  r.css_errors = css_counts.errors;
  r.css_warnings = css_counts.warnings;
  return r;
}

std::vector<std::string> extract_subresources(const Document& doc, const Url& page_url) {
  const auto base = effective_base(doc, page_url);
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const auto& n : doc.nodes()) {
    if (n.type != Node::Type::element) continue;
    std::optional<std::string_view> ref;
    if (n.name == "img" || n.name == "script" || n.name == "iframe") {
      ref = n.attr("src");
    } else if (n.name == "link" && rel_has(n.attr("rel").value_or(""), "stylesheet")) {
      ref = n.attr("href");
    }
    if (!ref) continue;
    if (auto u = resolve_href(base, *ref)) push_unique(out, seen, u->str());
  }
  return out;
}

std::vector<std::string> extract_stylesheets(const Document& doc, const Url& page_url) {
  const auto base = effective_base(doc, page_url);
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (auto i : doc.elements("link")) {
    const auto& n = doc.node(i);
    if (!rel_has(n.attr("rel").value_or(""), "stylesheet")) continue;
    if (auto href = n.attr("href")) {
      if (auto u = resolve_href(base, *href)) push_unique(out, seen, u->str());
    }
  }
  return out;
}

std::vector<std::string> extract_links(const Document& doc, const Url& page_url) {
  const auto base = effective_base(doc, page_url);
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (auto i : doc.elements("a")) {
    if (auto href = doc.node(i).attr("href")) {
      if (auto u = resolve_href(base, *href)) push_unique(out, seen, u->str());
    }
  }
  return out;
}

void store(const OnPageMetrics& m, MetricValues& v) {
  auto put = [&](MetricId id, double x) { v[index_of(id)] = x; };
  put(MetricId::h1_count, static_cast<double>(m.h1_count));
  put(MetricId::img_without_alt, static_cast<double>(m.img_without_alt));
  put(MetricId::iframe_count, static_cast<double>(m.iframe_count));
  put(MetricId::embed_object_count, static_cast<double>(m.embed_object_count));
  put(MetricId::title_chars, static_cast<double>(m.title_chars));
  put(MetricId::meta_description_chars, static_cast<double>(m.meta_description_chars));
  put(MetricId::doctype, m.doctype ? 1 : 0);
  put(MetricId::encoding_declared, m.encoding_declared ? 1 : 0);
  put(MetricId::language_english, m.language_english ? 1 : 0);
  put(MetricId::responsive, m.responsive ? 1 : 0);
  put(MetricId::social_media, static_cast<double>(m.social_media));
  put(MetricId::total_links, static_cast<double>(m.total_links));
  put(MetricId::internal_links, static_cast<double>(m.internal_links));
  put(MetricId::external_links, static_cast<double>(m.external_links));
}

void store(const LintReport& r, MetricValues& v) {
  v[index_of(MetricId::html_errors)] = static_cast<double>(r.html_errors);
  v[index_of(MetricId::html_warnings)] = static_cast<double>(r.html_warnings);
  v[index_of(MetricId::css_errors)] = static_cast<double>(r.css_errors);
  v[index_of(MetricId::css_warnings)] = static_cast<double>(r.css_warnings);
}

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::measured: return "measured";
    case Provenance::provider: return "provider";
    case Provenance::missing: return "missing";
  }
  return "missing";
}

std::string AuditReport::to_json(int indent) const {
  nlohmann::ordered_json j;
  j["url"] = url;
  j["fetched_at"] = fetched_at;
  auto& metrics = j["metrics"] = nlohmann::ordered_json::object();
  auto& prov = j["provenance"] = nlohmann::ordered_json::object();
  for (const auto& d : builtin_registry()) {
    const auto key = std::string(to_string(d.id));
    const auto& v = values[index_of(d.id)];
    if (!v) {
      metrics[key] = nullptr;
    } else if (*v == static_cast<double>(static_cast<std::int64_t>(*v))) {
      metrics[key] = static_cast<std::int64_t>(*v);
    } else {
      metrics[key] = *v;
    }
    prov[key] = std::string(to_string(v ? provenance[index_of(d.id)] : Provenance::missing));
  }
  if (!notes.empty()) j["notes"] = notes;
  return j.dump(indent) + "\n";
}

}  // namespace seorank
