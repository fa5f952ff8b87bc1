#include "seorank/robots.hpp"

#include <optional>

#include "seorank/text.hpp"

namespace seorank {
namespace {

bool pattern_matches(std::string_view pattern, std::string_view path) {
  const bool anchored = !pattern.empty() && pattern.back() == '$';
  if (anchored) pattern.remove_suffix(1);
  // Greedy-free wildcard match: p and s indexes with backtracking on '*'.
  std::size_t p = 0, s = 0;
  std::optional<std::size_t> star_p, star_s;
  while (s < path.size()) {
    if (p < pattern.size() && pattern[p] == '*') {
      star_p = p++;
      star_s = s;
    } else if (p < pattern.size() && pattern[p] == path[s]) {
      ++p;
      ++s;
    } else if (p == pattern.size() && !anchored) {
      return true;  // prefix match
    } else if (star_p) {
      p = *star_p + 1;
      s = ++*star_s;
    } else {
      return false;
    }
  }
  while (p < pattern.size() && pattern[p] == '*') ++p;
  return p == pattern.size();
}

}  // namespace

RobotsRules RobotsRules::parse(std::string_view body, std::string_view user_agent) {
  struct Group {
    std::vector<std::string> agents;
    std::vector<Rule> rules;
  };
  std::vector<Group> groups;
  RobotsRules out;
  bool in_agents = false;

  for (auto line : text::split_lines(body)) {
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto colon = line.find(':');
    if (colon == std::string_view::npos) continue;
    const auto key = text::to_lower(text::trim(line.substr(0, colon)));
    const auto value = std::string(text::trim(line.substr(colon + 1)));

    if (key == "user-agent") {
      if (!in_agents) groups.emplace_back();
      groups.back().agents.push_back(text::to_lower(value));
      in_agents = true;
    } else if (key == "allow" || key == "disallow") {
      in_agents = false;
      if (groups.empty()) continue;
      if (key == "disallow" && value.empty()) continue;  // empty Disallow allows everything
      groups.back().rules.push_back(Rule{value, key == "allow"});
    } else if (key == "sitemap") {
      if (!value.empty()) out.sitemaps_.push_back(value);
    } else {
      in_agents = false;
    }
  }

  const auto ua = text::to_lower(user_agent);
  const Group* chosen = nullptr;
  const Group* fallback = nullptr;
  for (const auto& g : groups) {
    for (const auto& a : g.agents) {
      if (a == "*") {
        if (!fallback) fallback = &g;
      } else if (!a.empty() && ua.find(a) != std::string::npos && !chosen) {
        chosen = &g;
      }
    }
  }
  if (!chosen) chosen = fallback;
  if (chosen) out.rules_ = chosen->rules;
  return out;
}

bool RobotsRules::allowed(std::string_view path) const {
  std::size_t best_len = 0;
  bool best_allow = true;
  bool matched = false;
  for (const auto& r : rules_) {
    if (!pattern_matches(r.pattern, path)) continue;
    const auto len = r.pattern.size();
    if (!matched || len > best_len || (len == best_len && r.allow)) {
      best_len = len;
      best_allow = r.allow;
      matched = true;
    }
  }
  return best_allow;
}

}  // namespace seorank
