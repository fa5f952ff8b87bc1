#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace seorank {

/// Parsed robots.txt: the Allow/Disallow group that applies to one user
/// agent, plus every declared Sitemap URL.
class RobotsRules {
 public:
  /// Picks the group whose User-agent token is a case-insensitive substring
  /// of `user_agent`; falls back to the "*" group.
  static RobotsRules parse(std::string_view body, std::string_view user_agent);

  /// Longest matching rule wins; Allow wins ties. Supports '*' and a
  /// trailing '$' in patterns.
  bool allowed(std::string_view path) const;

  const std::vector<std::string>& sitemaps() const { return sitemaps_; }

 private:
  struct Rule {
    std::string pattern;
    bool allow = false;
  };
  std::vector<Rule> rules_;
  std::vector<std::string> sitemaps_;
};

}  // namespace seorank
