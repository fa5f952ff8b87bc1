#pragma once

#include <cstddef>
#include <string_view>

namespace seorank::css {

struct LintCounts {
  std::size_t errors = 0;
  std::size_t warnings = 0;

  LintCounts& operator+=(const LintCounts& o) {
    errors += o.errors;
    warnings += o.warnings;
    return *this;
  }
};

/// Lints a stylesheet (rule set "css-lint/1"):
///   errors   - declaration without ':' / empty property / empty value /
///              malformed property name / unbalanced () or [] in a value /
///              rule without a '{' block / unterminated block or comment /
///              stray '}' / empty selector
///   warnings - unknown property name / vendor-prefixed property /
///              unknown at-rule
LintCounts lint_stylesheet(std::string_view css);

/// Lints a bare declaration list, as found in a style="" attribute.
LintCounts lint_declarations(std::string_view declarations);

bool is_known_property(std::string_view name);

}  // namespace seorank::css
