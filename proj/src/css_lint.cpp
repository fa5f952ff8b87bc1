#include "seorank/css_lint.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <string>

#include "seorank/text.hpp"

namespace seorank::css {
namespace {

constexpr std::string_view kProperties[] = {
    "accent-color", "align-content", "align-items", "align-self", "all", "animation", "animation-delay",
    "animation-direction", "animation-duration", "animation-fill-mode", "animation-iteration-count",
    "animation-name", "animation-play-state", "animation-timing-function", "appearance", "aspect-ratio",
    "backdrop-filter", "backface-visibility", "background", "background-attachment", "background-blend-mode",
    "background-clip", "background-color", "background-image", "background-origin", "background-position",
    "background-position-x", "background-position-y", "background-repeat", "background-size", "block-size",
    "border", "border-block", "border-block-end", "border-block-start", "border-bottom", "border-bottom-color",
    "border-bottom-left-radius", "border-bottom-right-radius", "border-bottom-style", "border-bottom-width",
    "border-collapse", "border-color", "border-image", "border-image-outset", "border-image-repeat",
    "border-image-slice", "border-image-source", "border-image-width", "border-inline", "border-inline-end",
    "border-inline-start", "border-left", "border-left-color", "border-left-style", "border-left-width",
    "border-radius", "border-right", "border-right-color", "border-right-style", "border-right-width",
    "border-spacing", "border-style", "border-top", "border-top-color", "border-top-left-radius",
    "border-top-right-radius", "border-top-style", "border-top-width", "border-width", "bottom",
    "box-decoration-break", "box-shadow", "box-sizing", "break-after", "break-before", "break-inside",
    "caption-side", "caret-color", "clear", "clip", "clip-path", "color", "color-scheme", "column-count",
    "column-fill", "column-gap", "column-rule", "column-rule-color", "column-rule-style", "column-rule-width",
    "column-span", "column-width", "columns", "contain", "content", "content-visibility", "counter-increment",
    "counter-reset", "counter-set", "cursor", "direction", "display", "empty-cells", "fill", "filter", "flex",
    "flex-basis", "flex-direction", "flex-flow", "flex-grow", "flex-shrink", "flex-wrap", "float", "font",
    "font-display", "font-family", "font-feature-settings", "font-kerning", "font-size", "font-size-adjust",
    "font-stretch", "font-style", "font-variant", "font-variant-caps", "font-variant-numeric", "font-weight",
    "gap", "grid", "grid-area", "grid-auto-columns", "grid-auto-flow", "grid-auto-rows", "grid-column",
    "grid-column-end", "grid-column-gap", "grid-column-start", "grid-gap", "grid-row", "grid-row-end",
    "grid-row-gap", "grid-row-start", "grid-template", "grid-template-areas", "grid-template-columns",
    "grid-template-rows", "height", "hyphens", "image-rendering", "inline-size", "inset", "isolation",
    "justify-content", "justify-items", "justify-self", "left", "letter-spacing", "line-break", "line-height",
    "list-style", "list-style-image", "list-style-position", "list-style-type", "margin", "margin-block",
    "margin-block-end", "margin-block-start", "margin-bottom", "margin-inline", "margin-inline-end",
    "margin-inline-start", "margin-left", "margin-right", "margin-top", "mask", "max-block-size", "max-height",
    "max-inline-size", "max-width", "min-block-size", "min-height", "min-inline-size", "min-width",
    "mix-blend-mode", "object-fit", "object-position", "opacity", "order", "orphans", "outline",
    "outline-color", "outline-offset", "outline-style", "outline-width", "overflow", "overflow-wrap",
    "overflow-x", "overflow-y", "overscroll-behavior", "padding", "padding-block", "padding-bottom",
    "padding-inline", "padding-left", "padding-right", "padding-top", "page-break-after", "page-break-before",
    "page-break-inside", "perspective", "perspective-origin", "place-content", "place-items", "place-self",
    "pointer-events", "position", "quotes", "resize", "right", "rotate", "row-gap", "scale", "scroll-behavior",
    "scroll-margin", "scroll-padding", "scroll-snap-align", "scroll-snap-type", "src", "stroke",
    "stroke-width", "tab-size", "table-layout", "text-align", "text-align-last", "text-decoration",
    "text-decoration-color", "text-decoration-line", "text-decoration-style", "text-indent", "text-overflow",
    "text-rendering", "text-shadow", "text-transform", "text-underline-offset", "top", "touch-action",
    "transform", "transform-origin", "transform-style", "transition", "transition-delay",
    "transition-duration", "transition-property", "transition-timing-function", "translate", "unicode-bidi",
    "unicode-range", "user-select", "vertical-align", "visibility", "white-space", "widows", "width",
    "will-change", "word-break", "word-spacing", "word-wrap", "writing-mode", "z-index", "zoom",
};

constexpr std::string_view kAtRules[] = {
    "charset", "container", "counter-style", "document", "font-face", "font-feature-values", "import",
    "keyframes", "layer", "media", "namespace", "page", "supports",
};

bool valid_property_name(std::string_view name) {
  if (name.empty()) return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_';
  });
}

bool balanced(std::string_view value) {
  int paren = 0, bracket = 0;
  char quote = 0;
  for (char c : value) {
    if (quote) {
      if (c == quote) quote = 0;
      continue;
    }
    if (c == '"' || c == '\'') quote = c;
    if (c == '(') ++paren;
    if (c == ')' && --paren < 0) return false;
    if (c == '[') ++bracket;
    if (c == ']' && --bracket < 0) return false;
  }
  return paren == 0 && bracket == 0 && quote == 0;
}

// Splits on `sep` at nesting depth 0, honouring quotes and parentheses.
std::vector<std::string_view> split_top_level(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  int depth = 0;
  char quote = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (quote) {
      if (c == quote) quote = 0;
    } else if (c == '"' || c == '\'') {
      quote = c;
    } else if (c == '(') {
      ++depth;
    } else if (c == ')') {
      depth = std::max(0, depth - 1);
    } else if (c == sep && depth == 0) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  out.push_back(s.substr(start));
  return out;
}

LintCounts lint_declaration(std::string_view decl) {
  LintCounts c;
  decl = text::trim(decl);
  if (decl.empty()) return c;
  const auto colon = decl.find(':');
  if (colon == std::string_view::npos) {
    ++c.errors;
    return c;
  }
  const auto name = text::to_lower(text::trim(decl.substr(0, colon)));
  auto value = text::trim(decl.substr(colon + 1));
  if (auto bang = value.rfind('!'); bang != std::string_view::npos &&
                                    text::equals_icase(text::trim(value.substr(bang + 1)), "important")) {
    value = text::trim(value.substr(0, bang));
  }
  if (name.starts_with("--")) {
    if (!balanced(value)) ++c.errors;
    return c;
  }
  if (!valid_property_name(name) || value.empty() || !balanced(value)) {
    ++c.errors;
    return c;
  }
  if (name.front() == '-' || name.front() == '_') {
    ++c.warnings;  // vendor extension
  } else if (!is_known_property(name)) {
    ++c.warnings;
  }
  return c;
}

class Linter {
 public:
  explicit Linter(std::string_view css) : src_(strip_comments(css)) {}

  LintCounts run() {
    rules(false);
    return counts_;
  }

 private:
  std::string strip_comments(std::string_view css) {
    std::string out;
    out.reserve(css.size());
    std::size_t i = 0;
    while (i < css.size()) {
      if (css.substr(i).starts_with("/*")) {
        const auto end = css.find("*/", i + 2);
        if (end == std::string_view::npos) {
          ++counts_.errors;
          break;
        }
        out.push_back(' ');
        i = end + 2;
      } else {
        out.push_back(css[i++]);
      }
    }
    return out;
  }

  // Returns the index of the '}' matching the '{' at `open`, or npos.
  std::size_t matching_brace(std::size_t open) const {
    int depth = 0;
    char quote = 0;
    for (std::size_t i = open; i < src_.size(); ++i) {
      const char c = src_[i];
      if (quote) {
        if (c == '\\') {
          ++i;
        } else if (c == quote) {
          quote = 0;
        }
        continue;
      }
      if (c == '"' || c == '\'') {
        quote = c;
      } else if (c == '{') {
        ++depth;
      } else if (c == '}' && --depth == 0) {
        return i;
      }
    }
    return std::string::npos;
  }

  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  // Parses rules until end of input, or until the closing '}' when nested.
  void rules(bool nested) {
    while (true) {
      skip_space();
      if (pos_ >= src_.size()) return;
      if (src_[pos_] == '}') {
        if (nested) return;
        ++counts_.errors;  // stray
        ++pos_;
        continue;
      }
      if (src_[pos_] == '@') {
        at_rule();
      } else {
        qualified_rule();
      }
    }
  }

  void at_rule() {
    ++pos_;
    const auto start = pos_;
    while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '-')) ++pos_;
    auto name = text::to_lower(std::string_view(src_).substr(start, pos_ - start));
    std::string_view bare = name;
    if (bare.starts_with("-")) {
      // @-webkit-keyframes and friends
      const auto dash = bare.find('-', 1);
      bare = dash == std::string_view::npos ? bare : bare.substr(dash + 1);
    }
    const bool known = std::find(std::begin(kAtRules), std::end(kAtRules), bare) != std::end(kAtRules);
    if (!known || bare != name) ++counts_.warnings;

    const auto stop = src_.find_first_of(";{", pos_);
    if (stop == std::string::npos) {
      ++counts_.errors;
      pos_ = src_.size();
      return;
    }
    if (src_[stop] == ';') {
      pos_ = stop + 1;
      return;
    }
    const auto close = matching_brace(stop);
    if (close == std::string::npos) {
      ++counts_.errors;
      pos_ = src_.size();
      return;
    }
    if (bare == "font-face" || bare == "page" || bare == "counter-style" || bare == "font-feature-values") {
      declarations(std::string_view(src_).substr(stop + 1, close - stop - 1));
      pos_ = close + 1;
    } else if (known) {
      pos_ = stop + 1;
      rules(true);
      pos_ = close + 1;
    } else {
      pos_ = close + 1;
    }
  }

  void qualified_rule() {
    const auto open = src_.find_first_of("{}", pos_);
    if (open == std::string::npos || src_[open] == '}') {
      ++counts_.errors;  // selector without a block
      pos_ = open == std::string::npos ? src_.size() : open + 1;
      return;
    }
    if (text::trim(std::string_view(src_).substr(pos_, open - pos_)).empty()) ++counts_.errors;
    const auto close = matching_brace(open);
    if (close == std::string::npos) {
      ++counts_.errors;
      declarations(std::string_view(src_).substr(open + 1));
      pos_ = src_.size();
      return;
    }
    declarations(std::string_view(src_).substr(open + 1, close - open - 1));
    pos_ = close + 1;
  }

  void declarations(std::string_view block) {
    if (block.find('{') != std::string_view::npos) {
      // Nested rules inside a declaration block; lint them as a stylesheet.
      Linter inner{block};
      counts_ += inner.run();
      return;
    }
    for (auto decl : split_top_level(block, ';')) counts_ += lint_declaration(decl);
  }

  LintCounts counts_;  // first: strip_comments() counts into it
  std::string src_;
  std::size_t pos_ = 0;
};

}  // namespace

bool is_known_property(std::string_view name) {
  return std::find(std::begin(kProperties), std::end(kProperties), name) != std::end(kProperties);
}

LintCounts lint_stylesheet(std::string_view css) { return Linter{css}.run(); }

LintCounts lint_declarations(std::string_view declarations) {
  LintCounts c;
  for (auto decl : split_top_level(declarations, ';')) c += lint_declaration(decl);
  return c;
}

}  // namespace seorank::css
