#pragma once

// Tolerant HTML parser. Never fails: malformed markup is recovered into a
// tree, and the recoveries are recorded as ParseIssues for the linter.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace seorank::html {

using NodeIndex = std::size_t;
inline constexpr NodeIndex kNoNode = static_cast<NodeIndex>(-1);

struct Node {
  enum class Type : std::uint8_t { document, element, text, comment };
  Type type = Type::element;
  std::string name;  // lowercase tag name for elements
  std::vector<std::pair<std::string, std::string>> attributes;  // lowercase names, decoded values
  std::string text;  // text and comment nodes
  NodeIndex parent = kNoNode;
  std::vector<NodeIndex> children;
  bool foreign = false;  // inside <svg> or <math>

  std::optional<std::string_view> attr(std::string_view name) const;
  bool has_attr(std::string_view name) const { return attr(name).has_value(); }
};

struct ParseIssue {
  enum class Kind : std::uint8_t { unclosed_element, misnested_tag, stray_end_tag };
  Kind kind;
  std::string tag;
};

class Document;
Document parse_html(std::string_view bytes, std::optional<std::string> declared_encoding_hint = std::nullopt);

class Document {
 public:
  /// Node 0 is the document root; nodes are stored in document order.
  const std::vector<Node>& nodes() const { return nodes_; }
  const Node& node(NodeIndex i) const { return nodes_[i]; }
  const Node& root() const { return nodes_.front(); }

  /// Elements with the given lowercase tag name, in document order.
  std::vector<NodeIndex> elements(std::string_view name) const;
  std::optional<NodeIndex> first(std::string_view name) const;
  /// Concatenated descendant text.
  std::string text_content(NodeIndex i) const;

  bool has_doctype() const { return doctype_.has_value(); }
  const std::optional<std::string>& doctype() const { return doctype_; }
  /// Charset from <meta charset> or <meta http-equiv=content-type>.
  const std::optional<std::string>& declared_encoding() const { return declared_encoding_; }
  /// Charset passed in by the caller (usually from the Content-Type header).
  const std::optional<std::string>& encoding_hint() const { return encoding_hint_; }
  const std::optional<std::string>& base_href() const { return base_href_; }
  const std::vector<ParseIssue>& issues() const { return issues_; }

 private:
  friend class TreeBuilder;
  friend Document parse_html(std::string_view, std::optional<std::string>);
  std::vector<Node> nodes_;
  std::optional<std::string> doctype_;
  std::optional<std::string> declared_encoding_;
  std::optional<std::string> encoding_hint_;
  std::optional<std::string> base_href_;
  std::vector<ParseIssue> issues_;
};

/// Decodes character references (&amp;, &#233;, &#x263A;, common named ones).
std::string decode_entities(std::string_view s);

bool is_void_element(std::string_view name);
bool is_known_element(std::string_view name);
bool is_deprecated_element(std::string_view name);
/// Elements whose end tag may be omitted (p, li, td, ...).
bool has_optional_end_tag(std::string_view name);

/// Extracts the charset parameter from a Content-Type value.
std::optional<std::string> charset_from_content_type(std::string_view content_type);

}  // namespace seorank::html
