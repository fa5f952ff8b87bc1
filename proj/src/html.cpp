#include "seorank/html.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <set>

#include "seorank/text.hpp"

namespace seorank::html {
namespace {

constexpr std::array kVoid = {"area", "base", "br", "col", "embed", "hr", "img", "input", "keygen",
                              "link", "meta", "param", "source", "track", "wbr"};

constexpr std::array kOptionalEnd = {"html", "head", "body", "p", "li", "dt", "dd", "option", "optgroup",
                                     "tr", "td", "th", "thead", "tbody", "tfoot", "colgroup", "rb", "rt",
                                     "rtc", "rp"};

constexpr std::array kDeprecated = {"acronym", "applet", "basefont", "bgsound", "big", "blink", "center",
                                    "dir", "font", "frame", "frameset", "isindex", "marquee", "nobr",
                                    "noframes", "strike", "tt", "xmp", "listing", "plaintext", "spacer"};

constexpr std::array kKnown = {
    "a", "abbr", "address", "area", "article", "aside", "audio", "b", "base", "bdi", "bdo", "blockquote",
    "body", "br", "button", "canvas", "caption", "cite", "code", "col", "colgroup", "data", "datalist",
    "dd", "del", "details", "dfn", "dialog", "div", "dl", "dt", "em", "embed", "fieldset", "figcaption",
    "figure", "footer", "form", "h1", "h2", "h3", "h4", "h5", "h6", "head", "header", "hgroup", "hr",
    "html", "i", "iframe", "img", "input", "ins", "kbd", "label", "legend", "li", "link", "main", "map",
    "mark", "menu", "meta", "meter", "nav", "noscript", "object", "ol", "optgroup", "option", "output",
    "p", "param", "picture", "pre", "progress", "q", "rb", "rp", "rt", "rtc", "ruby", "s", "samp",
    "script", "search", "section", "select", "slot", "small", "source", "span", "strong", "style", "sub",
    "summary", "sup", "table", "tbody", "td", "template", "textarea", "tfoot", "th", "thead", "time",
    "title", "tr", "track", "u", "ul", "var", "video", "wbr", "svg", "math", "keygen"};

// Start tags of these elements implicitly close an open <p> at the top of the stack.
constexpr std::array kClosesP = {"address", "article", "aside", "blockquote", "details", "dialog", "div",
                                 "dl", "fieldset", "figcaption", "figure", "footer", "form", "h1", "h2",
                                 "h3", "h4", "h5", "h6", "header", "hgroup", "hr", "main", "menu", "nav",
                                 "ol", "p", "pre", "section", "table", "ul"};

template <std::size_t N>
bool contains(const std::array<const char*, N>& set, std::string_view name) {
  return std::any_of(set.begin(), set.end(), [&](const char* s) { return name == s; });
}

struct NamedEntity {
  const char* name;
  const char* utf8;
};

constexpr std::array<NamedEntity, 32> kEntities{{
    {"amp", "&"},       {"lt", "<"},        {"gt", ">"},        {"quot", "\""},     {"apos", "'"},
    {"nbsp", "\xC2\xA0"}, {"copy", "\xC2\xA9"}, {"reg", "\xC2\xAE"}, {"trade", "\xE2\x84\xA2"},
    {"ndash", "\xE2\x80\x93"}, {"mdash", "\xE2\x80\x94"}, {"hellip", "\xE2\x80\xA6"},
    {"laquo", "\xC2\xAB"}, {"raquo", "\xC2\xBB"}, {"lsquo", "\xE2\x80\x98"}, {"rsquo", "\xE2\x80\x99"},
    {"ldquo", "\xE2\x80\x9C"}, {"rdquo", "\xE2\x80\x9D"}, {"bull", "\xE2\x80\xA2"}, {"middot", "\xC2\xB7"},
    {"eacute", "\xC3\xA9"}, {"egrave", "\xC3\xA8"}, {"aacute", "\xC3\xA1"}, {"oacute", "\xC3\xB3"},
    {"uuml", "\xC3\xBC"}, {"ouml", "\xC3\xB6"}, {"auml", "\xC3\xA4"}, {"szlig", "\xC3\x9F"},
    {"ccedil", "\xC3\xA7"}, {"ntilde", "\xC3\xB1"}, {"euro", "\xE2\x82\xAC"}, {"pound", "\xC2\xA3"},
}};

void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp == 0 || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) cp = 0xFFFD;
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f'; }
bool is_alpha(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }

std::string latin1_to_utf8(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) append_utf8(out, static_cast<unsigned char>(c));
  return out;
}

}  // namespace

bool is_void_element(std::string_view name) { return contains(kVoid, name); }
bool is_known_element(std::string_view name) { return contains(kKnown, name) || contains(kDeprecated, name); }
bool is_deprecated_element(std::string_view name) { return contains(kDeprecated, name); }
bool has_optional_end_tag(std::string_view name) { return contains(kOptionalEnd, name); }

std::string decode_entities(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    if (s[i] != '&') {
      out.push_back(s[i++]);
      continue;
    }
    const auto semi = s.find(';', i + 1);
    if (semi == std::string_view::npos || semi - i > 12) {
      out.push_back(s[i++]);
      continue;
    }
    const auto ref = s.substr(i + 1, semi - i - 1);
    bool done = false;
    if (ref.size() >= 2 && ref[0] == '#') {
      std::uint32_t cp = 0;
      bool ok = true;
      const bool hex = ref[1] == 'x' || ref[1] == 'X';
      const auto digits = ref.substr(hex ? 2 : 1);
      if (digits.empty()) ok = false;
      for (char c : digits) {
        const int d = hex ? (std::isxdigit(static_cast<unsigned char>(c))
                                 ? (std::isdigit(static_cast<unsigned char>(c)) ? c - '0' : (std::tolower(c) - 'a' + 10))
                                 : -1)
                          : (std::isdigit(static_cast<unsigned char>(c)) ? c - '0' : -1);
        if (d < 0 || cp > 0x10FFFF) {
          ok = false;
          break;
        }
        cp = cp * (hex ? 16 : 10) + static_cast<std::uint32_t>(d);
      }
      if (ok) {
        append_utf8(out, cp);
        done = true;
      }
    } else {
      for (const auto& e : kEntities) {
        if (ref == e.name) {
          out += e.utf8;
          done = true;
          break;
        }
      }
    }
    if (done) {
      i = semi + 1;
    } else {
      out.push_back(s[i++]);
    }
  }
  return out;
}

std::optional<std::string> charset_from_content_type(std::string_view content_type) {
  const auto lower = text::to_lower(content_type);
  const auto pos = lower.find("charset=");
  if (pos == std::string::npos) return std::nullopt;
  auto value = std::string_view(lower).substr(pos + 8);
  value = value.substr(0, value.find_first_of(";, \t"));
  if (!value.empty() && (value.front() == '"' || value.front() == '\'')) value.remove_prefix(1);
  if (!value.empty() && (value.back() == '"' || value.back() == '\'')) value.remove_suffix(1);
  if (value.empty()) return std::nullopt;
  return std::string(value);
}

std::optional<std::string_view> Node::attr(std::string_view name) const {
  for (const auto& [k, v] : attributes)
    if (k == name) return std::string_view(v);
  return std::nullopt;
}

std::vector<NodeIndex> Document::elements(std::string_view name) const {
  std::vector<NodeIndex> out;
  for (NodeIndex i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].type == Node::Type::element && nodes_[i].name == name) out.push_back(i);
  }
  return out;
}

std::optional<NodeIndex> Document::first(std::string_view name) const {
  for (NodeIndex i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].type == Node::Type::element && nodes_[i].name == name) return i;
  }
  return std::nullopt;
}

std::string Document::text_content(NodeIndex i) const {
  const auto& n = nodes_[i];
  if (n.type == Node::Type::text) return n.text;
  std::string out;
  for (auto c : n.children) {
    if (nodes_[c].type != Node::Type::comment) out += text_content(c);
  }
  return out;
}

class TreeBuilder {
 public:
  TreeBuilder(std::string_view src, Document& doc) : src_(src), doc_(doc) {
    Node root;
    root.type = Node::Type::document;
    doc_.nodes_.push_back(std::move(root));
    stack_.push_back(0);
  }

  void run() {
    while (pos_ < src_.size()) {
      if (src_[pos_] == '<') {
        tag_open();
      } else {
        const auto next = src_.find('<', pos_);
        const auto end = next == std::string_view::npos ? src_.size() : next;
        add_text(decode_entities(src_.substr(pos_, end - pos_)));
        pos_ = end;
      }
    }
    for (std::size_t i = stack_.size(); i-- > 1;) {
      const auto& name = doc_.nodes_[stack_[i]].name;
      if (!has_optional_end_tag(name)) doc_.issues_.push_back({ParseIssue::Kind::unclosed_element, name});
    }
  }

 private:
  NodeIndex current() const { return stack_.back(); }
  bool in_foreign() const { return doc_.nodes_[current()].foreign; }

  NodeIndex append(Node n) {
    n.parent = current();
    doc_.nodes_.push_back(std::move(n));
    const auto idx = doc_.nodes_.size() - 1;
    doc_.nodes_[doc_.nodes_[idx].parent].children.push_back(idx);
    return idx;
  }

  void add_text(std::string s) {
    if (s.empty()) return;
    auto& parent = doc_.nodes_[current()];
    if (!parent.children.empty()) {
      auto& last = doc_.nodes_[parent.children.back()];
      if (last.type == Node::Type::text) {
        last.text += s;
        return;
      }
    }
    Node t;
    t.type = Node::Type::text;
    t.text = std::move(s);
    append(std::move(t));
  }

  void add_comment(std::string_view s) {
    Node c;
    c.type = Node::Type::comment;
    c.text = std::string(s);
    append(std::move(c));
  }

  void tag_open() {
    const auto rest = src_.substr(pos_);
    if (rest.starts_with("<!--")) {
      const auto end = src_.find("-->", pos_ + 4);
      if (end == std::string_view::npos) {
        add_comment(src_.substr(pos_ + 4));
        pos_ = src_.size();
      } else {
        add_comment(src_.substr(pos_ + 4, end - pos_ - 4));
        pos_ = end + 3;
      }
      return;
    }
    if (rest.starts_with("<!") || rest.starts_with("<?")) {
      const auto end = src_.find('>', pos_);
      const auto body = src_.substr(pos_ + 2, (end == std::string_view::npos ? src_.size() : end) - pos_ - 2);
      if (text::starts_with_icase(body, "doctype")) {
        if (!doc_.doctype_) doc_.doctype_ = std::string(text::trim(body.substr(7)));
      } else {
        add_comment(body);
      }
      pos_ = end == std::string_view::npos ? src_.size() : end + 1;
      return;
    }
    if (rest.size() >= 3 && rest[1] == '/' && is_alpha(rest[2])) {
      end_tag();
      return;
    }
    if (rest.size() >= 2 && is_alpha(rest[1])) {
      start_tag();
      return;
    }
    add_text("<");
    ++pos_;
  }

  std::string read_name() {
    std::string name;
    while (pos_ < src_.size() && !is_space(src_[pos_]) && src_[pos_] != '>' && src_[pos_] != '/') {
      name.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(src_[pos_]))));
      ++pos_;
    }
    return name;
  }

  void skip_space() {
    while (pos_ < src_.size() && is_space(src_[pos_])) ++pos_;
  }

  void end_tag() {
    pos_ += 2;
    const auto name = read_name();
    const auto close = src_.find('>', pos_);
    pos_ = close == std::string_view::npos ? src_.size() : close + 1;
    close_element(name);
  }

  void close_element(const std::string& name) {
    std::size_t found = 0;
    for (std::size_t i = stack_.size(); i-- > 1;) {
      if (doc_.nodes_[stack_[i]].name == name) {
        found = i;
        break;
      }
    }
    if (found == 0) {
      doc_.issues_.push_back({ParseIssue::Kind::stray_end_tag, name});
      return;
    }
    while (stack_.size() > found + 1) {
      const auto& inner = doc_.nodes_[stack_.back()].name;
      if (!has_optional_end_tag(inner)) doc_.issues_.push_back({ParseIssue::Kind::misnested_tag, inner});
      stack_.pop_back();
    }
    stack_.pop_back();
  }

  // Pops the innermost open element named in `targets`, provided no element
  // named in `boundaries` is open above it. Used for implied end tags.
  template <std::size_t N, std::size_t M>
  void close_implied(const std::array<const char*, N>& targets, const std::array<const char*, M>& boundaries) {
    for (std::size_t i = stack_.size(); i-- > 1;) {
      const auto& n = doc_.nodes_[stack_[i]].name;
      if (contains(boundaries, n)) return;
      if (contains(targets, n)) {
        stack_.resize(i);
        return;
      }
    }
  }

  void implied_closes(const std::string& name) {
    if (in_foreign()) return;
    if (contains(kClosesP, name) && doc_.nodes_[current()].name == "p") stack_.pop_back();
    if (name == "li") {
      close_implied(std::array{"li"}, std::array{"ul", "ol", "menu"});
    } else if (name == "dt" || name == "dd") {
      close_implied(std::array{"dt", "dd"}, std::array{"dl"});
    } else if (name == "tr") {
      close_implied(std::array{"tr"}, std::array{"table", "thead", "tbody", "tfoot"});
    } else if (name == "td" || name == "th") {
      close_implied(std::array{"td", "th"}, std::array{"tr", "table"});
    } else if (name == "thead" || name == "tbody" || name == "tfoot") {
      close_implied(std::array{"thead", "tbody", "tfoot"}, std::array{"table"});
    } else if (name == "option") {
      close_implied(std::array{"option"}, std::array{"select", "datalist", "optgroup"});
    } else if (name == "optgroup") {
      close_implied(std::array{"optgroup", "option"}, std::array{"select"});
    } else if (name == "body") {
      close_implied(std::array{"head"}, std::array{"html"});
    }
  }

  void start_tag() {
    ++pos_;
    Node el;
    el.type = Node::Type::element;
    el.name = read_name();
    bool self_closing = false;

    while (pos_ < src_.size()) {
      skip_space();
      if (pos_ >= src_.size()) break;
      if (src_[pos_] == '>') {
        ++pos_;
        break;
      }
      if (src_[pos_] == '/') {
        ++pos_;
        if (pos_ < src_.size() && src_[pos_] == '>') {
          self_closing = true;
          ++pos_;
          break;
        }
        continue;
      }
      std::string key;
      while (pos_ < src_.size() && !is_space(src_[pos_]) && src_[pos_] != '=' && src_[pos_] != '>' &&
             !(src_[pos_] == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '>')) {
        key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(src_[pos_]))));
        ++pos_;
      }
      skip_space();
      std::string value;
      if (pos_ < src_.size() && src_[pos_] == '=') {
        ++pos_;
        skip_space();
        if (pos_ < src_.size() && (src_[pos_] == '"' || src_[pos_] == '\'')) {
          const char q = src_[pos_++];
          const auto end = src_.find(q, pos_);
          const auto stop = end == std::string_view::npos ? src_.size() : end;
          value = decode_entities(src_.substr(pos_, stop - pos_));
          pos_ = end == std::string_view::npos ? src_.size() : end + 1;
        } else {
          const auto start = pos_;
          while (pos_ < src_.size() && !is_space(src_[pos_]) && src_[pos_] != '>') ++pos_;
          value = decode_entities(src_.substr(start, pos_ - start));
        }
      }
      if (key.empty()) {
        ++pos_;
        continue;
      }
      if (!el.has_attr(key)) el.attributes.emplace_back(std::move(key), std::move(value));
    }

    implied_closes(el.name);
    el.foreign = in_foreign() || el.name == "svg" || el.name == "math";
    note_metadata(el);

    const auto name = el.name;
    const bool foreign = el.foreign;
    const auto idx = append(std::move(el));
    if (is_void_element(name) && !foreign) return;
    if (self_closing && foreign) return;
    stack_.push_back(idx);

    if (!foreign && (name == "script" || name == "style" || name == "title" || name == "textarea")) {
      raw_text(name, name == "title" || name == "textarea");
    }
  }

  void raw_text(const std::string& name, bool decode) {
    const std::string closer = "</" + name;
    std::size_t end = pos_;
    while (true) {
      end = src_.find("</", end);
      if (end == std::string_view::npos) break;
      if (text::starts_with_icase(src_.substr(end), closer)) {
        const auto after = end + closer.size();
        if (after >= src_.size() || is_space(src_[after]) || src_[after] == '>' || src_[after] == '/') break;
      }
      end += 2;
    }
    const auto stop = end == std::string_view::npos ? src_.size() : end;
    const auto content = src_.substr(pos_, stop - pos_);
    add_text(decode ? decode_entities(content) : std::string(content));
    pos_ = stop;
    if (end != std::string_view::npos) {
      pos_ += closer.size();
      const auto gt = src_.find('>', pos_);
      pos_ = gt == std::string_view::npos ? src_.size() : gt + 1;
      stack_.pop_back();
    }
  }

  void note_metadata(const Node& el) {
    if (el.name == "meta") {
      if (auto cs = el.attr("charset"); cs && !doc_.declared_encoding_) {
        const auto v = text::to_lower(text::trim(*cs));
        if (!v.empty()) doc_.declared_encoding_ = v;
      }
      if (auto he = el.attr("http-equiv"); he && text::equals_icase(text::trim(*he), "content-type")) {
        if (auto content = el.attr("content"); content && !doc_.declared_encoding_) {
          doc_.declared_encoding_ = charset_from_content_type(*content);
        }
      }
    } else if (el.name == "base" && !doc_.base_href_) {
      if (auto href = el.attr("href")) doc_.base_href_ = std::string(*href);
    }
  }

  std::string_view src_;
  Document& doc_;
  std::size_t pos_ = 0;
  std::vector<NodeIndex> stack_;
};

Document parse_html(std::string_view bytes, std::optional<std::string> declared_encoding_hint) {
  if (bytes.starts_with("\xEF\xBB\xBF")) bytes.remove_prefix(3);

  // Only Latin-1 family encodings are transcoded; everything else is read as UTF-8.
  auto encoding = declared_encoding_hint;
  std::string transcoded;
  const auto is_latin1 = [](const std::string& e) {
    return e == "iso-8859-1" || e == "latin1" || e == "windows-1252" || e == "cp1252";
  };
  if (encoding) *encoding = text::to_lower(*encoding);

  Document doc;
  doc.encoding_hint_ = encoding;
  TreeBuilder(bytes, doc).run();

  const auto effective = encoding ? encoding : doc.declared_encoding();
  if (effective && is_latin1(*effective)) {
    transcoded = latin1_to_utf8(bytes);
    Document redo;
    redo.encoding_hint_ = encoding;
    TreeBuilder(transcoded, redo).run();
    return redo;
  }
  return doc;
}

}  // namespace seorank::html
