#include <doctest.h>

#include <random>

#include "corpus.hpp"
#include "seorank/audit.hpp"
#include "seorank/css_lint.hpp"
#include "seorank/html.hpp"

using namespace seorank;

namespace {

html::Document parse(std::string_view s) { return html::parse_html(s); }

OnPageMetrics onpage(std::string_view s, const char* url = "https://a.edu/") {
  return extract_onpage(parse(s), *Url::parse(url));
}

}  // namespace

TEST_CASE("parse_html records doctype and language") {
  const auto doc = parse("<!DOCTYPE html><html lang=en><body>x</body></html>");
  CHECK(doc.has_doctype());
  REQUIRE(doc.first("html"));
  CHECK(doc.node(*doc.first("html")).attr("lang") == "en");
  CHECK_FALSE(parse("<html><body>x</body></html>").has_doctype());
}

TEST_CASE("parse_html recovers unclosed elements") {
  const auto doc = parse("<div><p>text");
  REQUIRE(doc.first("div"));
  REQUIRE(doc.first("p"));
  const auto p = *doc.first("p");
  CHECK(doc.node(p).parent == *doc.first("div"));
  CHECK(doc.text_content(p) == "text");
  CHECK(doc.issues().size() == 1);  // the div; <p> may omit its end tag
}

TEST_CASE("parse_html never fails on garbage") {
  std::mt19937 gen(7);
  const std::string alphabet = "<>/=\"' abcdivp!-&;#x\n";
  for (int i = 0; i < 200; ++i) {
    std::string s;
    for (int k = 0; k < 200; ++k) s.push_back(alphabet[gen() % alphabet.size()]);
    CHECK_NOTHROW(parse(s));
  }
}

TEST_CASE("parse_html details") {
  SUBCASE("entities") {
    CHECK(html::decode_entities("a &amp; b &lt;&#233;&#x263A;&nbsp;") == "a & b <é☺\xC2\xA0");
    CHECK(html::decode_entities("&bogus; & x") == "&bogus; & x");
  }
  SUBCASE("script content is raw text") {
    const auto doc = parse("<script>if (a < b) { x = '<a href=y>'; }</script><a href=z>z</a>");
    CHECK(doc.elements("a").size() == 1);
  }
  SUBCASE("implied end tags") {
    const auto doc = parse("<ul><li>a<li>b</ul><p>one<p>two<table><tr><td>1<td>2</table>");
    CHECK(doc.elements("li").size() == 2);
    CHECK(doc.node(doc.elements("li")[1]).parent == *doc.first("ul"));
    CHECK(doc.elements("p").size() == 2);
    CHECK(doc.elements("td").size() == 2);
    CHECK(doc.issues().empty());
  }
  SUBCASE("encoding declarations") {
    CHECK(parse("<meta charset=UTF-8>").declared_encoding() == "utf-8");
    CHECK(parse("<meta http-equiv=content-type content='text/html; charset=windows-1252'>").declared_encoding() ==
          "windows-1252");
    CHECK_FALSE(parse("<p>").declared_encoding());
    CHECK(html::charset_from_content_type("text/html; Charset=\"ISO-8859-1\"") == "iso-8859-1");
  }
  SUBCASE("latin-1 bytes are transcoded") {
    const auto doc = html::parse_html("<title>Z\xFCrich</title>", std::string("iso-8859-1"));
    CHECK(doc.text_content(*doc.first("title")) == "Zürich");
  }
  SUBCASE("base href") { CHECK(parse("<base href='https://b.org/'>").base_href() == "https://b.org/"); }
}

TEST_CASE("extract_onpage examples") {
  CHECK(onpage("<title>Harvard University</title>").title_chars == 18);
  const auto links = onpage(
      "<a href='https://a.edu/x'>1</a><a href='https://www.a.edu/y'>2</a><a href='https://b.com/'>3</a>"
      "<a href=''>e</a><a href='#top'>f</a><a href='javascript:go()'>j</a>");
  CHECK(links.internal_links == 2);
  CHECK(links.external_links == 1);
  CHECK(links.total_links == 3);
  CHECK(onpage("<img src=a><img src=b alt=''>").img_without_alt == 1);
  CHECK(onpage("<html lang='EN-us'>").language_english);
  CHECK_FALSE(onpage("<html lang='fr'>").language_english);
  CHECK(onpage("<meta name=viewport content='width=device-width'>").responsive);
}

TEST_CASE("audit corpus matches hand counts") {
  const auto corpus = testing::load_audit_corpus();
  REQUIRE(corpus.size() == 10);
  for (const auto& c : corpus) {
    CAPTURE(c.file);
    const auto got = extract_onpage(html::parse_html(c.html), *Url::parse(c.page_url));
    const auto d = testing::diff(got, c.expected);
    for (const auto& line : d) MESSAGE(line);
    CHECK(d.empty());
    CHECK(got.total_links == got.internal_links + got.external_links);
  }
}

TEST_CASE("total links decompose on generated documents") {
  std::mt19937 gen(2016);
  const char* hrefs[] = {"/a",        "b.html",         "https://a.edu/x", "https://www.a.edu/y", "https://sub.a.edu/",
                         "http://b.org/", "//c.net/z",   "#frag",           "",                    "javascript:x()",
                         "mailto:a@b", "https://facebook.com/a", "HTTP://A.EDU/", "?q=1",               "../up"};
  for (int round = 0; round < 300; ++round) {
    std::string doc = "<html><body>";
    const int n = static_cast<int>(gen() % 25);
    for (int i = 0; i < n; ++i) {
      doc += "<div><a href=\"";
      doc += hrefs[gen() % std::size(hrefs)];
      doc += gen() % 3 ? "\">x</a></div>" : "\">unclosed";
    }
    const auto m = onpage(doc, "https://www.a.edu/dir/page.html");
    CHECK(m.total_links == m.internal_links + m.external_links);
    CHECK(m.social_media <= m.external_links);
  }
}

TEST_CASE("lint_markup rules") {
  auto lint = [](std::string_view s, std::vector<std::string> sheets = {}) {
    return lint_markup(html::parse_html(s), sheets);
  };
  const std::string clean = "<!DOCTYPE html><html lang=en><head><title>t</title></head><body><p>x</p></body></html>";
  CHECK(lint(clean) == LintReport{});
  CHECK(lint("<html lang=en><div id=main></div><div id=main></div></html>").html_errors == 1);
  CHECK(lint("<html lang=en><font>hi</font></html>").html_warnings == 1);
  CHECK(lint("<html lang=en><div><span></div></html>").html_errors >= 1);
  CHECK(lint("<html lang=en></span></html>").html_errors == 1);
  CHECK(lint("<html lang=en><blink2>x</blink2></html>").html_errors == 1);
  CHECK(lint("<html lang=en><my-widget>x</my-widget><svg><path d=''/></svg></html>").html_errors == 0);
  CHECK(lint("<html lang=en><img src=a></html>").html_warnings == 1);
  CHECK(lint("<html><p>x</p></html>").html_warnings == 1);
  CHECK(lint("<html lang=en><p style='color: ;'>x</p></html>").css_errors == 1);
  CHECK(lint("<html lang=en><style>a { colr: red }</style></html>").css_warnings == 1);
  CHECK(lint("<html lang=en></html>", {"a { color: ; }"}).css_errors == 1);
}

TEST_CASE("lint counts are monotone under appended violations") {
  const std::string fragments[] = {"<font>x</font>", "<img src=q>", "<div id=dup></div>", "<bogus>x</bogus>",
                                   "<div>", "</em>", "<p style='x'>y</p>", "<style>a{colr:1}</style>"};
  std::mt19937 gen(11);
  for (int round = 0; round < 200; ++round) {
    std::string doc = "<html lang=en><body><div id=dup></div>";
    auto before = lint_markup(html::parse_html(doc));
    for (int k = 0; k < 6; ++k) {
      doc += fragments[gen() % std::size(fragments)];
      const auto after = lint_markup(html::parse_html(doc));
      CHECK(after.html_errors >= before.html_errors);
      CHECK(after.html_warnings >= before.html_warnings);
      CHECK(after.css_errors >= before.css_errors);
      CHECK(after.css_warnings >= before.css_warnings);
      before = after;
    }
  }
}

TEST_CASE("css lint") {
  using css::lint_declarations;
  using css::lint_stylesheet;
  CHECK(lint_declarations("color: ;").errors == 1);
  CHECK(lint_declarations("color: red; margin: 0 auto !important").errors == 0);
  CHECK(lint_declarations("color red").errors == 1);
  CHECK(lint_declarations(": red").errors == 1);
  CHECK(lint_declarations("width: calc(1px + (2px)").errors == 1);
  CHECK(lint_declarations("colr: red").warnings == 1);
  CHECK(lint_declarations("-webkit-transition: none").warnings == 1);
  CHECK(lint_declarations("--brand: #fff").errors + lint_declarations("--brand: #fff").warnings == 0);

  CHECK(lint_stylesheet("a { color: red; } b { margin: 0 }").errors == 0);
  CHECK(lint_stylesheet("a { color: red; ").errors == 1);
  CHECK(lint_stylesheet("a { color: red; } }").errors == 1);
  CHECK(lint_stylesheet("/* open comment").errors == 1);
  CHECK(lint_stylesheet("{ color: red }").errors == 1);
  CHECK(lint_stylesheet("@media (max-width: 10px) { a { colr: red } }").warnings == 1);
  CHECK(lint_stylesheet("@import url(x.css); @font-face { font-family: x; src: url(a) }").errors == 0);
  CHECK(lint_stylesheet("@frobnicate x { a { color: red } }").warnings == 1);
  CHECK(lint_stylesheet("a { background: url('x;y.png') }").errors == 0);
}
