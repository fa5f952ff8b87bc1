// Python surface: dataset analysis, mining and the offline audit.

#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "seorank/audit.hpp"
#include "seorank/dataset.hpp"
#include "seorank/error.hpp"
#include "seorank/html.hpp"
#include "seorank/miner.hpp"
#include "seorank/pipeline.hpp"
#include "seorank/stats.hpp"

namespace py = pybind11;
using namespace seorank;

namespace {

Dataset load(const std::string& path) { return load_dataset_file(path); }

py::list impact(const std::string& path) {
  py::list out;
  for (const auto& r : stats::impact_table(load(path)).rows) {
    py::dict row;
    row["metric"] = std::string(to_string(r.metric));
    row["classification"] = std::string(stats::to_string(r.classification));
    row["log_applied"] = r.log_applied;
    row["impact"] = r.impact;
    row["pairs"] = r.pairs;
    out.append(row);
  }
  return out;
}

py::dict mine(const std::string& path, int bins, int features, double min_support, double min_confidence,
              std::size_t max_antecedent) {
  miner::MiningOptions opt;
  opt.bins = bins;
  opt.feature_k = features;
  opt.min_support_pct = min_support;
  opt.min_confidence_pct = min_confidence;
  opt.max_antecedent = max_antecedent;
  const auto report = miner::mine_dataset(load(path), opt);
  py::list feats, rules;
  for (auto id : report.features) feats.append(std::string(to_string(id)));
  for (const auto& r : report.rules) {
    py::dict d;
    d["antecedent"] = r.antecedent_text();
    d["consequent"] = r.consequent.render();
    d["confidence_pct"] = r.confidence_pct;
    d["support_pct"] = r.support_pct;
    d["match_count"] = r.match_count;
    d["antecedent_count"] = r.antecedent_count;
    rules.append(d);
  }
  py::dict out;
  out["features"] = feats;
  out["n"] = report.n;
  out["rules"] = rules;
  return out;
}

py::dict onpage(const std::string& html, const std::string& page_url) {
  const auto u = Url::parse(page_url);
  if (!u || !u->is_http()) throw ArgumentError("not an absolute http(s) URL: " + page_url);
  const auto m = extract_onpage(html::parse_html(html), *u);
  py::dict d;
  d["h1_count"] = m.h1_count;
  d["img_without_alt"] = m.img_without_alt;
  d["iframe_count"] = m.iframe_count;
  d["embed_object_count"] = m.embed_object_count;
  d["title_chars"] = m.title_chars;
  d["meta_description_chars"] = m.meta_description_chars;
  d["doctype"] = m.doctype;
  d["encoding_declared"] = m.encoding_declared;
  d["language_english"] = m.language_english;
  d["responsive"] = m.responsive;
  d["social_media"] = m.social_media;
  d["total_links"] = m.total_links;
  d["internal_links"] = m.internal_links;
  d["external_links"] = m.external_links;
  return d;
}

py::tuple cli(std::vector<std::string> args) {
  args.insert(args.begin(), "seo-rankminer");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code;
  {
    py::gil_scoped_release release;
    code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  }
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "SEO metric analysis and rank rule mining";

  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ArgumentError>(m, "ArgumentError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);
  py::register_exception<AnalysisError>(m, "AnalysisError", PyExc_ArithmeticError);

  m.def("metric_names", [] {
    std::vector<std::string> out;
    for (const auto& d : builtin_registry()) out.emplace_back(d.name);
    return out;
  });
  m.def("shift_log", [](const std::vector<double>& v, double shift) { return stats::shift_log(v, shift); },
        py::arg("values"), py::arg("shift"));
  m.def("impact_score",
        [](const std::vector<double>& x, const std::vector<double>& y) { return stats::impact_score(x, y); },
        py::arg("x"), py::arg("y"));
  m.def("reconstruct_counts", &miner::reconstruct_counts, py::arg("confidence_pct"), py::arg("support_pct"),
        py::arg("n"));
  m.def("impact_table", &impact, py::arg("dataset"));
  m.def("mine", &mine, py::arg("dataset"), py::arg("bins") = 5, py::arg("features") = 14,
        py::arg("min_support") = 5.0, py::arg("min_confidence") = 60.0, py::arg("max_antecedent") = 4);
  m.def("onpage_metrics", &onpage, py::arg("html"), py::arg("page_url"));
  m.def("run_cli", &cli, py::arg("args"), "Runs the seo-rankminer CLI; returns (exit_code, stdout, stderr).");
}
