#include "seorank/pipeline.hpp"

#include <charconv>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "seorank/fetch.hpp"
#include "seorank/html.hpp"
#include "seorank/stats.hpp"
#include "seorank/text.hpp"

namespace seorank {
namespace {

constexpr std::size_t kMaxStylesheets = 10;

void note(std::vector<std::string>& notes, MetricId id, const std::exception& e) {
  notes.push_back(std::string(to_string(id)) + ": " + e.what());
}

// Runs one boolean site probe; a failure leaves the metric missing.
template <typename F>
void probe(MetricValues& v, std::vector<std::string>& notes, MetricId id, F&& f) {
  try {
    v[index_of(id)] = f() ? 1.0 : 0.0;
  } catch (const Error& e) {
    note(notes, id, e);
  }
}

std::string host_of(const std::string& domain) {
  if (auto u = Url::parse(domain)) return u->host;
  const auto colon = domain.rfind(':');
  return text::to_lower(colon == std::string::npos ? domain : domain.substr(0, colon));
}

}  // namespace

std::shared_ptr<Provider> build_provider(const RunConfig& config) {
  std::vector<std::shared_ptr<const Provider>> chain;
  for (const auto& path : config.fixtures) chain.push_back(FixtureProvider::from_file(path));
  if (!config.search_fixture.empty()) {
    chain.push_back(std::make_shared<SearchProvider>(
        FixtureSearchClient::from_json(text::read_file(config.search_fixture))));
  }
  if (chain.empty()) return nullptr;
  return composite(std::move(chain));
}

Measurement measure_url(const std::string& url, const RunConfig& config) {
  const auto& policy = config.fetch;
  const auto home = fetch_page(url, policy);
  Measurement m;
  m.final_url = home.final_url;
  const auto page = *Url::parse(home.final_url);
  auto& v = m.values;
  if (home.status >= 400) m.notes.push_back("home page answered status " + std::to_string(home.status));
  if (home.truncated) m.notes.push_back("home page body truncated at " + std::to_string(policy.max_body_kb) + " KB");

  const auto doc = html::parse_html(home.body, html::charset_from_content_type(home.header("content-type")));
  store(extract_onpage(doc, page, config.social_domains), v);

  std::vector<std::string> sheets;
  const auto sheet_urls = extract_stylesheets(doc, page);
  for (std::size_t i = 0; i < sheet_urls.size() && i < kMaxStylesheets; ++i) {
    try {
      auto r = fetch_page(sheet_urls[i], policy);
      if (r.status == 200) sheets.push_back(std::move(r.body));
    } catch (const Error& e) {
      m.notes.push_back("stylesheet " + sheet_urls[i] + ": " + e.what());
    }
  }
  store(lint_markup(doc, sheets), v);

  const auto fm = fetch_metrics(home, extract_subresources(doc, page));
  v[index_of(MetricId::page_size_kb)] = fm.page_size_kb;
  v[index_of(MetricId::load_time_ms)] = std::round(fm.load_time_ms);
  v[index_of(MetricId::request_count)] = static_cast<double>(fm.request_count);
  v[index_of(MetricId::gzip)] = fm.gzip ? 1 : 0;
  v[index_of(MetricId::security)] = fm.security ? 1 : 0;

  const auto origin = page.origin();
  probe(v, m.notes, MetricId::robots_txt, [&] { return check_robots(origin, policy); });
  probe(v, m.notes, MetricId::sitemap, [&] { return check_sitemap(origin, policy); });
  probe(v, m.notes, MetricId::page_404, [&] { return check_custom_404(origin, policy); });

  const auto links = probe_broken_links(extract_links(doc, page), policy);
  v[index_of(MetricId::broken_links)] = static_cast<double>(links.broken);
  return m;
}

AuditReport audit_url(const std::string& url, const RunConfig& config, const Provider* provider,
                      std::optional<std::string> domain) {
  AuditReport report;
  report.url = url;
  report.fetched_at = utc_timestamp();
  auto m = measure_url(url, config);
  if (!domain) domain = std::string(registrable_host(Url::parse(m.final_url)->host));
  auto c = collect(*domain, provider, builtin_registry(), m.values);
  report.values = c.values;
  report.provenance = c.provenance;
  report.notes = std::move(m.notes);
  return report;
}

std::vector<SiteEntry> parse_sites(std::string_view text) {
  std::vector<SiteEntry> out;
  std::size_t line_no = 0;
  for (auto line : text::split_lines(text)) {
    ++line_no;
    line = text::trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto fields = text::split_csv_record(line);
    if (out.empty() && line_no == 1 && text::equals_icase(text::trim(fields[0]), "domain")) continue;
    const auto where = "sites file line " + std::to_string(line_no);
    if (fields.size() != 2) throw ParseError(where + ": expected \"domain,rank\"");
    SiteEntry e;
    e.domain = std::string(text::trim(fields[0]));
    const auto rank = text::trim(fields[1]);
    auto [p, ec] = std::from_chars(rank.data(), rank.data() + rank.size(), e.rank);
    if (ec != std::errc{} || p != rank.data() + rank.size()) throw ParseError(where + ": rank is not an integer");
    if (e.domain.empty()) throw ParseError(where + ": empty domain");
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<std::string> home_candidates(const std::string& domain) {
  if (domain.find("://") != std::string::npos) return {domain};
  return {"https://" + domain + "/", "http://" + domain + "/"};
}

CollectResult collect_sites(const std::vector<SiteEntry>& sites, const RunConfig& config, const Provider* provider) {
  CollectResult out;
  for (const auto& site : sites) {
    SiteRecord rec;
    rec.domain = site.domain.find("://") != std::string::npos ? Url::parse(site.domain).value_or(Url{}).authority()
                                                               : site.domain;
    rec.webometric_rank = site.rank;
    MetricValues measured{};
    std::string failure;
    for (const auto& url : home_candidates(site.domain)) {
      try {
        auto m = measure_url(url, config);
        measured = m.values;
        for (auto& n : m.notes) out.notes.push_back(rec.domain + ": " + n);
        failure.clear();
        break;
      } catch (const Error& e) {
        failure = e.what();
      }
    }
    if (!failure.empty()) out.notes.push_back(rec.domain + ": unreachable, measured metrics missing (" + failure + ")");
    const auto lookup = std::string(registrable_host(host_of(site.domain)));
    rec.values = collect(lookup, provider, builtin_registry(), measured).values;
    out.dataset.records.push_back(std::move(rec));
  }
  return out;
}

namespace {

struct Streams {
  std::ostream& out;
  std::ostream& err;
};

void emit(const Streams& s, const std::string& path, const std::string& contents) {
  if (path.empty() || path == "-") {
    s.out << contents;
  } else {
    text::write_file(path, contents);
  }
}

// Validation failures are data errors: list them and report exit code 1.
bool report_violations(const Streams& s, const Dataset& d) {
  const auto violations = validate_dataset(d);
  for (const auto& v : violations) {
    s.err << "invalid: record " << v.record + 1 << " (" << v.domain << "): " << v.message << "\n";
  }
  return !violations.empty();
}

std::string header_line(bool timestamp) {
  return timestamp ? "<!-- generated " + utc_timestamp() + " -->\n" : std::string{};
}

std::string join_ids(const std::vector<MetricId>& ids) {
  std::string s;
  for (auto id : ids) {
    if (!s.empty()) s += ", ";
    s += to_string(id);
  }
  return s;
}

std::string mining_markdown(const miner::MiningReport& r, const miner::MiningOptions& o, bool timestamp) {
  std::ostringstream md;
  md << header_line(timestamp);
  md << "# Association rules\n\n";
  md << "Records: " << r.n << ". Features (" << r.features.size() << "): " << join_ids(r.features) << ".\n\n";
  md << "Binning: " << o.bins << (o.method == miner::BinningMethod::quantile ? " quantile" : " equal-width")
     << " bins. Minimum support " << text::format_trimmed(o.min_support_pct, 2) << "%, minimum confidence "
     << text::format_trimmed(o.min_confidence_pct, 2) << "%.\n\n";
  md << "Frequent itemsets: " << r.frequent_itemsets << ". Rules: " << r.rules.size() << ".\n\n";
  for (const auto& n : r.notices) md << "> " << n << "\n\n";
  md << "## Bin edges\n\n| Attribute | Edges |\n|---|---|\n";
  for (const auto& [attr, edges] : r.scheme.all()) {
    md << "| " << attr.name() << " | ";
    for (std::size_t i = 0; i < edges.size(); ++i) md << (i ? ", " : "") << text::format_trimmed(edges[i], 2);
    md << " |\n";
  }
  md << "\n## Top " << o.top_n << " rules by confidence\n\n" << miner::rules_markdown(r.by_confidence);
  md << "\n## Top " << o.top_n << " rules by support\n\n" << miner::rules_markdown(r.by_support);
  return md.str();
}

template <typename T>
void apply(std::optional<T>& flag, T& target) {
  if (flag) target = *flag;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  const Streams s{out, err};
  CLI::App app{"SEO metric extraction and rank association mining", "seo-rankminer"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "TOML config file (default: $SEO_RANKMINER_CONFIG)");

  // Analysis flags shared by impact and mine.
  std::optional<double> log_shift, max_skew, max_kurt;
  auto analysis_flags = [&](CLI::App* sub) {
    sub->add_option("--log-shift", log_shift, "Added before log10 when a series contains zero");
    sub->add_option("--max-skew", max_skew, "Normality screen |skewness| bound");
    sub->add_option("--max-kurtosis", max_kurt, "Normality screen |excess kurtosis| bound");
  };

  auto* audit = app.add_subcommand("audit", "Audit one URL and print the 38-metric JSON report");
  std::string audit_url_arg, audit_out;
  std::vector<std::string> audit_fixtures;
  audit->add_option("url", audit_url_arg, "Absolute http(s) URL")->required();
  audit->add_option("--fixtures", audit_fixtures, "Provider fixture JSON files, queried in order");
  audit->add_option("-o,--output", audit_out, "Write JSON here instead of stdout");

  auto* coll = app.add_subcommand("collect", "Audit every site of a sites file into a dataset CSV");
  std::string sites_path, collect_out;
  std::vector<std::string> collect_fixtures;
  coll->add_option("--sites", sites_path, "File of \"domain,rank\" lines")->required();
  coll->add_option("--fixtures", collect_fixtures, "Provider fixture JSON files, queried in order");
  coll->add_option("-o,--output", collect_out, "Dataset CSV to write")->required();

  auto* impact = app.add_subcommand("impact", "Impact table of every metric against rank");
  std::string impact_csv, impact_out, impact_table_csv_path, scatter_metric, scatter_out;
  bool impact_no_ts = false;
  impact->add_option("dataset", impact_csv, "Dataset CSV")->required();
  impact->add_option("-o,--output", impact_out, "Write the Markdown table here instead of stdout");
  impact->add_option("--csv", impact_table_csv_path, "Also write the table as CSV");
  impact->add_option("--scatter", scatter_metric, "Export the (transformed value, rank) points of a metric");
  impact->add_option("--scatter-out", scatter_out, "Scatter CSV path (default: stdout, replacing the table)");
  impact->add_flag("--no-timestamp", impact_no_ts, "Omit the generated-at header line");
  analysis_flags(impact);

  auto* mine = app.add_subcommand("mine", "Feature selection, binning and Apriori rules against rank");
  std::string mine_csv, mine_out, rules_csv_path, method;
  std::optional<int> bins, features;
  std::optional<double> min_support, min_conf;
  std::optional<std::size_t> top, max_antecedent;
  bool mine_no_ts = false, missing_items = false;
  mine->add_option("dataset", mine_csv, "Dataset CSV")->required();
  mine->add_option("--bins", bins, "Bins per attribute (default 5)");
  mine->add_option("--method", method, "Binning method")->check(CLI::IsMember({"equal-width", "quantile"}));
  mine->add_option("--features", features, "Top-k metrics before binary exclusion (default 14)");
  mine->add_option("--min-support", min_support, "Minimum support percent (default 5)");
  mine->add_option("--min-confidence", min_conf, "Minimum confidence percent (default 60)");
  mine->add_option("--max-antecedent", max_antecedent, "Maximum conditions per rule (default 4)");
  mine->add_option("--top", top, "Rules per ranking table (default 30)");
  mine->add_flag("--missing-as-item", missing_items, "Mine missing values as items");
  mine->add_option("-o,--output", mine_out, "Write the Markdown report here instead of stdout");
  mine->add_option("--rules-csv", rules_csv_path, "Write every derived rule as CSV");
  mine->add_flag("--no-timestamp", mine_no_ts, "Omit the generated-at header line");
  analysis_flags(mine);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  RunConfig config;
  try {
    config = config_path.empty() ? load_default_config() : load_config_file(config_path);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  auto& a = config.analysis();
  apply(log_shift, a.log_shift);
  apply(max_skew, a.thresholds.max_abs_skewness);
  apply(max_kurt, a.thresholds.max_abs_excess_kurtosis);

  try {
    if (*audit) {
      const auto u = Url::parse(audit_url_arg);
      if (!u || !u->is_http()) {
        err << "error: not an absolute http(s) URL: " << audit_url_arg << "\n";
        return 2;
      }
      if (!audit_fixtures.empty()) config.fixtures = audit_fixtures;
      const auto provider = build_provider(config);
      AuditReport report;
      try {
        report = audit_url(audit_url_arg, config, provider.get());
      } catch (const FetchError& e) {
        err << "error: site unreachable: " << e.what() << "\n";
        return 1;
      }
      for (const auto& n : report.notes) err << "note: " << n << "\n";
      emit(s, audit_out, report.to_json());
      return 0;
    }

    if (*coll) {
      if (!collect_fixtures.empty()) config.fixtures = collect_fixtures;
      const auto sites = parse_sites(text::read_file(sites_path));
      Dataset skeleton;
      for (const auto& site : sites) skeleton.records.push_back(SiteRecord{site.domain, site.rank, {}});
      if (report_violations(s, skeleton)) return 1;
      const auto provider = build_provider(config);
      auto result = collect_sites(sites, config, provider.get());
      for (const auto& n : result.notes) err << "note: " << n << "\n";
      save_dataset_file(result.dataset, collect_out);
      out << "wrote " << result.dataset.size() << " records to " << collect_out << "\n";
      return report_violations(s, result.dataset) ? 1 : 0;
    }

    if (*impact) {
      const auto d = load_dataset_file(impact_csv);
      if (d.empty()) {
        err << "error: dataset has no records\n";
        return 1;
      }
      if (report_violations(s, d)) return 1;
      const auto table = stats::impact_table(d, a);
      if (!impact_table_csv_path.empty()) text::write_file(impact_table_csv_path, stats::impact_table_csv(table));
      const auto markdown = header_line(!impact_no_ts) + stats::impact_table_markdown(table);
      if (!scatter_metric.empty()) {
        const auto id = parse_metric_id(scatter_metric);
        if (!id) {
          err << "error: unknown metric: " << scatter_metric << "\n";
          return 2;
        }
        const auto points = stats::scatter_export(d, *id, a);
        if (scatter_out.empty()) {
          emit(s, impact_out.empty() ? "" : impact_out, points);
          return 0;
        }
        text::write_file(scatter_out, points);
      }
      emit(s, impact_out, markdown);
      return 0;
    }

    if (*mine) {
      auto& m = config.mining;
      apply(bins, m.bins);
      apply(features, m.feature_k);
      apply(min_support, m.min_support_pct);
      apply(min_conf, m.min_confidence_pct);
      apply(top, m.top_n);
      apply(max_antecedent, m.max_antecedent);
      if (!method.empty()) m.method = method == "quantile" ? miner::BinningMethod::quantile : miner::BinningMethod::equal_width;
      if (missing_items) m.missing_as_item = true;
      if (m.bins < 2) {
        err << "error: --bins must be at least 2\n";
        return 2;
      }
      if (!(m.min_support_pct > 0 && m.min_support_pct <= 100) || !(m.min_confidence_pct >= 0 && m.min_confidence_pct <= 100)) {
        err << "error: support must be in (0,100] and confidence in [0,100]\n";
        return 2;
      }
      if (m.feature_k < 1) {
        err << "error: --features must be at least 1\n";
        return 2;
      }

      const auto d = load_dataset_file(mine_csv);
      if (report_violations(s, d)) return 1;
      if (d.size() < 3) {
        err << "error: mining needs at least 3 records\n";
        return 1;
      }
      const auto report = miner::mine_dataset(d, m);
      if (report.rules.empty()) err << "notice: no rules at the given thresholds\n";
      if (!rules_csv_path.empty()) text::write_file(rules_csv_path, miner::rules_csv(report.rules));
      emit(s, mine_out, mining_markdown(report, m, !mine_no_ts));
      return 0;
    }
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace seorank
