#include "cli.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <system_error>

#include "CLI11.hpp"
#include "teamdiv/config.hpp"
#include "teamdiv/corpus.hpp"
#include "teamdiv/reference_tables.hpp"
#include "teamdiv/render.hpp"
#include "teamdiv/report.hpp"
#include "teamdiv/stats.hpp"
#include "teamdiv/synth.hpp"

namespace teamdiv::cli {

namespace fs = std::filesystem;

namespace {

// Raised for bad flag values or unreadable inputs; maps to kUsage.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct Globals {
  std::string config_path;
  std::string output_dir;
  std::string format = "all";
  bool strict = false;
  bool lenient = false;
  unsigned jobs = 1;

  fs::path output() const {
    if (!output_dir.empty()) return output_dir;
    if (const char* env = std::getenv(kOutputDirEnv); env && *env) return env;
    return kDefaultOutputDir;
  }
  ParseMode mode() const { return lenient ? ParseMode::kLenient : ParseMode::kStrict; }
};

// Flag values for the analysis config; unset ones leave the file/default
// value alone.
struct AnalysisFlags {
  std::optional<int> top_k;
  std::optional<int> window_years;
  std::optional<double> edge_threshold;
  bool inclusive_threshold = false;
  std::optional<int> year_start;
  std::optional<int> year_end;
  std::optional<int> min_citations;
  std::optional<int> min_authors;
  std::optional<std::string> baseline_bucket;
  bool dump_papers = false;
  bool dump_profiles = false;
};

AnalysisConfig resolve_config(const Globals& g, const AnalysisFlags& f) {
  AnalysisConfig config;
  try {
    if (!g.config_path.empty()) config = config_from_json(read_file(g.config_path), config);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (f.top_k) config.top_k = *f.top_k;
  if (f.window_years) config.window_years = *f.window_years;
  if (f.edge_threshold) config.edge_threshold = *f.edge_threshold;
  if (f.inclusive_threshold) config.inclusive_threshold = true;
  if (f.year_start) config.year_start = *f.year_start;
  if (f.year_end) config.year_end = *f.year_end;
  if (f.min_citations) {
    // Keep the first bucket anchored at the citation floor.
    if (!config.bucket_bounds.empty() && config.bucket_bounds.front().lo == config.min_citations) {
      config.bucket_bounds.front().lo = *f.min_citations;
    }
    config.min_citations = *f.min_citations;
  }
  if (f.min_authors) config.min_authors = *f.min_authors;
  if (f.baseline_bucket) config.baseline_bucket = *f.baseline_bucket;
  try {
    config.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("invalid configuration: ") + e.what());
  }
  return config;
}

ParseResult load(const std::string& path, ParseMode mode) {
  try {
    return load_corpus(path, mode);
  } catch (const std::system_error& e) {
    throw UsageError("cannot read corpus '" + path + "': " + e.code().message());
  }
}

std::string format_p(double p) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", p);
  return buf;
}

const char* verdict(double p) { return is_significant(p) ? "significant" : "not significant"; }

int cmd_validate(const Globals&, const std::string& path, std::ostream& out) {
  // Collect everything, then judge by the strict rule: any diagnostic fails.
  auto parsed = load(path, ParseMode::kLenient);
  for (const auto& d : parsed.diagnostics) out << path << ':' << d.line << ": " << d.message << '\n';
  if (!parsed.diagnostics.empty()) {
    out << parsed.diagnostics.size() << " problem(s) found\n";
    return kFailure;
  }
  out << "ok: " << parsed.corpus.size() << " papers, " << parsed.corpus.author_count()
      << " authors, " << parsed.corpus.topic_count() << " topics\n";
  return kOk;
}

int cmd_analyze(const Globals& g, const AnalysisFlags& f, const std::string& path,
                std::ostream& out, std::ostream& err) {
  const auto config = resolve_config(g, f);
  std::vector<OutputFormat> formats;
  try {
    formats = parse_output_formats(g.format);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  auto parsed = load(path, g.mode());
  for (const auto& d : parsed.diagnostics) {
    err << "skipped line " << d.line << ": " << d.message << '\n';
  }

  std::vector<AuthorProfile> profiles;
  AnalysisReport report;
  try {
    report = run_analysis(parsed.corpus, config, RunOptions{std::max(1u, g.jobs)},
                          f.dump_profiles ? &profiles : nullptr);
  } catch (const std::runtime_error& e) {
    err << "analysis failed: " << e.what() << '\n';
    return kFailure;
  }

  const fs::path dir = g.output();
  render(report, dir, formats);
  if (f.dump_papers) {
    std::vector<PaperDiversity> rows;
    rows.reserve(report.papers.size());
    for (const auto& p : report.papers) rows.push_back(p.diversity);
    std::ostringstream csv;
    write_metrics_csv(csv, rows);
    write_text_file(dir / "papers.csv", csv.str());
  }
  if (f.dump_profiles) {
    std::ostringstream jsonl;
    write_profiles(jsonl, parsed.corpus, profiles);
    write_text_file(dir / "profiles.jsonl", jsonl.str());
  }

  out << "analysis set: " << report.analysis_set_size << " papers\n";
  if (const auto& r = report.ratio_vs_median.result) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "ratio vs median: r = %.4f, p = %s, n = %zu (%s)\n", r->r,
                  format_p(r->p_value).c_str(), r->n, verdict(r->p_value));
    out << buf;
  } else {
    out << "ratio vs median: undefined (" << report.ratio_vs_median.note << ")\n";
  }
  for (const auto& t : report.chi_square_tests) {
    if (!t.result) {
      out << t.label << ": undefined (" << t.note << ")\n";
      continue;
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s: chi2 = %.3f, df = %d, p = %s (%s)\n", t.label.c_str(),
                  t.result->statistic, static_cast<int>(t.result->df),
                  format_p(t.result->p_value).c_str(), verdict(t.result->p_value));
    out << buf;
  }
  for (const auto& w : report.warnings) out << "warning: " << w << '\n';
  out << "wrote " << dir.string() << '\n';
  return kOk;
}

struct SynthFlags {
  std::string params_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> n_papers;
  std::optional<std::size_t> n_authors;
  std::optional<std::size_t> n_topics;
  std::optional<std::size_t> clusters;
  std::optional<double> coupling;
  std::optional<double> cluster_mix;
};

int cmd_synth(const Globals& g, const SynthFlags& f, std::ostream& out) {
  SynthParams params;
  try {
    if (!f.params_path.empty()) params = synth_params_from_json(read_file(f.params_path), params);
    if (f.seed) params.seed = *f.seed;
    if (f.n_papers) params.n_papers = *f.n_papers;
    if (f.n_authors) params.n_authors = *f.n_authors;
    if (f.n_topics) params.n_topics = *f.n_topics;
    if (f.clusters) params.n_expertise_clusters = *f.clusters;
    if (f.coupling) params.coupling = *f.coupling;
    if (f.cluster_mix) params.cluster_mix = *f.cluster_mix;
    params.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("invalid synth parameters: ") + e.what());
  }
  const auto corpus = generate_corpus(params);
  const fs::path dir = g.output();
  std::ostringstream jsonl;
  write_corpus(jsonl, corpus);
  write_text_file(dir / "corpus.jsonl", jsonl.str());
  write_text_file(dir / "params.json", synth_params_to_json(params));
  out << "wrote " << corpus.size() << " papers (" << corpus.author_count() << " authors) to "
      << (dir / "corpus.jsonl").string() << '\n';
  return kOk;
}

int cmd_tables_check(std::ostream& out) {
  bool all = true;
  for (const auto& c : reference::run_table_checks()) {
    out << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
    all = all && c.passed;
  }
  for (const auto& c : reference::table3_correlations()) {
    if (c.result) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "info %s vs median: r = %.3f, p = %s\n", c.label.c_str(),
                    c.result->r, format_p(c.result->p_value).c_str());
      out << buf;
    }
  }
  out << (all ? "all table checks passed\n" : "table checks FAILED\n");
  return all ? kOk : kFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Team expertise diversity vs citation impact"};
  app.name("teamdiv");
  app.require_subcommand(1, 1);

  Globals g;
  app.add_option("--config", g.config_path, "Analysis config JSON (field names as in config.json)");
  app.add_option("-o,--output", g.output_dir,
                 std::string("Output directory (default: $") + kOutputDirEnv + " or " +
                     kDefaultOutputDir + ")");
  app.add_option("--format", g.format, "Artifacts: csv, markdown, svg, all, or a comma list")
      ->capture_default_str();
  auto* strict = app.add_flag("--strict", g.strict, "Stop at the first bad corpus line (default)");
  app.add_flag("--lenient", g.lenient, "Skip bad corpus lines and report them")->excludes(strict);
  app.add_option("-j,--jobs", g.jobs, "Worker threads; output does not depend on it")
      ->check(CLI::Range(1u, 1024u))
      ->capture_default_str();

  std::string corpus_path;

  auto* validate = app.add_subcommand("validate", "Check a corpus file (exit 1 on any problem)");
  validate->fallthrough();
  validate->add_option("corpus", corpus_path, "JSONL corpus")->required();

  AnalysisFlags af;
  auto* analyze = app.add_subcommand("analyze", "Run the analysis and write the report");
  analyze->fallthrough();
  analyze->add_option("corpus", corpus_path, "JSONL corpus")->required();
  analyze->add_option("--top-k", af.top_k, "Topics kept per expertise vector");
  analyze->add_option("--window-years", af.window_years, "Years of history before each paper");
  analyze->add_option("--edge-threshold", af.edge_threshold, "Link authors closer than this");
  analyze->add_flag("--inclusive-threshold", af.inclusive_threshold,
                    "Also link authors at exactly the threshold");
  analyze->add_option("--year-start", af.year_start, "First publication year analyzed");
  analyze->add_option("--year-end", af.year_end, "Last publication year analyzed");
  analyze->add_option("--min-citations", af.min_citations, "Citation floor for the analysis set");
  analyze->add_option("--min-authors", af.min_authors, "Minimum team size");
  analyze->add_option("--baseline-bucket", af.baseline_bucket, "Bucket for category deltas");
  analyze->add_flag("--dump-papers", af.dump_papers, "Also write per-paper metrics (papers.csv)");
  analyze->add_flag("--dump-profiles", af.dump_profiles,
                    "Also write author expertise profiles (profiles.jsonl)");

  SynthFlags sf;
  auto* synth = app.add_subcommand("synth", "Generate a synthetic corpus (corpus.jsonl, params.json)");
  synth->fallthrough();
  synth->add_option("--params", sf.params_path, "Generator parameters JSON");
  synth->add_option("--seed", sf.seed, "Random seed");
  synth->add_option("--n-papers", sf.n_papers, "Analysis-eligible papers");
  synth->add_option("--n-authors", sf.n_authors, "Author pool size");
  synth->add_option("--n-topics", sf.n_topics, "Topic vocabulary size");
  synth->add_option("--clusters", sf.clusters, "Expertise clusters");
  synth->add_option("--coupling", sf.coupling, "Log-citation gain per extra team cluster");
  synth->add_option("--cluster-mix", sf.cluster_mix, "Chance of off-cluster history papers");

  auto* tables = app.add_subcommand("tables-check", "Replay the published summary-table checks");
  tables->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << "teamdiv\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\nrun with --help for usage\n";
    return kUsage;
  }

  try {
    if (validate->parsed()) return cmd_validate(g, corpus_path, out);
    if (analyze->parsed()) return cmd_analyze(g, af, corpus_path, out, err);
    if (synth->parsed()) return cmd_synth(g, sf, out);
    return cmd_tables_check(out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const CorpusError& e) {
    err << "error: corpus line " << e.position() << ": " << e.reason() << '\n';
    return kFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace teamdiv::cli
