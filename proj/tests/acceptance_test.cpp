// Acceptance suite: one line per criterion, nonzero exit if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "cli.hpp"
#include "teamdiv/diversity.hpp"
#include "teamdiv/expertise.hpp"
#include "teamdiv/reference_tables.hpp"
#include "teamdiv/report.hpp"
#include "teamdiv/special_functions.hpp"
#include "teamdiv/stats.hpp"
#include "teamdiv/synth.hpp"

namespace fs = std::filesystem;
using namespace teamdiv;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<BucketStats> published_stats() {
  std::vector<BucketStats> out;
  std::size_t i = 0;
  for (const auto& b : reference::published_buckets()) {
    BucketStats s;
    s.bucket = {i++, b.label};
    s.n_papers = static_cast<std::size_t>(b.papers_table1);
    s.range = b.range;
    s.citation_median = b.citation_median;
    s.zeros = static_cast<std::size_t>(b.zeros);
    s.ones = static_cast<std::size_t>(b.ones);
    out.push_back(s);
  }
  return out;
}

Outcome headline_correlation() {
  auto stats = published_stats();
  std::size_t i = 0;
  for (const auto& b : reference::published_buckets()) stats[i++].one_zero_ratio = b.ratio;
  const auto r = ratio_vs_median_correlation(stats);
  return {std::abs(r.r - 0.955) <= 0.005 && r.p_value < 1e-4,
          fmt("r = %.4f, p = %.3g", r.r, r.p_value)};
}

Outcome ratio_reproduction() {
  int matched = 0;
  std::string worst;
  for (const auto& b : reference::published_buckets()) {
    std::vector<double> d(static_cast<std::size_t>(b.zeros), 0.0);
    d.insert(d.end(), static_cast<std::size_t>(b.ones), 1.0);
    d.insert(d.end(), 37, 0.5);
    const auto c = one_zero_counts(d);
    const bool ok = c.ratio && std::abs(std::round(*c.ratio * 100) / 100 - b.ratio) < 1e-9;
    matched += ok ? 1 : 0;
    if (!ok) worst += std::string(b.label) + " ";
  }
  return {matched == 10, std::to_string(matched) + "/10 ratios match to 2 decimals" +
                             (worst.empty() ? "" : " (off: " + worst + ")")};
}

Outcome category_deltas() {
  const auto stats = reference::reconstructed_buckets();
  const auto deltas = category_delta_vs_baseline(stats, "A");
  const double high = deltas.back().delta[2];
  return {std::abs(high - 5.21) <= 0.02, fmt("J-high minus A-high = %.4f pp", high)};
}

Outcome chi_square_replay() {
  const auto tests = adjacent_and_pooled_tests(reference::reconstructed_buckets());
  std::map<std::string, double> p;
  for (const auto& t : tests) {
    if (t.result) p[t.label] = t.result->p_value;
  }
  const bool ok = p.count("A vs B") && p.count("B vs C") && p.count("C vs D") &&
                  p.count("A vs B-J") && p["A vs B"] < 1e-4 && p["B vs C"] < 1e-4 &&
                  p["C vs D"] < 0.06 && p["A vs B-J"] < 1e-4;
  char buf[256];
  std::snprintf(buf, sizeof buf, "A-B p = %.3g, B-C p = %.3g, C-D p = %.4f, A vs B-J p = %.3g",
                p["A vs B"], p["B vs C"], p["C vs D"], p["A vs B-J"]);
  return {ok, buf};
}

Outcome expertise_formula() {
  TopicDistribution author({{TopicId{0}, 7}}, 10);
  BackgroundDistribution background({{TopicId{0}, 30}}, 100);
  const auto v = expertise_vector(AuthorId{0}, author, background, 10);
  const double w = v.weight(TopicId{0});
  return {w == 0.4, fmt("adjusted weight = %.17g", w)};
}

Outcome component_oracle() {
  std::mt19937_64 gen(20240601);
  int mismatches = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const double density = static_cast<double>(trial % 11) / 10.0;
    const std::size_t n = 1 + gen() % 12;
    AuthorSimilarityGraph g;
    for (std::size_t i = 0; i < n; ++i) g.vertices.push_back(AuthorId{static_cast<std::uint32_t>(i)});
    std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
    std::bernoulli_distribution edge(density);
    for (std::size_t i = 0; i < n; ++i) {
      reach[i][i] = 1;
      for (std::size_t j = i + 1; j < n; ++j) {
        if (edge(gen)) {
          g.edges.emplace_back(i, j);
          reach[i][j] = reach[j][i] = 1;
        }
      }
    }
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (reach[i][k] && reach[k][j]) reach[i][j] = 1;
    std::size_t count = 0;
    std::vector<char> done(n, 0);
    for (std::size_t v = 0; v < n; ++v) {
      if (done[v]) continue;
      ++count;
      for (std::size_t u = 0; u < n; ++u) if (reach[v][u]) done[u] = 1;
    }
    const auto got = connected_components(g);
    bool same = got.count == count;
    for (std::size_t i = 0; same && i < n; ++i)
      for (std::size_t j = 0; same && j < n; ++j)
        same = (got.membership[i] == got.membership[j]) == static_cast<bool>(reach[i][j]);
    mismatches += same ? 0 : 1;
  }

  // Seven authors in three expertise groups.
  auto v = [](std::uint32_t owner, std::vector<WeightedTopic> e) {
    return ExpertiseVector(AuthorId{owner}, 10, std::move(e));
  };
  const TopicId a{1}, b{2}, c{3};
  std::vector<ExpertiseVector> team = {
      v(0, {{a, 1.0}}), v(1, {{a, 0.8}, {b, 0.1}}), v(2, {{a, 0.9}}),
      v(3, {{b, 1.0}}), v(4, {{b, 0.7}}),
      v(5, {{c, 1.0}}), v(6, {{c, 0.3}}),
  };
  const auto fig = assess_team("figure", team, 0.3);
  const bool fig_ok = fig.n_components == 3 && fig.category == DiversityCategory::kModerate;
  return {mismatches == 0 && fig_ok,
          std::to_string(mismatches) + " mismatches in 1000 graphs; fixture has " +
              std::to_string(fig.n_components) + " components (" +
              std::string(category_name(fig.category)) + ")"};
}

Outcome kernel_oracles() {
  struct Row {
    double x, df, p;
  };
  const Row t_rows[] = {{12.706, 1, 0.05}, {4.303, 2, 0.05},  {4.032, 5, 0.01},
                        {3.355, 8, 0.01},  {2.228, 10, 0.05}, {1.753, 15, 0.10},
                        {2.086, 20, 0.05}, {2.750, 30, 0.01}};
  const Row chi_rows[] = {{3.841, 1, 0.05}, {6.635, 1, 0.01}, {4.605, 2, 0.10},
                          {5.991, 2, 0.05}, {7.815, 3, 0.05}, {9.488, 4, 0.05},
                          {11.070, 5, 0.05}, {18.307, 10, 0.05}};
  double worst = 0;
  int ok = 0;
  for (const auto& r : t_rows) {
    const double err = std::abs(student_t_two_sided_p(r.x, r.df) - r.p);
    worst = std::max(worst, err);
    ok += err <= 0.001 ? 1 : 0;
  }
  for (const auto& r : chi_rows) {
    const double err = std::abs(chi_square_upper_p(r.x, r.df) - r.p);
    worst = std::max(worst, err);
    ok += err <= 0.001 ? 1 : 0;
  }
  return {ok == 16, fmt("%.0f/16 checkpoints within 0.001 (worst %.2g)", ok, worst)};
}

ExpertiseVector random_vector(std::mt19937_64& gen, std::uint32_t owner) {
  std::uniform_real_distribution<double> w(0.001, 10.0);
  std::vector<WeightedTopic> e;
  const int n = 1 + static_cast<int>(gen() % 10);
  std::vector<std::uint32_t> topics(30);
  for (std::uint32_t t = 0; t < 30; ++t) topics[t] = t;
  std::shuffle(topics.begin(), topics.end(), gen);
  for (int i = 0; i < n; ++i) e.push_back({TopicId{topics[i]}, w(gen)});
  return ExpertiseVector(AuthorId{owner}, 10, std::move(e));
}

Outcome metric_invariants() {
  std::mt19937_64 gen(77);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int failures = 0;
  std::string first;
  auto fail = [&](const std::string& what) {
    if (failures++ == 0) first = what;
  };
  for (int trial = 0; trial < 10000; ++trial) {
    const std::uint32_t n = 2 + static_cast<std::uint32_t>(gen() % 9);
    std::vector<ExpertiseVector> team;
    for (std::uint32_t i = 0; i < n; ++i) team.push_back(random_vector(gen, i));

    const auto& u = team[0];
    const auto& v = team[1];
    const double d = cosine_distance(u, v);
    if (d != cosine_distance(v, u)) fail("symmetry");
    if (!(d >= 0.0 && d <= 1.0)) fail("range");
    const double scale = std::exp(unit(gen) * 10 - 5);
    std::vector<WeightedTopic> scaled(u.by_topic().begin(), u.by_topic().end());
    for (auto& e : scaled) e.weight *= scale;
    if (std::abs(cosine_distance(ExpertiseVector(u.owner(), u.k(), scaled), v) - d) > 1e-12) {
      fail("scale invariance");
    }

    const auto distances = pairwise_distances(team);
    if (distances.size() != static_cast<std::size_t>(n) * (n - 1) / 2) fail("pair count");
    for (double x : distances) {
      if (!(x >= 0.0 && x <= 1.0)) fail("range");
    }

    const double t1 = unit(gen), t2 = unit(gen);
    const double lo = std::min(t1, t2), hi = std::max(t1, t2);
    const auto c_lo = connected_components(build_author_graph(team, lo)).count;
    const auto c_hi = connected_components(build_author_graph(team, hi)).count;
    if (c_hi > c_lo) fail("threshold monotonicity");
  }
  return {failures == 0, failures == 0 ? "10000 trials, 0 failures"
                                       : std::to_string(failures) + " failures, first: " + first};
}

Outcome power_check() {
  const auto t0 = std::chrono::steady_clock::now();
  int power_hits = 0, null_quiet = 0;
  double min_r = 1.0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    for (double coupling : {0.8, 0.0}) {
      SynthParams params;
      params.seed = seed;
      params.n_papers = 20000;
      params.coupling = coupling;
      const auto report = run_analysis(generate_corpus(params), AnalysisConfig{});
      const auto& r = report.ratio_vs_median.result;
      if (coupling > 0) {
        if (r && r->r > 0.7 && is_significant(r->p_value)) ++power_hits;
        if (r) min_r = std::min(min_r, r->r);
      } else if (r && !is_significant(r->p_value)) {
        ++null_quiet;
      }
    }
  }
  const double secs = seconds_since(t0);
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "coupling 0.8: %d/20 significant positive (min r %.3f); coupling 0: %d/20 "
                "non-significant; %.1f s",
                power_hits, min_r, null_quiet, secs);
  return {power_hits >= 19 && null_quiet >= 16 && secs < 120, buf};
}

std::map<std::string, std::string> snapshot(const fs::path& root) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (!e.is_regular_file()) continue;
    std::ifstream in(e.path(), std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    files[fs::relative(e.path(), root).string()] = s.str();
  }
  return files;
}

int cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  return cli::run(args, out, err);
}

Outcome determinism(const fs::path& scratch) {
  const auto syn = (scratch / "syn").string();
  if (cli({"synth", "-o", syn, "--seed", "17", "--n-papers", "5000", "--n-authors", "18000",
           "--coupling", "0.8"}) != 0) {
    return {false, "synth failed"};
  }
  const auto corpus = syn + "/corpus.jsonl";
  const auto a = (scratch / "run-a").string(), b = (scratch / "run-b").string();
  if (cli({"analyze", corpus, "-o", a, "--dump-papers"}) != 0 ||
      cli({"analyze", corpus, "-o", b, "--dump-papers"}) != 0) {
    return {false, "analyze failed"};
  }
  const auto sa = snapshot(a), sb = snapshot(b);
  std::size_t bytes = 0;
  for (const auto& [name, body] : sa) bytes += body.size();
  return {sa == sb && sa.size() == 9,
          std::to_string(sa.size()) + " files, " + std::to_string(bytes) + " bytes, " +
              (sa == sb ? "identical" : "DIFFERENT")};
}

Outcome throughput(const fs::path& scratch) {
  const auto dir = (scratch / "big").string();
  const auto t0 = std::chrono::steady_clock::now();
  if (cli({"synth", "-o", dir, "--seed", "3", "--n-papers", "100000", "--n-authors", "350000",
           "--coupling", "0.8"}) != 0) {
    return {false, "synth failed"};
  }
  const double gen_secs = seconds_since(t0);
  const auto t1 = std::chrono::steady_clock::now();
  if (cli({"analyze", dir + "/corpus.jsonl", "-o", (scratch / "big-report").string(), "--jobs",
           "1"}) != 0) {
    return {false, "analyze failed"};
  }
  const double analyze_secs = seconds_since(t1);
  const double total = gen_secs + analyze_secs;
  return {total < 300, fmt("100k analysis papers: generate %.1f s + parse/analyze/render %.1f s "
                           "= %.1f s single-threaded",
                           gen_secs, analyze_secs, total)};
}

}  // namespace

int main() {
  const fs::path scratch =
      fs::temp_directory_path() / ("teamdiv_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(scratch);
  fs::create_directories(scratch);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1 headline correlation replay", headline_correlation},
      {"2 ratio reproduction", ratio_reproduction},
      {"3 category deltas", category_deltas},
      {"4 chi-square replay", chi_square_replay},
      {"5 expertise formula", expertise_formula},
      {"6 component oracle", component_oracle},
      {"7 statistics kernel oracles", kernel_oracles},
      {"8 metric invariants", metric_invariants},
      {"9 end-to-end power check", power_check},
      {"10 determinism", [&] { return determinism(scratch); }},
      {"11 throughput", [&] { return throughput(scratch); }},
  };

  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s criterion %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  std::error_code ec;
  fs::remove_all(scratch, ec);
  return failed == 0 ? 0 : 1;
}
