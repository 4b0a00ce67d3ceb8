#include "teamdiv/report.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace teamdiv {

void finalize_bucket(BucketStats& stats) {
  stats.one_zero_ratio.reset();
  if (stats.zeros > 0) {
    stats.one_zero_ratio = static_cast<double>(stats.ones) / static_cast<double>(stats.zeros);
  }
  const std::int64_t total =
      std::accumulate(stats.category_counts.begin(), stats.category_counts.end(),
                      std::int64_t{0});
  for (std::size_t c = 0; c < kCategoryCount; ++c) {
    stats.category_percentages[c] =
        total > 0 ? 100.0 * static_cast<double>(stats.category_counts[c]) /
                        static_cast<double>(total)
                  : 0.0;
  }
}

std::optional<double> high_to_low_ratio(const BucketStats& stats) {
  const auto low = stats.category_counts[0];
  if (low == 0) return std::nullopt;
  return static_cast<double>(stats.category_counts[2] + stats.category_counts[3]) /
         static_cast<double>(low);
}

double Histogram::bin_upper(std::size_t i) const {
  return i + 1 == bins.size() ? 1.0 : static_cast<double>(i + 1) * bin_width;
}

std::size_t Histogram::total() const {
  return zero_spike + one_spike + std::accumulate(bins.begin(), bins.end(), std::size_t{0});
}

namespace {

std::size_t bin_count_for(double bin_width) {
  const double exact = 1.0 / bin_width;
  const double rounded = std::round(exact);
  if (std::fabs(exact - rounded) < 1e-9) return static_cast<std::size_t>(rounded);
  return static_cast<std::size_t>(std::ceil(exact));
}

}  // namespace

std::size_t histogram_bin(double d, double bin_width, std::size_t bin_count) {
  auto i = static_cast<std::size_t>(std::max(0.0, std::floor(d / bin_width)));
  // floor(d / w) can land one off when i * w is not representable.
  while (i > 0 && static_cast<double>(i) * bin_width > d) --i;
  while (static_cast<double>(i + 1) * bin_width <= d) ++i;
  return std::min(i, bin_count - 1);
}

Histogram max_distance_histogram(std::span<const double> distances, double bin_width,
                                 double epsilon) {
  if (!(bin_width > 0.0 && bin_width <= 1.0)) {
    throw std::invalid_argument("bin_width must lie in (0, 1]");
  }
  Histogram h;
  h.bin_width = bin_width;
  h.bins.assign(bin_count_for(bin_width), 0);
  for (double d : distances) {
    if (d <= epsilon) {
      ++h.zero_spike;
    } else if (d >= 1.0 - epsilon) {
      ++h.one_spike;
    } else {
      ++h.bins[histogram_bin(d, bin_width, h.bins.size())];
    }
  }
  return h;
}

CorrelationResult ratio_vs_median_correlation(std::span<const BucketStats> stats) {
  std::vector<double> medians, ratios;
  for (const auto& s : stats) {
    if (s.n_papers == 0 || !s.citation_median || !s.one_zero_ratio) continue;
    medians.push_back(*s.citation_median);
    ratios.push_back(*s.one_zero_ratio);
  }
  if (medians.size() < 3) {
    throw std::invalid_argument("ratio-vs-median correlation needs 3 buckets with a ratio");
  }
  return pearson(medians, ratios);
}

std::vector<CategoryDelta> category_delta_vs_baseline(std::span<const BucketStats> stats,
                                                      std::string_view baseline) {
  auto base = std::find_if(stats.begin(), stats.end(),
                           [&](const BucketStats& s) { return s.bucket.label == baseline; });
  if (base == stats.end()) {
    throw std::invalid_argument("baseline bucket '" + std::string(baseline) + "' not present");
  }
  std::vector<CategoryDelta> out;
  out.reserve(stats.size());
  for (const auto& s : stats) {
    CategoryDelta d;
    d.bucket = s.bucket;
    for (std::size_t c = 0; c < kCategoryCount; ++c) {
      d.delta[c] = s.category_percentages[c] - base->category_percentages[c];
    }
    out.push_back(std::move(d));
  }
  return out;
}

namespace {

std::vector<std::int64_t> counts_of(const BucketStats& s) {
  return {s.category_counts.begin(), s.category_counts.end()};
}

std::vector<std::int64_t> pooled(std::span<const BucketStats> stats) {
  std::vector<std::vector<std::int64_t>> rows;
  for (const auto& s : stats) rows.push_back(counts_of(s));
  return pool_counts(rows, kCategoryCount);
}

std::string span_label(std::span<const BucketStats> stats) {
  if (stats.size() == 1) return stats.front().bucket.label;
  return stats.front().bucket.label + "-" + stats.back().bucket.label;
}

LabeledChiSquare labeled_test(std::string label, std::span<const std::int64_t> a,
                              std::span<const std::int64_t> b) {
  LabeledChiSquare out;
  out.label = std::move(label);
  try {
    out.result = chi_square_homogeneity(a, b);
  } catch (const std::invalid_argument& e) {
    out.note = e.what();
  }
  return out;
}

}  // namespace

std::vector<LabeledChiSquare> adjacent_and_pooled_tests(std::span<const BucketStats> stats) {
  if (stats.size() < 2) throw std::invalid_argument("chi-square tests need two buckets");
  std::vector<LabeledChiSquare> out;
  for (std::size_t i = 0; i + 1 < stats.size(); ++i) {
    const auto a = counts_of(stats[i]);
    const auto b = counts_of(stats[i + 1]);
    out.push_back(labeled_test(stats[i].bucket.label + " vs " + stats[i + 1].bucket.label, a, b));
  }
  if (stats.size() >= 3) {
    const auto first = counts_of(stats[0]);
    const auto rest = pooled(stats.subspan(1));
    out.push_back(labeled_test(span_label(stats.first(1)) + " vs " + span_label(stats.subspan(1)),
                               first, rest));
  }
  if (stats.size() >= 4) {
    const auto head = pooled(stats.first(2));
    const auto rest = pooled(stats.subspan(2));
    out.push_back(labeled_test(span_label(stats.first(2)) + " vs " + span_label(stats.subspan(2)),
                               head, rest));
  }
  return out;
}

namespace {

template <typename Fn>
void parallel_for(std::size_t n, unsigned jobs, Fn&& fn) {
  jobs = std::max(1u, jobs);
  if (jobs == 1 || n < 2 * static_cast<std::size_t>(jobs)) {
    fn(std::size_t{0}, n);
    return;
  }
  std::vector<std::thread> workers;
  std::vector<std::exception_ptr> errors(jobs);
  const std::size_t chunk = (n + jobs - 1) / jobs;
  for (unsigned w = 0; w < jobs; ++w) {
    const std::size_t begin = std::min(n, w * chunk);
    const std::size_t end = std::min(n, begin + chunk);
    workers.emplace_back([&, w, begin, end] {
      try {
        fn(begin, end);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : workers) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

struct ProfileKey {
  AuthorId author;
  int year = 0;
  friend auto operator<=>(const ProfileKey&, const ProfileKey&) = default;
};

LabeledCorrelation labeled_pearson(std::string label, std::span<const double> x,
                                   std::span<const double> y) {
  LabeledCorrelation out;
  out.label = std::move(label);
  try {
    out.result = pearson(x, y);
  } catch (const std::invalid_argument& e) {
    out.note = e.what();
  }
  return out;
}

std::string format_count(std::size_t n) { return std::to_string(n); }

}  // namespace

AnalysisReport assemble_report(const AnalysisConfig& config, std::vector<PaperResult> papers) {
  config.validate();
  std::sort(papers.begin(), papers.end(),
            [](const PaperResult& a, const PaperResult& b) { return a.paper < b.paper; });

  AnalysisReport report;
  report.config = config;
  report.analysis_set_size = papers.size();

  const std::size_t n_buckets = config.bucket_bounds.size();
  std::vector<std::vector<double>> citations(n_buckets);
  std::vector<std::vector<double>> distances(n_buckets);
  std::vector<double> all_citations, all_distances;
  report.buckets.resize(n_buckets);
  for (std::size_t b = 0; b < n_buckets; ++b) {
    report.buckets[b].bucket = {b, bucket_label(b)};
    report.buckets[b].range = config.bucket_bounds[b];
  }
  report.overall.bucket = {n_buckets, "ALL"};
  report.overall.range = {config.min_citations, std::nullopt};

  for (const auto& p : papers) {
    if (p.bucket >= n_buckets) throw std::out_of_range("paper bucket out of range");
    auto& s = report.buckets[p.bucket];
    ++s.n_papers;
    ++report.overall.n_papers;
    const auto category = static_cast<std::size_t>(p.diversity.category);
    ++s.category_counts[category];
    ++report.overall.category_counts[category];
    citations[p.bucket].push_back(static_cast<double>(p.citations));
    all_citations.push_back(static_cast<double>(p.citations));
    if (p.diversity.max_distance) {
      distances[p.bucket].push_back(*p.diversity.max_distance);
      all_distances.push_back(*p.diversity.max_distance);
    }
  }

  auto fill = [&](BucketStats& s, const std::vector<double>& cites,
                  const std::vector<double>& dists) {
    if (!cites.empty()) s.citation_median = median(cites, MedianMode::kLowerMiddle);
    const auto oz = one_zero_counts(dists, config.zero_one_epsilon);
    s.zeros = oz.zeros;
    s.ones = oz.ones;
    finalize_bucket(s);
  };
  for (std::size_t b = 0; b < n_buckets; ++b) fill(report.buckets[b], citations[b], distances[b]);
  fill(report.overall, all_citations, all_distances);

  report.histogram =
      max_distance_histogram(all_distances, config.histogram_bin_width, config.zero_one_epsilon);

  const std::size_t undefined = report.analysis_set_size - all_distances.size();
  if (undefined > 0) {
    report.warnings.push_back(format_count(undefined) +
                              " papers have fewer than two profiled authors; "
                              "excluded from max-distance statistics");
  }

  std::vector<BucketStats> populated;
  for (const auto& s : report.buckets) {
    if (s.n_papers == 0) {
      report.warnings.push_back("bucket " + s.bucket.label +
                                " has no papers; excluded from correlations and tests");
    } else {
      populated.push_back(s);
    }
  }

  report.ratio_vs_median.label = "#1/#0 ratio vs citation median";
  try {
    report.ratio_vs_median.result = ratio_vs_median_correlation(populated);
  } catch (const std::invalid_argument& e) {
    report.ratio_vs_median.note = e.what();
    report.warnings.push_back(std::string("ratio-vs-median correlation unavailable: ") +
                              e.what());
  }
  for (const auto& s : populated) {
    if (!s.one_zero_ratio) {
      report.warnings.push_back("bucket " + s.bucket.label +
                                " has no max-distance-0 papers; #1/#0 ratio undefined");
    }
  }

  std::vector<double> medians;
  for (const auto& s : populated) medians.push_back(*s.citation_median);
  for (std::size_t c = 0; c < kCategoryCount; ++c) {
    std::vector<double> pct;
    for (const auto& s : populated) pct.push_back(s.category_percentages[c]);
    report.category_correlations.push_back(labeled_pearson(
        std::string(category_name(static_cast<DiversityCategory>(c))) + " % vs citation median",
        medians, pct));
  }
  {
    std::vector<double> x, y;
    for (const auto& s : populated) {
      if (auto r = high_to_low_ratio(s)) {
        x.push_back(*s.citation_median);
        y.push_back(*r);
      }
    }
    report.category_correlations.push_back(
        labeled_pearson("(high + very_high) / low vs citation median", x, y));
  }

  if (populated.size() >= 2) {
    report.chi_square_tests = adjacent_and_pooled_tests(populated);
  } else {
    report.warnings.push_back("fewer than two populated buckets; chi-square tests skipped");
  }

  auto baseline = std::find_if(populated.begin(), populated.end(), [&](const BucketStats& s) {
    return s.bucket.label == config.baseline_bucket;
  });
  if (baseline != populated.end()) {
    report.category_deltas = category_delta_vs_baseline(populated, config.baseline_bucket);
  } else {
    report.warnings.push_back("baseline bucket " + config.baseline_bucket +
                              " has no papers; category deltas skipped");
  }

  report.papers = std::move(papers);
  return report;
}

AnalysisReport run_analysis(const Corpus& corpus, const AnalysisConfig& config,
                            const RunOptions& options, std::vector<AuthorProfile>* profiles) {
  config.validate();
  const auto selected = select_analysis_set(corpus, config);
  if (selected.empty()) throw std::runtime_error("analysis set is empty");

  const auto background = background_distribution(corpus);

  std::vector<ProfileKey> keys;
  for (PaperIndex p : selected) {
    const auto& paper = corpus.paper(p);
    for (AuthorId a : paper.authors) keys.push_back({a, paper.year});
  }
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());

  std::vector<ExpertiseVector> vectors(keys.size());
  parallel_for(keys.size(), options.jobs, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      vectors[i] = profile_author(corpus, background, keys[i].author, keys[i].year,
                                  config.window_years, config.top_k);
    }
  });

  const auto mode = config.inclusive_threshold ? ThresholdMode::kInclusive
                                               : ThresholdMode::kStrict;
  std::vector<PaperResult> results(selected.size());
  parallel_for(selected.size(), options.jobs, [&](std::size_t begin, std::size_t end) {
    std::vector<ExpertiseVector> team;
    for (std::size_t i = begin; i < end; ++i) {
      const auto& paper = corpus.paper(selected[i]);
      team.clear();
      for (AuthorId a : paper.authors) {
        auto it = std::lower_bound(keys.begin(), keys.end(), ProfileKey{a, paper.year});
        team.push_back(vectors[static_cast<std::size_t>(it - keys.begin())]);
      }
      auto& r = results[i];
      r.paper = selected[i];
      r.citations = *paper.citations_5y;
      r.bucket = assign_bucket(r.citations, config).index;
      r.diversity = assess_team(paper.id, team, config.edge_threshold, mode);
    }
  });

  if (profiles) {
    profiles->clear();
    profiles->reserve(keys.size());
    for (std::size_t i = 0; i < keys.size(); ++i) {
      profiles->push_back({keys[i].author, keys[i].year, std::move(vectors[i])});
    }
  }
  return assemble_report(config, std::move(results));
}

AnalysisReport regenerate_report(const Corpus& corpus, const AnalysisConfig& config,
                                 std::span<const PaperDiversity> metrics) {
  std::vector<PaperResult> results;
  results.reserve(metrics.size());
  for (const auto& m : metrics) {
    const auto index = corpus.find_paper(m.paper_id);
    if (!index) throw std::runtime_error("metrics reference unknown paper '" + m.paper_id + "'");
    const auto& paper = corpus.paper(*index);
    if (!paper.citations_5y) {
      throw std::runtime_error("paper '" + m.paper_id + "' has no citation count");
    }
    PaperResult r;
    r.paper = *index;
    r.citations = *paper.citations_5y;
    r.bucket = assign_bucket(r.citations, config).index;
    r.diversity = m;
    results.push_back(std::move(r));
  }
  if (results.empty()) throw std::runtime_error("metrics dump is empty");
  return assemble_report(config, std::move(results));
}

}  // namespace teamdiv
