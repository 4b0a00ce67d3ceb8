#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "teamdiv/config.hpp"
#include "teamdiv/corpus.hpp"
#include "teamdiv/diversity.hpp"
#include "teamdiv/expertise.hpp"
#include "teamdiv/stats.hpp"

namespace teamdiv {

// Aggregates for one citation bucket. Percentages and the #1/#0 ratio are
// derived from the counts by finalize_bucket().
struct BucketStats {
  BucketId bucket;
  CitationRange range;
  std::size_t n_papers = 0;
  std::optional<double> citation_median;
  std::size_t zeros = 0;
  std::size_t ones = 0;
  std::optional<double> one_zero_ratio;
  // low, moderate, high, very_high
  std::array<std::int64_t, kCategoryCount> category_counts{};
  std::array<double, kCategoryCount> category_percentages{};
};

// Recomputes one_zero_ratio and category_percentages from the counts.
// Percentages are taken over the sum of category_counts.
void finalize_bucket(BucketStats& stats);

// (high + very_high) / low, absent when there are no low papers.
std::optional<double> high_to_low_ratio(const BucketStats& stats);

// Interior bins cover (0, w), [w, 2w), ..., [1 - w, 1); values within
// epsilon of an endpoint go to the separate spike counters instead.
struct Histogram {
  double bin_width = 0.05;
  std::size_t zero_spike = 0;
  std::size_t one_spike = 0;
  std::vector<std::size_t> bins;

  double bin_lower(std::size_t i) const { return static_cast<double>(i) * bin_width; }
  double bin_upper(std::size_t i) const;
  std::size_t total() const;
};

// Throws std::invalid_argument unless 0 < bin_width <= 1.
Histogram max_distance_histogram(std::span<const double> distances, double bin_width = 0.05,
                                 double epsilon = kDefaultZeroOneEpsilon);

// Interior bin holding d (which must be inside (epsilon, 1 - epsilon)).
std::size_t histogram_bin(double d, double bin_width, std::size_t bin_count);

struct LabeledCorrelation {
  std::string label;
  std::optional<CorrelationResult> result;
  std::string note;  // why result is absent
};

struct LabeledChiSquare {
  std::string label;
  std::optional<ChiSquareResult> result;
  std::string note;
};

struct CategoryDelta {
  BucketId bucket;
  // Percentage points relative to the baseline bucket.
  std::array<double, kCategoryCount> delta{};
};

struct PaperResult {
  PaperIndex paper = 0;
  std::int64_t citations = 0;
  std::size_t bucket = 0;
  PaperDiversity diversity;
};

struct AnalysisReport {
  AnalysisConfig config;
  std::size_t analysis_set_size = 0;
  std::vector<BucketStats> buckets;
  BucketStats overall;
  Histogram histogram;
  LabeledCorrelation ratio_vs_median;
  // Category percentage (and high+very_high over low) against bucket median.
  std::vector<LabeledCorrelation> category_correlations;
  std::vector<LabeledChiSquare> chi_square_tests;
  std::vector<CategoryDelta> category_deltas;
  std::vector<PaperResult> papers;
  std::vector<std::string> warnings;
};

struct RunOptions {
  // Worker threads for profiling and per-paper metrics. Output does not
  // depend on this value.
  unsigned jobs = 1;
};

// select -> profile -> per-paper diversity -> bucket -> aggregate -> tests.
// Throws std::invalid_argument for an invalid config and std::runtime_error
// when the analysis set is empty. When `profiles` is non-null it receives
// every profile that was computed, ordered by (author, year).
AnalysisReport run_analysis(const Corpus& corpus, const AnalysisConfig& config,
                            const RunOptions& options = {},
                            std::vector<AuthorProfile>* profiles = nullptr);

// Aggregation and tests over already computed per-paper results. Results
// may arrive in any order.
AnalysisReport assemble_report(const AnalysisConfig& config, std::vector<PaperResult> papers);

// Rebuilds the report from a per-paper metrics dump, taking citation counts
// from the corpus. Throws std::runtime_error for unknown paper ids or papers
// without citations.
AnalysisReport regenerate_report(const Corpus& corpus, const AnalysisConfig& config,
                                 std::span<const PaperDiversity> metrics);

// Pearson over (citation_median, one_zero_ratio) for buckets where both are
// defined, in bucket order. Throws std::invalid_argument with fewer than 3.
CorrelationResult ratio_vs_median_correlation(std::span<const BucketStats> stats);

// Throws std::invalid_argument when the baseline label is missing.
std::vector<CategoryDelta> category_delta_vs_baseline(std::span<const BucketStats> stats,
                                                      std::string_view baseline);

// One test per adjacent pair plus first vs rest and first-two vs rest. A
// test that cannot be computed keeps its label and records why. Throws
// std::invalid_argument with fewer than two buckets.
std::vector<LabeledChiSquare> adjacent_and_pooled_tests(std::span<const BucketStats> stats);

}  // namespace teamdiv
