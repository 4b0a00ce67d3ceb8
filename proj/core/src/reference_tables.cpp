#include "teamdiv/reference_tables.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "teamdiv/stats.hpp"

namespace teamdiv::reference {

namespace {

constexpr PublishedBucket kBuckets[] = {
    {"A", {2, 5}, 3, 37232, 1195, 14401, 12.05, {64.84, 32.15, 2.79, 0.23}, 37232, 0.05},
    {"B", {5, 10}, 6, 27696, 578, 10726, 18.56, {61.69, 34.71, 3.25, 0.35}, 27700, 0.06},
    {"C", {10, 15}, 12, 12606, 189, 4809, 25.44, {60.06, 35.40, 4.14, 0.40}, 12606, 0.08},
    {"D", {15, 20}, 17, 7180, 96, 2689, 28.01, {58.23, 36.56, 4.75, 0.46}, 7180, 0.09},
    {"E", {20, 30}, 24, 7355, 71, 2787, 39.25, {57.92, 36.56, 4.88, 0.64}, 7355, 0.10},
    {"F", {30, 40}, 34, 3717, 32, 1415, 44.22, {56.60, 37.18, 5.62, 0.59}, 3717, 0.11},
    {"G", {40, 50}, 44, 2181, 23, 820, 35.65, {56.44, 37.37, 5.64, 0.55}, 2181, 0.11},
    {"H", {50, 100}, 64, 3691, 28, 1398, 49.93, {54.67, 37.83, 6.52, 0.97}, 3695, 0.14},
    {"I", {100, 150}, 118, 6245, 33, 2406, 72.91, {52.49, 39.12, 7.21, 1.18}, 6245, 0.16},
    {"J", {150, std::nullopt}, 226, 6292, 25, 2351, 94.04, {51.16, 39.16, 7.99, 1.68}, 6292, 0.19},
};

std::string fmt(const char* pattern, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, pattern, a, b);
  return buf;
}

}  // namespace

std::span<const PublishedBucket> published_buckets() { return kBuckets; }

std::vector<BucketStats> reconstructed_buckets() {
  std::vector<BucketStats> out;
  for (std::size_t i = 0; i < std::size(kBuckets); ++i) {
    const auto& b = kBuckets[i];
    BucketStats s;
    s.bucket = {i, b.label};
    s.range = b.range;
    s.citation_median = b.citation_median;
    s.zeros = static_cast<std::size_t>(b.zeros);
    s.ones = static_cast<std::size_t>(b.ones);
    std::int64_t total = 0;
    for (std::size_t c = 0; c < kCategoryCount; ++c) {
      s.category_counts[c] = std::llround(b.category_pct[c] / 100.0 *
                                          static_cast<double>(b.papers_table3));
      total += s.category_counts[c];
    }
    s.n_papers = static_cast<std::size_t>(total);
    finalize_bucket(s);
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<CheckResult> run_table_checks() {
  std::vector<CheckResult> checks;

  {
    std::vector<double> medians, ratios;
    for (const auto& b : kBuckets) {
      medians.push_back(b.citation_median);
      ratios.push_back(b.ratio);
    }
    const auto r = pearson(medians, ratios);
    checks.push_back({"headline #1/#0 vs median correlation",
                      std::fabs(r.r - kHeadlineR) <= kHeadlineRTolerance &&
                          r.p_value < kHeadlinePBound,
                      fmt("r = %.4f (expected 0.955 +/- 0.005), p = %.3g (expected < 0.0001)",
                          r.r, r.p_value)});
  }

  for (const auto& b : kBuckets) {
    std::vector<double> distances(static_cast<std::size_t>(b.zeros), 0.0);
    distances.insert(distances.end(), static_cast<std::size_t>(b.ones), 1.0);
    const auto oz = one_zero_counts(distances);
    const double rounded = oz.ratio ? std::round(*oz.ratio * 100.0) / 100.0 : -1.0;
    checks.push_back({std::string("#1/#0 ratio bucket ") + b.label,
                      oz.ratio && std::fabs(rounded - b.ratio) < 1e-9,
                      fmt("computed %.4f, published %.2f", oz.ratio.value_or(NAN), b.ratio)});
  }

  const auto buckets = reconstructed_buckets();
  {
    const auto deltas = category_delta_vs_baseline(buckets, "A");
    const double high = deltas.back().delta[static_cast<std::size_t>(DiversityCategory::kHigh)];
    checks.push_back({"J vs A high-diversity delta",
                      std::fabs(high - kHighDeltaJvsA) <= kHighDeltaTolerance,
                      fmt("delta = %.4f pp (expected 5.21 +/- 0.02); off by %.4f", high,
                          high - kHighDeltaJvsA)});
  }

  const auto tests = adjacent_and_pooled_tests(buckets);
  auto find = [&](const std::string& label) -> const LabeledChiSquare* {
    for (const auto& t : tests) {
      if (t.label == label) return &t;
    }
    return nullptr;
  };
  const std::pair<const char*, double> expectations[] = {
      {"A vs B", kStrongPBound},   {"B vs C", kStrongPBound},    {"C vs D", kCvsDPBound},
      {"A vs B-J", kStrongPBound}, {"A-B vs C-J", kStrongPBound},
  };
  for (const auto& [label, bound] : expectations) {
    const auto* t = find(label);
    const bool ok = t && t->result && t->result->p_value < bound;
    checks.push_back({std::string("chi-square ") + label, ok,
                      t && t->result ? fmt("statistic %.3f, p = %.3g", t->result->statistic,
                                           t->result->p_value) +
                                           fmt(" (expected < %g)", bound)
                                     : "test unavailable"});
  }
  return checks;
}

std::vector<LabeledCorrelation> table3_correlations() {
  std::vector<double> medians;
  for (const auto& b : kBuckets) medians.push_back(b.citation_median);
  std::vector<LabeledCorrelation> out;
  for (std::size_t c = 0; c < kCategoryCount; ++c) {
    std::vector<double> pct;
    for (const auto& b : kBuckets) pct.push_back(b.category_pct[c]);
    out.push_back({std::string(category_name(static_cast<DiversityCategory>(c))) + " %",
                   pearson(medians, pct), {}});
  }
  std::vector<double> ratio;
  for (const auto& b : kBuckets) ratio.push_back(b.high_to_low);
  out.push_back({"(high + very_high) / low", pearson(medians, ratio), {}});
  return out;
}

}  // namespace teamdiv::reference
