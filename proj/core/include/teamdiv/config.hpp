#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace teamdiv {

// Half-open citation range [lo, hi); hi == nullopt means unbounded.
struct CitationRange {
  std::int64_t lo = 0;
  std::optional<std::int64_t> hi;
  friend bool operator==(const CitationRange&, const CitationRange&) = default;
};

// The ten impact buckets A..J: 2-5, 5-10, 10-15, 15-20, 20-30, 30-40,
// 40-50, 50-100, 100-150, 150+.
std::vector<CitationRange> default_bucket_bounds();

struct AnalysisConfig {
  int window_years = 5;
  int top_k = 10;
  double edge_threshold = 0.3;
  // When true an edge is drawn for distance <= threshold instead of <.
  bool inclusive_threshold = false;
  int year_start = 2010;
  int year_end = 2015;
  std::int64_t min_citations = 2;
  int min_authors = 2;
  std::vector<CitationRange> bucket_bounds = default_bucket_bounds();
  double zero_one_epsilon = 1e-9;
  double histogram_bin_width = 0.05;
  std::string baseline_bucket = "A";

  // Throws std::invalid_argument describing the first violated invariant.
  void validate() const;

  friend bool operator==(const AnalysisConfig&, const AnalysisConfig&) = default;
};

// Canonical JSON form; field names mirror the struct members, year range
// is written as "year_range": [start, end] and bucket bounds as
// [[lo, hi], ..., [lo, null]].
std::string config_to_json(const AnalysisConfig& config);

// Overlays the keys present in `json_text` onto `base`. Unknown keys are
// rejected so that typos do not silently fall back to defaults.
AnalysisConfig config_from_json(std::string_view json_text,
                                AnalysisConfig base = {});

// Spreadsheet-style labels: 0 -> "A", 25 -> "Z", 26 -> "AA".
std::string bucket_label(std::size_t index);

}  // namespace teamdiv
