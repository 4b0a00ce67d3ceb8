#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "teamdiv/report.hpp"

namespace teamdiv {

enum class OutputFormat { kCsv, kMarkdown, kSvg };

std::vector<OutputFormat> all_output_formats();
// Accepts "csv", "markdown" (or "md"), "svg" and "all"; comma-separated
// lists are allowed. Throws std::invalid_argument for anything else.
std::vector<OutputFormat> parse_output_formats(const std::string& spec);

// Table 1: bucket,citation_lo,citation_hi,citation_median,n_papers
std::string render_table1_csv(const AnalysisReport& report);
// Table 2: bucket,zeros,ones,ratio
std::string render_table2_csv(const AnalysisReport& report);
// Table 3: per-category counts and percentages, total and the
// (high + very_high) / low ratio, followed by an ALL row.
std::string render_table3_csv(const AnalysisReport& report);
std::string render_markdown(const AnalysisReport& report);
std::string render_histogram_svg(const AnalysisReport& report);
// Ratio against median on a logarithmic citation axis, one marker per
// bucket with a defined ratio.
std::string render_ratio_svg(const AnalysisReport& report);
std::string render_delta_svg(const AnalysisReport& report);

// Writes the selected artifacts under `out_dir`:
//   tables/table{1,2,3}.csv, figures/fig{2,3,4}.svg, report.md
// and always config.json. Throws std::runtime_error if a file cannot be
// written.
void render(const AnalysisReport& report, const std::filesystem::path& out_dir,
            std::span<const OutputFormat> formats);

// Reads tables/table{1,2,3}.csv back into BucketStats (ALL row excluded).
// Derived fields are recomputed from the counts.
std::vector<BucketStats> read_bucket_tables(const std::filesystem::path& out_dir);

// Writes `contents` to `path`, creating parent directories.
void write_text_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace teamdiv
