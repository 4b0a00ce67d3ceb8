#include "teamdiv/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "csv_util.hpp"
#include "teamdiv/config.hpp"

namespace teamdiv {

std::vector<OutputFormat> all_output_formats() {
  return {OutputFormat::kCsv, OutputFormat::kMarkdown, OutputFormat::kSvg};
}

std::vector<OutputFormat> parse_output_formats(const std::string& spec) {
  std::vector<OutputFormat> out;
  std::stringstream ss(spec);
  std::string item;
  auto add = [&](OutputFormat f) {
    if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
  };
  while (std::getline(ss, item, ',')) {
    if (item == "all") {
      for (auto f : all_output_formats()) add(f);
    } else if (item == "csv") {
      add(OutputFormat::kCsv);
    } else if (item == "markdown" || item == "md") {
      add(OutputFormat::kMarkdown);
    } else if (item == "svg") {
      add(OutputFormat::kSvg);
    } else {
      throw std::invalid_argument("unknown output format '" + item + "'");
    }
  }
  if (out.empty()) throw std::invalid_argument("no output format given");
  return out;
}

namespace {

std::string fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  std::string s = buf;
  if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

std::string exact(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

// Readable form for config values in prose.
std::string short_number(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", value);
  return buf;
}

std::string p_text(double p) { return p < 0.0001 ? "< 0.0001" : fixed(p, 4); }

std::string range_text(const CitationRange& r) {
  if (!r.hi) return "c >= " + std::to_string(r.lo);
  return std::to_string(r.lo) + " <= c < " + std::to_string(*r.hi);
}

std::string optional_fixed(const std::optional<double>& v, int decimals) {
  return v ? fixed(*v, decimals) : std::string();
}

std::string optional_exact(const std::optional<double>& v) {
  return v ? exact(*v) : std::string();
}

void table3_row(std::ostringstream& out, const BucketStats& s) {
  out << detail::csv_escape(s.bucket.label);
  for (auto c : s.category_counts) out << ',' << c;
  for (auto p : s.category_percentages) out << ',' << fixed(p, 2);
  out << ',' << s.n_papers << ',' << optional_fixed(high_to_low_ratio(s), 4) << '\n';
}

}  // namespace

std::string render_table1_csv(const AnalysisReport& report) {
  std::ostringstream out;
  out << "bucket,citation_lo,citation_hi,citation_median,n_papers\n";
  for (const auto& s : report.buckets) {
    out << s.bucket.label << ',' << s.range.lo << ','
        << (s.range.hi ? std::to_string(*s.range.hi) : std::string()) << ','
        << optional_exact(s.citation_median) << ',' << s.n_papers << '\n';
  }
  return out.str();
}

std::string render_table2_csv(const AnalysisReport& report) {
  std::ostringstream out;
  out << "bucket,zeros,ones,ratio\n";
  for (const auto& s : report.buckets) {
    out << s.bucket.label << ',' << s.zeros << ',' << s.ones << ','
        << optional_fixed(s.one_zero_ratio, 4) << '\n';
  }
  return out.str();
}

std::string render_table3_csv(const AnalysisReport& report) {
  std::ostringstream out;
  out << "bucket,low,moderate,high,very_high,low_pct,moderate_pct,high_pct,very_high_pct,"
         "total,high_very_high_over_low\n";
  for (const auto& s : report.buckets) table3_row(out, s);
  table3_row(out, report.overall);
  return out.str();
}

std::string render_markdown(const AnalysisReport& report) {
  const auto& cfg = report.config;
  std::ostringstream md;
  md << "# Team expertise diversity report\n\n";
  md << "Analysis set: " << report.analysis_set_size << " papers published " << cfg.year_start
     << "-" << cfg.year_end << " with at least " << cfg.min_citations
     << " citations and at least " << cfg.min_authors << " authors. Author profiles use the "
     << cfg.window_years << " preceding years and the top " << cfg.top_k
     << " background-adjusted topics; authors are linked when their cosine distance is "
     << (cfg.inclusive_threshold ? "at most " : "below ") << short_number(cfg.edge_threshold) << ".\n\n";

  md << "## Table 1. Citation buckets\n\n";
  md << "| Bucket | Citation range (c) | Citation median | Papers |\n";
  md << "|---|---|---:|---:|\n";
  for (const auto& s : report.buckets) {
    md << "| " << s.bucket.label << " | " << range_text(s.range) << " | "
       << (s.citation_median ? exact(*s.citation_median) : "n/a") << " | " << s.n_papers
       << " |\n";
  }

  md << "\n## Table 2. Papers with maximum cosine distance 0 and 1\n\n";
  md << "| Bucket | # of 0s | # of 1s | #1/#0 |\n";
  md << "|---|---:|---:|---:|\n";
  for (const auto& s : report.buckets) {
    md << "| " << s.bucket.label << " | " << s.zeros << " | " << s.ones << " | "
       << (s.one_zero_ratio ? fixed(*s.one_zero_ratio, 2) : "n/a") << " |\n";
  }

  md << "\n## Table 3. Diversity categories by bucket\n\n";
  md << "| Bucket | low | moderate | high | very high | Total | (high + very high) / low |\n";
  md << "|---|---:|---:|---:|---:|---:|---:|\n";
  auto t3 = [&](const BucketStats& s) {
    md << "| " << s.bucket.label;
    for (auto p : s.category_percentages) md << " | " << fixed(p, 2) << "%";
    const auto r = high_to_low_ratio(s);
    md << " | " << s.n_papers << " | " << (r ? fixed(*r, 2) : "n/a") << " |\n";
  };
  for (const auto& s : report.buckets) t3(s);
  t3(report.overall);

  md << "\n## Distribution of maximum cosine distance\n\n";
  md << "| Max distance | Papers |\n|---|---:|\n";
  const auto& h = report.histogram;
  md << "| exactly 0 | " << h.zero_spike << " |\n";
  for (std::size_t i = 0; i < h.bins.size(); ++i) {
    md << "| " << (i == 0 ? "(" : "[") << fixed(h.bin_lower(i), 2) << ", "
       << fixed(h.bin_upper(i), 2) << ") | " << h.bins[i] << " |\n";
  }
  md << "| exactly 1 | " << h.one_spike << " |\n";

  md << "\n## Correlations with the citation median\n\n";
  md << "| Series | r | p | n | Significant (p < 0.05) |\n|---|---:|---:|---:|---|\n";
  auto corr_row = [&](const LabeledCorrelation& c) {
    md << "| " << c.label << " | ";
    if (c.result) {
      md << fixed(c.result->r, 3) << " | " << p_text(c.result->p_value) << " | "
         << c.result->n << " | " << (is_significant(c.result->p_value) ? "yes" : "no");
    } else {
      md << "n/a | n/a | n/a | " << c.note;
    }
    md << " |\n";
  };
  corr_row(report.ratio_vs_median);
  for (const auto& c : report.category_correlations) corr_row(c);

  md << "\n## Chi-square tests on diversity categories\n\n";
  md << "| Comparison | Chi-square | df | p | Significant (p < 0.05) |\n";
  md << "|---|---:|---:|---:|---|\n";
  for (const auto& t : report.chi_square_tests) {
    md << "| " << t.label << " | ";
    if (t.result) {
      md << fixed(t.result->statistic, 3) << " | " << t.result->df << " | "
         << p_text(t.result->p_value) << " | "
         << (is_significant(t.result->p_value) ? "yes" : "no");
    } else {
      md << "n/a | n/a | n/a | " << t.note;
    }
    md << " |\n";
  }

  md << "\n## Category share differences against bucket " << cfg.baseline_bucket
     << " (percentage points)\n\n";
  md << "| Bucket | low | moderate | high | very high |\n|---|---:|---:|---:|---:|\n";
  for (const auto& d : report.category_deltas) {
    md << "| " << d.bucket.label;
    for (auto v : d.delta) md << " | " << fixed(v, 2);
    md << " |\n";
  }

  if (!report.warnings.empty()) {
    md << "\n## Warnings\n\n";
    for (const auto& w : report.warnings) md << "- " << w << "\n";
  }
  return md.str();
}

namespace {

constexpr double kWidth = 720;
constexpr double kHeight = 420;
constexpr double kLeft = 70;
constexpr double kRight = 20;
constexpr double kTop = 40;
constexpr double kBottom = 60;
constexpr const char* kCategoryColors[kCategoryCount] = {"#4c78a8", "#f58518", "#54a24b",
                                                         "#e45756"};

std::string svg_open(const std::string& title) {
  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
    << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
  s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\" "
       "font-size=\"15\">"
    << title << "</text>\n";
  return s.str();
}

std::string text(double x, double y, const std::string& body, const char* anchor = "middle",
                 int size = 11) {
  std::ostringstream s;
  s << "<text x=\"" << fixed(x, 1) << "\" y=\"" << fixed(y, 1) << "\" text-anchor=\"" << anchor
    << "\" font-family=\"sans-serif\" font-size=\"" << size << "\">" << body << "</text>\n";
  return s.str();
}

std::string line(double x1, double y1, double x2, double y2, const char* stroke = "#333") {
  std::ostringstream s;
  s << "<line x1=\"" << fixed(x1, 1) << "\" y1=\"" << fixed(y1, 1) << "\" x2=\"" << fixed(x2, 1)
    << "\" y2=\"" << fixed(y2, 1) << "\" stroke=\"" << stroke << "\"/>\n";
  return s.str();
}

std::string rect(double x, double y, double w, double h, const char* fill) {
  std::ostringstream s;
  s << "<rect x=\"" << fixed(x, 1) << "\" y=\"" << fixed(y, 1) << "\" width=\""
    << fixed(std::max(w, 0.0), 1) << "\" height=\"" << fixed(std::max(h, 0.0), 1)
    << "\" fill=\"" << fill << "\"/>\n";
  return s.str();
}

double nice_max(double v) {
  if (v <= 0) return 1.0;
  const double mag = std::pow(10.0, std::floor(std::log10(v)));
  for (double step : {1.0, 2.0, 5.0, 10.0}) {
    if (step * mag >= v) return step * mag;
  }
  return 10.0 * mag;
}

}  // namespace

std::string render_histogram_svg(const AnalysisReport& report) {
  const auto& h = report.histogram;
  std::vector<std::pair<std::string, std::size_t>> bars;
  bars.emplace_back("0", h.zero_spike);
  for (std::size_t i = 0; i < h.bins.size(); ++i) bars.emplace_back(fixed(h.bin_lower(i), 2), h.bins[i]);
  bars.emplace_back("1", h.one_spike);

  std::size_t peak = 0;
  for (const auto& b : bars) peak = std::max(peak, b.second);
  const double y_max = nice_max(static_cast<double>(peak));
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  const double slot = plot_w / static_cast<double>(bars.size());

  std::ostringstream s;
  s << svg_open("Maximum cosine distance per paper");
  s << line(kLeft, kTop + plot_h, kLeft + plot_w, kTop + plot_h);
  s << line(kLeft, kTop, kLeft, kTop + plot_h);
  for (int t = 0; t <= 4; ++t) {
    const double v = y_max * t / 4.0;
    const double y = kTop + plot_h - plot_h * t / 4.0;
    s << text(kLeft - 6, y + 4, fixed(v, 0), "end");
  }
  for (std::size_t i = 0; i < bars.size(); ++i) {
    const double bh = plot_h * static_cast<double>(bars[i].second) / y_max;
    const bool spike = i == 0 || i + 1 == bars.size();
    s << rect(kLeft + slot * i + 1, kTop + plot_h - bh, slot - 2, bh,
              spike ? "#e45756" : "#4c78a8");
    if (spike || i % 4 == 1) s << text(kLeft + slot * (i + 0.5), kTop + plot_h + 16, bars[i].first);
  }
  s << text(kLeft + plot_w / 2, kHeight - 18, "max cosine distance (spikes: exactly 0 and 1)");
  s << text(18, kTop + plot_h / 2, "papers", "middle");
  s << "</svg>\n";
  return s.str();
}

std::string render_ratio_svg(const AnalysisReport& report) {
  struct Point {
    std::string label;
    double median;
    double ratio;
  };
  std::vector<Point> points;
  for (const auto& b : report.buckets) {
    if (b.n_papers > 0 && b.one_zero_ratio && b.citation_median && *b.citation_median > 0) {
      points.push_back({b.bucket.label, *b.citation_median, *b.one_zero_ratio});
    }
  }
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;

  double lo = 0, hi = 1, y_max = 1;
  if (!points.empty()) {
    double min_m = points.front().median, max_m = min_m, max_r = 0;
    for (const auto& p : points) {
      min_m = std::min(min_m, p.median);
      max_m = std::max(max_m, p.median);
      max_r = std::max(max_r, p.ratio);
    }
    lo = std::floor(std::log10(min_m));
    hi = std::max(lo + 1, std::ceil(std::log10(max_m)));
    y_max = nice_max(max_r * 1.05);
  }
  auto px = [&](double m) { return kLeft + plot_w * (std::log10(m) - lo) / (hi - lo); };
  auto py = [&](double r) { return kTop + plot_h - plot_h * r / y_max; };

  std::ostringstream s;
  s << svg_open("#1/#0 ratio against citation median (log scale)");
  s << line(kLeft, kTop + plot_h, kLeft + plot_w, kTop + plot_h);
  s << line(kLeft, kTop, kLeft, kTop + plot_h);
  for (double d = lo; d <= hi + 1e-9; d += 1.0) {
    const double x = kLeft + plot_w * (d - lo) / (hi - lo);
    s << line(x, kTop + plot_h, x, kTop + plot_h + 5);
    s << text(x, kTop + plot_h + 18, fixed(std::pow(10.0, d), 0));
  }
  for (int t = 0; t <= 4; ++t) {
    const double v = y_max * t / 4.0;
    s << text(kLeft - 6, py(v) + 4, fixed(v, 1), "end");
  }
  if (points.size() > 1) {
    s << "<polyline fill=\"none\" stroke=\"#4c78a8\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < points.size(); ++i) {
      s << (i ? " " : "") << fixed(px(points[i].median), 1) << ','
        << fixed(py(points[i].ratio), 1);
    }
    s << "\"/>\n";
  }
  for (const auto& p : points) {
    s << "<circle class=\"point\" cx=\"" << fixed(px(p.median), 1) << "\" cy=\""
      << fixed(py(p.ratio), 1) << "\" r=\"4\" fill=\"#4c78a8\"><title>" << p.label
      << ": median " << exact(p.median) << ", ratio " << fixed(p.ratio, 2)
      << "</title></circle>\n";
    s << text(px(p.median), py(p.ratio) - 8, p.label);
  }
  s << text(kLeft + plot_w / 2, kHeight - 18, "citation median (log scale)");
  s << text(18, kTop + plot_h / 2, "#1/#0");
  s << "</svg>\n";
  return s.str();
}

std::string render_delta_svg(const AnalysisReport& report) {
  std::vector<const CategoryDelta*> rows;
  for (const auto& d : report.category_deltas) {
    if (d.bucket.label != report.config.baseline_bucket) rows.push_back(&d);
  }
  double extent = 0.0;
  for (const auto* d : rows) {
    for (double v : d->delta) extent = std::max(extent, std::fabs(v));
  }
  extent = nice_max(extent);
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  const double zero_y = kTop + plot_h / 2;
  auto py = [&](double v) { return zero_y - (plot_h / 2) * v / extent; };

  std::ostringstream s;
  s << svg_open("Category share difference against bucket " + report.config.baseline_bucket);
  s << line(kLeft, kTop, kLeft, kTop + plot_h);
  s << line(kLeft, zero_y, kLeft + plot_w, zero_y);
  for (int t = -2; t <= 2; ++t) {
    const double v = extent * t / 2.0;
    s << text(kLeft - 6, py(v) + 4, fixed(v, 1), "end");
  }
  const double group = rows.empty() ? plot_w : plot_w / static_cast<double>(rows.size());
  const double bar = group / (kCategoryCount + 1);
  for (std::size_t g = 0; g < rows.size(); ++g) {
    for (std::size_t c = 0; c < kCategoryCount; ++c) {
      const double v = rows[g]->delta[c];
      const double x = kLeft + group * g + bar * (c + 0.5);
      s << rect(x, std::min(py(v), zero_y), bar - 1, std::fabs(py(v) - zero_y),
                kCategoryColors[c]);
    }
    s << text(kLeft + group * (g + 0.5), kTop + plot_h + 16, rows[g]->bucket.label);
  }
  for (std::size_t c = 0; c < kCategoryCount; ++c) {
    const double x = kLeft + 10 + 120.0 * c;
    s << rect(x, kHeight - 30, 10, 10, kCategoryColors[c]);
    s << text(x + 14, kHeight - 21, std::string(category_name(static_cast<DiversityCategory>(c))),
              "start");
  }
  s << text(18, kTop + plot_h / 2, "pp");
  s << "</svg>\n";
  return s.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& contents) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << contents;
  out.close();
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

void render(const AnalysisReport& report, const std::filesystem::path& out_dir,
            std::span<const OutputFormat> formats) {
  auto wants = [&](OutputFormat f) {
    return std::find(formats.begin(), formats.end(), f) != formats.end();
  };
  if (wants(OutputFormat::kCsv)) {
    write_text_file(out_dir / "tables" / "table1.csv", render_table1_csv(report));
    write_text_file(out_dir / "tables" / "table2.csv", render_table2_csv(report));
    write_text_file(out_dir / "tables" / "table3.csv", render_table3_csv(report));
  }
  if (wants(OutputFormat::kSvg)) {
    write_text_file(out_dir / "figures" / "fig2.svg", render_histogram_svg(report));
    write_text_file(out_dir / "figures" / "fig3.svg", render_ratio_svg(report));
    write_text_file(out_dir / "figures" / "fig4.svg", render_delta_svg(report));
  }
  if (wants(OutputFormat::kMarkdown)) {
    write_text_file(out_dir / "report.md", render_markdown(report));
  }
  write_text_file(out_dir / "config.json", config_to_json(report.config));
}

namespace {

std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::vector<std::vector<std::string>> rows;
  std::string text;
  bool header = true;
  while (std::getline(in, text)) {
    if (header) {
      header = false;
      continue;
    }
    if (text.empty()) continue;
    rows.push_back(detail::split_csv_line(text));
  }
  return rows;
}

std::int64_t to_int(const std::string& s) { return std::stoll(s); }

}  // namespace

std::vector<BucketStats> read_bucket_tables(const std::filesystem::path& out_dir) {
  const auto t1 = read_csv(out_dir / "tables" / "table1.csv");
  const auto t2 = read_csv(out_dir / "tables" / "table2.csv");
  const auto t3 = read_csv(out_dir / "tables" / "table3.csv");

  std::vector<BucketStats> out;
  std::map<std::string, std::size_t> index;
  for (const auto& row : t1) {
    if (row.size() != 5) throw std::runtime_error("table1.csv: expected 5 columns");
    BucketStats s;
    s.bucket = {out.size(), row[0]};
    s.range.lo = to_int(row[1]);
    if (!row[2].empty()) s.range.hi = to_int(row[2]);
    if (!row[3].empty()) s.citation_median = std::stod(row[3]);
    s.n_papers = static_cast<std::size_t>(to_int(row[4]));
    index[row[0]] = out.size();
    out.push_back(std::move(s));
  }
  for (const auto& row : t2) {
    if (row.size() != 4) throw std::runtime_error("table2.csv: expected 4 columns");
    auto it = index.find(row[0]);
    if (it == index.end()) throw std::runtime_error("table2.csv: unknown bucket " + row[0]);
    out[it->second].zeros = static_cast<std::size_t>(to_int(row[1]));
    out[it->second].ones = static_cast<std::size_t>(to_int(row[2]));
  }
  for (const auto& row : t3) {
    if (row.size() != 11) throw std::runtime_error("table3.csv: expected 11 columns");
    auto it = index.find(row[0]);
    if (it == index.end()) continue;  // ALL row
    for (std::size_t c = 0; c < kCategoryCount; ++c) {
      out[it->second].category_counts[c] = to_int(row[1 + c]);
    }
  }
  for (auto& s : out) finalize_bucket(s);
  return out;
}

}  // namespace teamdiv
