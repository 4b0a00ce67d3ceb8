#include "teamdiv/config.hpp"

#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace teamdiv {

using nlohmann::json;

std::vector<CitationRange> default_bucket_bounds() {
  return {{2, 5},   {5, 10},  {10, 15}, {15, 20},   {20, 30},
          {30, 40}, {40, 50}, {50, 100}, {100, 150}, {150, std::nullopt}};
}

void AnalysisConfig::validate() const {
  if (window_years < 1) throw std::invalid_argument("window_years must be >= 1");
  if (top_k < 1) throw std::invalid_argument("top_k must be >= 1");
  if (!(edge_threshold >= 0.0 && edge_threshold <= 1.0)) {
    throw std::invalid_argument("edge_threshold must lie in [0, 1]");
  }
  if (year_start > year_end) throw std::invalid_argument("year_range start exceeds end");
  if (min_citations < 0) throw std::invalid_argument("min_citations must be >= 0");
  if (min_authors < 1) throw std::invalid_argument("min_authors must be >= 1");
  if (!(zero_one_epsilon >= 0.0 && zero_one_epsilon < 0.5)) {
    throw std::invalid_argument("zero_one_epsilon must lie in [0, 0.5)");
  }
  if (!(histogram_bin_width > 0.0 && histogram_bin_width <= 1.0)) {
    throw std::invalid_argument("histogram_bin_width must lie in (0, 1]");
  }
  if (bucket_bounds.empty()) throw std::invalid_argument("bucket_bounds is empty");
  if (bucket_bounds.front().lo != min_citations) {
    throw std::invalid_argument("first bucket must start at min_citations");
  }
  for (std::size_t i = 0; i < bucket_bounds.size(); ++i) {
    const auto& range = bucket_bounds[i];
    const bool last = i + 1 == bucket_bounds.size();
    if (last) {
      if (range.hi) throw std::invalid_argument("last bucket must be unbounded");
      break;
    }
    if (!range.hi) throw std::invalid_argument("only the last bucket may be unbounded");
    if (*range.hi <= range.lo) throw std::invalid_argument("bucket range is empty");
    if (bucket_bounds[i + 1].lo != *range.hi) {
      throw std::invalid_argument("bucket ranges must be contiguous");
    }
  }
  bool baseline_found = false;
  for (std::size_t i = 0; i < bucket_bounds.size(); ++i) {
    if (bucket_label(i) == baseline_bucket) baseline_found = true;
  }
  if (!baseline_found) throw std::invalid_argument("baseline_bucket names no bucket");
}

std::string bucket_label(std::size_t index) {
  std::string label;
  std::size_t n = index + 1;
  while (n > 0) {
    --n;
    label.insert(label.begin(), static_cast<char>('A' + n % 26));
    n /= 26;
  }
  return label;
}

std::string config_to_json(const AnalysisConfig& config) {
  json bounds = json::array();
  for (const auto& range : config.bucket_bounds) {
    bounds.push_back(range.hi ? json::array({range.lo, *range.hi})
                              : json::array({json(range.lo), json(nullptr)}));
  }
  json j = {
      {"window_years", config.window_years},
      {"top_k", config.top_k},
      {"edge_threshold", config.edge_threshold},
      {"inclusive_threshold", config.inclusive_threshold},
      {"year_range", {config.year_start, config.year_end}},
      {"min_citations", config.min_citations},
      {"min_authors", config.min_authors},
      {"bucket_bounds", bounds},
      {"zero_one_epsilon", config.zero_one_epsilon},
      {"histogram_bin_width", config.histogram_bin_width},
      {"baseline_bucket", config.baseline_bucket},
  };
  return j.dump(2) + "\n";
}

namespace {

template <typename T>
T get_as(const json& j, const char* key) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    throw std::invalid_argument(std::string("config key '") + key + "' has the wrong type");
  }
}

int get_int(const json& j, const char* key) {
  if (!j.is_number_integer()) {
    throw std::invalid_argument(std::string("config key '") + key + "' must be an integer");
  }
  return j.get<int>();
}

}  // namespace

AnalysisConfig config_from_json(std::string_view json_text, AnalysisConfig base) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");

  for (const auto& [key, value] : j.items()) {
    if (key == "window_years") {
      base.window_years = get_int(value, "window_years");
    } else if (key == "top_k") {
      base.top_k = get_int(value, "top_k");
    } else if (key == "edge_threshold") {
      base.edge_threshold = get_as<double>(value, "edge_threshold");
    } else if (key == "inclusive_threshold") {
      base.inclusive_threshold = get_as<bool>(value, "inclusive_threshold");
    } else if (key == "year_range") {
      if (!value.is_array() || value.size() != 2) {
        throw std::invalid_argument("year_range must be [start, end]");
      }
      base.year_start = get_int(value[0], "year_range");
      base.year_end = get_int(value[1], "year_range");
    } else if (key == "min_citations") {
      base.min_citations = get_int(value, "min_citations");
    } else if (key == "min_authors") {
      base.min_authors = get_int(value, "min_authors");
    } else if (key == "bucket_bounds") {
      if (!value.is_array()) throw std::invalid_argument("bucket_bounds must be an array");
      std::vector<CitationRange> bounds;
      for (const auto& item : value) {
        if (!item.is_array() || item.size() != 2 || !item[0].is_number_integer() ||
            !(item[1].is_null() || item[1].is_number_integer())) {
          throw std::invalid_argument("bucket_bounds entries must be [lo, hi|null]");
        }
        CitationRange range{item[0].get<std::int64_t>(), std::nullopt};
        if (!item[1].is_null()) range.hi = item[1].get<std::int64_t>();
        bounds.push_back(range);
      }
      base.bucket_bounds = std::move(bounds);
    } else if (key == "zero_one_epsilon") {
      base.zero_one_epsilon = get_as<double>(value, "zero_one_epsilon");
    } else if (key == "histogram_bin_width") {
      base.histogram_bin_width = get_as<double>(value, "histogram_bin_width");
    } else if (key == "baseline_bucket") {
      base.baseline_bucket = get_as<std::string>(value, "baseline_bucket");
    } else {
      throw std::invalid_argument("unknown config key '" + key + "'");
    }
  }
  return base;
}

}  // namespace teamdiv
