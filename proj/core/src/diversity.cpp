#include "teamdiv/diversity.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <istream>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "csv_util.hpp"

namespace teamdiv {

double cosine_distance(const ExpertiseVector& u, const ExpertiseVector& v) {
  if (u.empty() || v.empty()) throw std::domain_error("cosine distance of an empty vector");
  const auto a = u.by_topic();
  const auto b = v.by_topic();
  double dot = 0.0;
  for (std::size_t i = 0, j = 0; i < a.size() && j < b.size();) {
    if (a[i].topic == b[j].topic) {
      dot += a[i].weight * b[j].weight;
      ++i;
      ++j;
    } else if (a[i].topic < b[j].topic) {
      ++i;
    } else {
      ++j;
    }
  }
  double d = 1.0 - dot / (u.norm() * v.norm());
  if (d < kDistanceClamp) d = 0.0;
  if (d > 1.0 - kDistanceClamp) d = 1.0;
  return d;
}

namespace {

// Positions of usable (nonempty) members sorted by owner.
std::vector<std::size_t> usable_by_owner(std::span<const ExpertiseVector> team) {
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < team.size(); ++i) {
    if (!team[i].empty()) order.push_back(i);
  }
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return team[x].owner() < team[y].owner();
  });
  return order;
}

}  // namespace

std::vector<double> pairwise_distances(std::span<const ExpertiseVector> team) {
  const auto order = usable_by_owner(team);
  if (order.size() < 2) {
    throw std::invalid_argument("pairwise distances need at least two nonempty vectors");
  }
  std::vector<double> out;
  out.reserve(order.size() * (order.size() - 1) / 2);
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (std::size_t j = i + 1; j < order.size(); ++j) {
      out.push_back(cosine_distance(team[order[i]], team[order[j]]));
    }
  }
  return out;
}

double max_distance(std::span<const ExpertiseVector> team) {
  const auto d = pairwise_distances(team);
  return *std::max_element(d.begin(), d.end());
}

namespace {

bool is_edge(double distance, double threshold, ThresholdMode mode) {
  return mode == ThresholdMode::kStrict ? distance < threshold : distance <= threshold;
}

std::vector<std::size_t> vertex_order(std::span<const ExpertiseVector> team) {
  std::vector<std::size_t> order(team.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return team[x].owner() < team[y].owner();
  });
  return order;
}

}  // namespace

AuthorSimilarityGraph build_author_graph(std::span<const ExpertiseVector> team,
                                         double threshold, ThresholdMode mode) {
  const auto order = vertex_order(team);
  AuthorSimilarityGraph graph;
  graph.vertices.reserve(order.size());
  for (std::size_t i : order) graph.vertices.push_back(team[i].owner());
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto& u = team[order[i]];
    if (u.empty()) continue;
    for (std::size_t j = i + 1; j < order.size(); ++j) {
      const auto& v = team[order[j]];
      if (v.empty()) continue;
      if (is_edge(cosine_distance(u, v), threshold, mode)) graph.edges.emplace_back(i, j);
    }
  }
  return graph;
}

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), rank_(n, 0) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<unsigned char> rank_;
};

}  // namespace

Components connected_components(const AuthorSimilarityGraph& graph) {
  const std::size_t n = graph.vertices.size();
  DisjointSets sets(n);
  for (const auto& [u, v] : graph.edges) {
    if (u >= n || v >= n) throw std::invalid_argument("edge references a missing vertex");
    if (u == v) throw std::invalid_argument("self-loop in author graph");
    sets.unite(u, v);
  }

  // Visit vertices by author id so that component numbers follow the
  // smallest member id, whatever order the vertices are stored in.
  std::vector<std::size_t> by_id(n);
  std::iota(by_id.begin(), by_id.end(), std::size_t{0});
  std::sort(by_id.begin(), by_id.end(), [&](std::size_t a, std::size_t b) {
    return graph.vertices[a] < graph.vertices[b];
  });

  constexpr auto kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> root_label(n, kUnset);
  Components out;
  out.membership.assign(n, 0);
  for (std::size_t v : by_id) {
    auto& label = root_label[sets.find(v)];
    if (label == kUnset) label = out.count++;
    out.membership[v] = label;
  }
  return out;
}

DiversityCategory categorize(std::int64_t n_components) {
  if (n_components < 1) throw std::domain_error("component count must be >= 1");
  if (n_components <= 2) return DiversityCategory::kLow;
  if (n_components <= 4) return DiversityCategory::kModerate;
  if (n_components <= 6) return DiversityCategory::kHigh;
  return DiversityCategory::kVeryHigh;
}

std::string_view category_name(DiversityCategory category) {
  switch (category) {
    case DiversityCategory::kLow: return "low";
    case DiversityCategory::kModerate: return "moderate";
    case DiversityCategory::kHigh: return "high";
    case DiversityCategory::kVeryHigh: return "very_high";
  }
  return "unknown";
}

std::optional<DiversityCategory> parse_category(std::string_view name) {
  for (auto c : {DiversityCategory::kLow, DiversityCategory::kModerate,
                 DiversityCategory::kHigh, DiversityCategory::kVeryHigh}) {
    if (category_name(c) == name) return c;
  }
  return std::nullopt;
}

PaperDiversity assess_team(std::string paper_id, std::span<const ExpertiseVector> team,
                           double threshold, ThresholdMode mode) {
  const auto order = vertex_order(team);
  const std::size_t n = order.size();

  PaperDiversity out;
  out.paper_id = std::move(paper_id);
  out.n_authors = n;

  DisjointSets sets(n);
  std::size_t usable = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& u = team[order[i]];
    if (u.empty()) {
      ++out.excluded_authors;
      continue;
    }
    ++usable;
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto& v = team[order[j]];
      if (v.empty()) continue;
      const double d = cosine_distance(u, v);
      ++out.pair_count;
      if (!out.max_distance || d > *out.max_distance) out.max_distance = d;
      if (is_edge(d, threshold, mode)) sets.unite(i, j);
    }
  }
  if (usable < 2) out.max_distance.reset();

  std::size_t roots = 0;
  for (std::size_t i = 0; i < n; ++i) roots += sets.find(i) == i ? 1 : 0;
  out.n_components = roots;
  if (n > 0) out.category = categorize(static_cast<std::int64_t>(roots));
  return out;
}

void write_metrics_csv(std::ostream& out, std::span<const PaperDiversity> rows) {
  out << "paper_id,n_authors,pair_count,max_distance,n_components,category,excluded_authors\n";
  char buf[64];
  for (const auto& r : rows) {
    out << detail::csv_escape(r.paper_id) << ',' << r.n_authors << ',' << r.pair_count << ',';
    if (r.max_distance) {
      std::snprintf(buf, sizeof buf, "%.17g", *r.max_distance);
      out << buf;
    }
    out << ',' << r.n_components << ',' << category_name(r.category) << ','
        << r.excluded_authors << '\n';
  }
}

namespace {

template <typename T>
T parse_number(std::string_view field, std::size_t line) {
  T value{};
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw std::runtime_error("metrics line " + std::to_string(line) + ": bad number '" +
                             std::string(field) + "'");
  }
  return value;
}

}  // namespace

std::vector<PaperDiversity> read_metrics_csv(std::istream& in) {
  std::vector<PaperDiversity> rows;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (line == 1 || text.empty()) continue;
    if (text.back() == '\r') text.pop_back();
    const auto fields = detail::split_csv_line(text);
    if (fields.size() != 7) {
      throw std::runtime_error("metrics line " + std::to_string(line) + ": expected 7 fields");
    }
    PaperDiversity r;
    r.paper_id = fields[0];
    r.n_authors = parse_number<std::size_t>(fields[1], line);
    r.pair_count = parse_number<std::size_t>(fields[2], line);
    if (!fields[3].empty()) r.max_distance = std::stod(fields[3]);
    r.n_components = parse_number<std::size_t>(fields[4], line);
    auto category = parse_category(fields[5]);
    if (!category) {
      throw std::runtime_error("metrics line " + std::to_string(line) + ": bad category");
    }
    r.category = *category;
    r.excluded_authors = parse_number<std::size_t>(fields[6], line);
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace teamdiv
