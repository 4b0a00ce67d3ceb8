#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "teamdiv/expertise.hpp"
#include "teamdiv/ids.hpp"

namespace teamdiv {

// Distances within this much of 0 or 1 snap to the endpoint.
inline constexpr double kDistanceClamp = 1e-12;

// 1 - cos(u, v) for nonnegative sparse vectors, in [0, 1]. Throws
// std::domain_error if either vector is empty.
double cosine_distance(const ExpertiseVector& u, const ExpertiseVector& v);

// All N(N-1)/2 distances among members with nonempty vectors, pairs taken
// in author-id order. Throws std::invalid_argument with fewer than two
// usable members.
std::vector<double> pairwise_distances(std::span<const ExpertiseVector> team);

double max_distance(std::span<const ExpertiseVector> team);

enum class ThresholdMode { kStrict, kInclusive };

// Vertices are sorted by author id; edges hold vertex positions (u < v).
struct AuthorSimilarityGraph {
  std::vector<AuthorId> vertices;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
};

// One vertex per member, including members with empty vectors (which get
// no edges). Edge iff distance < threshold, or <= in inclusive mode.
AuthorSimilarityGraph build_author_graph(std::span<const ExpertiseVector> team,
                                         double threshold,
                                         ThresholdMode mode = ThresholdMode::kStrict);

struct Components {
  std::size_t count = 0;
  // membership[i] is the component of graph.vertices[i]; components are
  // numbered in order of their smallest author id.
  std::vector<std::size_t> membership;
};

// Throws std::invalid_argument for edges that reference missing vertices
// or are self-loops.
Components connected_components(const AuthorSimilarityGraph& graph);

enum class DiversityCategory { kLow, kModerate, kHigh, kVeryHigh };
inline constexpr std::size_t kCategoryCount = 4;

// 1-2 low, 3-4 moderate, 5-6 high, 7+ very high. Throws std::domain_error
// for n < 1.
DiversityCategory categorize(std::int64_t n_components);

std::string_view category_name(DiversityCategory category);
std::optional<DiversityCategory> parse_category(std::string_view name);

struct PaperDiversity {
  std::string paper_id;
  std::size_t n_authors = 0;
  // Over members with nonempty vectors only.
  std::size_t pair_count = 0;
  // Undefined when fewer than two members have nonempty vectors.
  std::optional<double> max_distance;
  std::size_t n_components = 0;
  DiversityCategory category = DiversityCategory::kLow;
  std::size_t excluded_authors = 0;

  friend bool operator==(const PaperDiversity&, const PaperDiversity&) = default;
};

// Both metrics for one team, computing each pairwise distance once.
PaperDiversity assess_team(std::string paper_id, std::span<const ExpertiseVector> team,
                           double threshold, ThresholdMode mode = ThresholdMode::kStrict);

// CSV: paper_id,n_authors,pair_count,max_distance,n_components,category,
// excluded_authors. max_distance is printed with 17 significant digits
// (empty when undefined) so that reading it back is exact.
void write_metrics_csv(std::ostream& out, std::span<const PaperDiversity> rows);
// Throws std::runtime_error on a malformed row.
std::vector<PaperDiversity> read_metrics_csv(std::istream& in);

}  // namespace teamdiv
