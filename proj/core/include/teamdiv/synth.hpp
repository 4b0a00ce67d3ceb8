#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "teamdiv/corpus.hpp"

namespace teamdiv {

// Synthetic world:
//  * topics [0, n_expertise_clusters * topics_per_cluster) are split into
//    clusters; the rest are general topics used only by domain papers;
//  * each author has a home cluster and a specialty, where specialty j of a
//    cluster is the cluster's topic set minus its j-th topic;
//  * every analysis paper gets a team whose members come from m distinct
//    clusters, m - 1 ~ Binomial(min(size, clusters) - 1, team_spread);
//  * citations = min_citations + NegBin(citation_mean * exp(coupling * (m - 1)),
//    citation_noise);
//  * each author gets backfill papers in the window before their first
//    analysis paper; with probability cluster_mix a backfill paper is about
//    a random foreign cluster instead of the author's own specialty;
//  * single-author domain papers on general topics broaden the background.
struct SynthParams {
  std::uint64_t seed = 1;
  std::size_t n_authors = 70000;
  std::size_t n_topics = 120;
  std::size_t n_papers = 20000;
  int year_start = 2010;
  int year_end = 2015;
  int window_years = 5;
  // Weights for team sizes 2, 3, ..., 12.
  std::vector<double> team_size_weights = {0.30, 0.28, 0.18, 0.10, 0.06, 0.03,
                                           0.02, 0.01, 0.01, 0.005, 0.005};
  std::size_t n_expertise_clusters = 12;
  std::size_t topics_per_cluster = 6;
  std::size_t specialties_per_cluster = 2;
  double cluster_mix = 0.05;
  double team_spread = 0.35;
  double coupling = 0.0;
  double citation_mean = 40.0;
  double citation_noise = 2.0;
  std::int64_t min_citations = 2;
  double domain_paper_fraction = 0.5;
  int backfill_min = 1;
  int backfill_max = 2;

  // Throws std::invalid_argument for out-of-range values or an infeasible
  // world (a team larger than the authors available to it).
  void validate() const;

  friend bool operator==(const SynthParams&, const SynthParams&) = default;
};

inline constexpr std::size_t kMinTeamSize = 2;
inline constexpr std::size_t kMaxTeamSize = 12;

// Builds the corpus; identical params give an identical corpus. Analysis
// papers ("p..."), backfill papers ("b...") and domain papers ("d...") are
// emitted in that order.
Corpus generate_corpus(const SynthParams& params);

std::string synth_topic_name(std::size_t topic, const SynthParams& params);
std::string synth_author_name(std::size_t author, const SynthParams& params);

// Topic indices of a cluster specialty, ascending.
std::vector<std::size_t> specialty_topics(const SynthParams& params, std::size_t cluster,
                                          std::size_t specialty);

// JSON echo including the generator algorithm identifier.
std::string synth_params_to_json(const SynthParams& params);
// Overlays keys from `json_text` onto `base`; unknown keys are rejected.
SynthParams synth_params_from_json(std::string_view json_text, SynthParams base = {});

}  // namespace teamdiv
