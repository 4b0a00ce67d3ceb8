#include "teamdiv/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

#include "json.hpp"
#include "teamdiv/random.hpp"

namespace teamdiv {

using nlohmann::json;

namespace {

std::size_t max_team_size(const SynthParams& p) {
  std::size_t out = 0;
  for (std::size_t i = 0; i < p.team_size_weights.size(); ++i) {
    if (p.team_size_weights[i] > 0.0) out = kMinTeamSize + i;
  }
  return out;
}

std::size_t domain_paper_count(const SynthParams& p) {
  return static_cast<std::size_t>(std::llround(p.domain_paper_fraction *
                                               static_cast<double>(p.n_papers)));
}

bool is_probability(double x) { return x >= 0.0 && x <= 1.0; }

std::string numbered(char prefix, std::size_t n) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%c%07zu", prefix, n);
  return buf;
}

}  // namespace

void SynthParams::validate() const {
  if (n_papers == 0) throw std::invalid_argument("n_papers must be positive");
  if (n_expertise_clusters == 0) throw std::invalid_argument("n_expertise_clusters must be positive");
  if (topics_per_cluster < 2) throw std::invalid_argument("topics_per_cluster must be >= 2");
  if (specialties_per_cluster == 0 || specialties_per_cluster > topics_per_cluster) {
    throw std::invalid_argument("specialties_per_cluster must lie in [1, topics_per_cluster]");
  }
  if (year_start > year_end) throw std::invalid_argument("year_start exceeds year_end");
  if (window_years < 1) throw std::invalid_argument("window_years must be >= 1");
  if (team_size_weights.size() != kMaxTeamSize - kMinTeamSize + 1) {
    throw std::invalid_argument("team_size_weights needs one weight per size 2..12");
  }
  double total = 0.0;
  for (double w : team_size_weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw std::invalid_argument("team_size_weights must be nonnegative");
    }
    total += w;
  }
  if (total <= 0.0) throw std::invalid_argument("team_size_weights are all zero");
  if (!is_probability(cluster_mix)) throw std::invalid_argument("cluster_mix must lie in [0, 1]");
  if (!is_probability(team_spread)) throw std::invalid_argument("team_spread must lie in [0, 1]");
  if (!(coupling >= -1.0 && coupling <= 1.0)) {
    throw std::invalid_argument("coupling must lie in [-1, 1]");
  }
  if (!(citation_mean >= 0.0) || !std::isfinite(citation_mean)) {
    throw std::invalid_argument("citation_mean must be >= 0");
  }
  if (!(citation_noise > 0.0) || !std::isfinite(citation_noise)) {
    throw std::invalid_argument("citation_noise must be > 0");
  }
  if (min_citations < 0) throw std::invalid_argument("min_citations must be >= 0");
  if (!(domain_paper_fraction >= 0.0) || !std::isfinite(domain_paper_fraction)) {
    throw std::invalid_argument("domain_paper_fraction must be >= 0");
  }
  if (backfill_min < 1 || backfill_max < backfill_min) {
    throw std::invalid_argument("backfill counts must satisfy 1 <= min <= max");
  }
  const std::size_t cluster_topics = n_expertise_clusters * topics_per_cluster;
  if (n_topics < cluster_topics + (domain_paper_count(*this) > 0 ? 1 : 0)) {
    throw std::invalid_argument("n_topics too small for the clusters (and general topics)");
  }
  // Authors are spread evenly over clusters; every team must fit in the
  // smallest cluster pool.
  if (n_authors / n_expertise_clusters < max_team_size(*this)) {
    throw std::invalid_argument("infeasible: a team of " + std::to_string(max_team_size(*this)) +
                                " does not fit in a cluster of " +
                                std::to_string(n_authors / n_expertise_clusters) + " authors");
  }
}

std::string synth_topic_name(std::size_t topic, const SynthParams& params) {
  const std::size_t cluster_topics = params.n_expertise_clusters * params.topics_per_cluster;
  return numbered(topic < cluster_topics ? 't' : 'g', topic);
}

std::string synth_author_name(std::size_t author, const SynthParams&) {
  return numbered('a', author);
}

std::vector<std::size_t> specialty_topics(const SynthParams& params, std::size_t cluster,
                                          std::size_t specialty) {
  if (cluster >= params.n_expertise_clusters || specialty >= params.specialties_per_cluster) {
    throw std::out_of_range("no such specialty");
  }
  std::vector<std::size_t> out;
  const std::size_t first = cluster * params.topics_per_cluster;
  for (std::size_t j = 0; j < params.topics_per_cluster; ++j) {
    if (j != specialty) out.push_back(first + j);
  }
  return out;
}

Corpus generate_corpus(const SynthParams& params) {
  params.validate();
  Rng rng(params.seed);
  const std::size_t clusters = params.n_expertise_clusters;
  const std::size_t n_specialties = params.specialties_per_cluster;

  // Balanced home clusters, random order; independent specialties.
  std::vector<std::size_t> home(params.n_authors);
  for (std::size_t i = 0; i < home.size(); ++i) home[i] = i % clusters;
  rng.shuffle(std::span<std::size_t>(home));
  std::vector<std::size_t> specialty(params.n_authors);
  for (auto& s : specialty) s = static_cast<std::size_t>(rng.below(n_specialties));

  std::vector<std::vector<std::size_t>> pools(clusters);
  for (std::size_t a = 0; a < home.size(); ++a) pools[home[a]].push_back(a);
  for (auto& pool : pools) rng.shuffle(std::span<std::size_t>(pool));
  std::vector<std::size_t> cursor(clusters, 0);

  std::vector<std::vector<std::string>> specialty_names(clusters * n_specialties);
  for (std::size_t c = 0; c < clusters; ++c) {
    for (std::size_t s = 0; s < n_specialties; ++s) {
      for (std::size_t t : specialty_topics(params, c, s)) {
        specialty_names[c * n_specialties + s].push_back(synth_topic_name(t, params));
      }
    }
  }

  CorpusBuilder builder;
  std::size_t position = 0;
  auto add = [&](RawRecord r) { builder.add(std::move(r), ++position); };

  const auto year_span = static_cast<std::uint64_t>(params.year_end - params.year_start + 1);
  std::vector<std::vector<int>> analysis_years(params.n_authors);
  std::vector<std::size_t> cluster_order(clusters);
  std::iota(cluster_order.begin(), cluster_order.end(), std::size_t{0});

  for (std::size_t p = 0; p < params.n_papers; ++p) {
    const int year = params.year_start + static_cast<int>(rng.below(year_span));
    const std::size_t size = kMinTeamSize + rng.discrete(params.team_size_weights);
    std::size_t m = 1;
    for (std::size_t i = 1; i < std::min(size, clusters); ++i) {
      if (rng.bernoulli(params.team_spread)) ++m;
    }
    // First m entries of cluster_order become the team's clusters.
    for (std::size_t i = 0; i < m; ++i) {
      std::swap(cluster_order[i],
                cluster_order[i + static_cast<std::size_t>(rng.below(clusters - i))]);
    }
    std::vector<std::size_t> seats(m, 1);
    for (std::size_t i = m; i < size; ++i) ++seats[static_cast<std::size_t>(rng.below(m))];

    RawRecord r;
    r.id = numbered('p', p);
    r.year = year;
    std::vector<std::string> topics;
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t c = cluster_order[i];
      const auto& pool = pools[c];
      for (std::size_t k = 0; k < seats[i]; ++k) {
        const std::size_t a = pool[cursor[c] % pool.size()];
        ++cursor[c];
        r.authors.push_back(synth_author_name(a, params));
        analysis_years[a].push_back(year);
        const auto& names = specialty_names[c * n_specialties + specialty[a]];
        topics.insert(topics.end(), names.begin(), names.end());
      }
    }
    std::sort(topics.begin(), topics.end());
    topics.erase(std::unique(topics.begin(), topics.end()), topics.end());
    r.topics = std::move(topics);
    const double mean =
        params.citation_mean * std::exp(params.coupling * static_cast<double>(m - 1));
    r.citations_5y = params.min_citations +
                     static_cast<std::int64_t>(rng.negative_binomial(mean, params.citation_noise));
    add(std::move(r));
  }

  // Backfill: enough earlier papers that every analysis appearance has a
  // nonempty prior window.
  std::size_t backfill = 0;
  const auto window = params.window_years;
  auto backfill_paper = [&](std::size_t a, int year_lo, int year_hi) {
    std::size_t c = home[a];
    std::size_t s = specialty[a];
    if (clusters > 1 && rng.bernoulli(params.cluster_mix)) {
      c = (c + 1 + static_cast<std::size_t>(rng.below(clusters - 1))) % clusters;
      s = static_cast<std::size_t>(rng.below(n_specialties));
    }
    RawRecord r;
    r.id = numbered('b', backfill++);
    r.year = year_lo + static_cast<int>(rng.below(static_cast<std::uint64_t>(year_hi - year_lo + 1)));
    r.authors = {synth_author_name(a, params)};
    r.topics = specialty_names[c * n_specialties + s];
    add(std::move(r));
  };
  for (std::size_t a = 0; a < params.n_authors; ++a) {
    auto& years = analysis_years[a];
    if (years.empty()) continue;
    std::sort(years.begin(), years.end());
    years.erase(std::unique(years.begin(), years.end()), years.end());
    const auto extra = static_cast<std::uint64_t>(params.backfill_max - params.backfill_min + 1);
    const int count = params.backfill_min + static_cast<int>(rng.below(extra));
    for (int i = 0; i < count; ++i) backfill_paper(a, years[0] - window, years[0] - 1);
    for (std::size_t i = 1; i < years.size(); ++i) {
      if (years[i - 1] < years[i] - window) backfill_paper(a, years[i] - window, years[i] - 1);
    }
  }

  // Domain papers on general topics, one fresh author each.
  const std::size_t cluster_topics = clusters * params.topics_per_cluster;
  const std::size_t general = params.n_topics - cluster_topics;
  const std::size_t per_paper = std::min<std::size_t>(3, general);
  std::vector<std::size_t> general_topics(general);
  std::iota(general_topics.begin(), general_topics.end(), cluster_topics);
  const auto domain_years =
      static_cast<std::uint64_t>(params.year_end - (params.year_start - window) + 1);
  for (std::size_t d = 0, n = domain_paper_count(params); d < n; ++d) {
    for (std::size_t i = 0; i < per_paper; ++i) {
      std::swap(general_topics[i],
                general_topics[i + static_cast<std::size_t>(rng.below(general - i))]);
    }
    RawRecord r;
    r.id = numbered('d', d);
    r.year = params.year_start - window + static_cast<int>(rng.below(domain_years));
    r.authors = {numbered('x', d)};
    for (std::size_t i = 0; i < per_paper; ++i) {
      r.topics.push_back(synth_topic_name(general_topics[i], params));
    }
    add(std::move(r));
  }

  return std::move(builder).build();
}

std::string synth_params_to_json(const SynthParams& p) {
  json j = {
      {"seed", p.seed},
      {"n_authors", p.n_authors},
      {"n_topics", p.n_topics},
      {"n_papers", p.n_papers},
      {"year_range", {p.year_start, p.year_end}},
      {"window_years", p.window_years},
      {"team_size_weights", p.team_size_weights},
      {"n_expertise_clusters", p.n_expertise_clusters},
      {"topics_per_cluster", p.topics_per_cluster},
      {"specialties_per_cluster", p.specialties_per_cluster},
      {"cluster_mix", p.cluster_mix},
      {"team_spread", p.team_spread},
      {"coupling", p.coupling},
      {"citation_mean", p.citation_mean},
      {"citation_noise", p.citation_noise},
      {"min_citations", p.min_citations},
      {"domain_paper_fraction", p.domain_paper_fraction},
      {"backfill_range", {p.backfill_min, p.backfill_max}},
      {"rng_algorithm", std::string(kRngAlgorithm)},
  };
  return j.dump(2) + "\n";
}

namespace {

template <typename T>
T read_key(const json& j, const std::string& key) {
  if constexpr (std::is_integral_v<T>) {
    if (!j.is_number_integer()) {
      throw std::invalid_argument("synth key '" + key + "' must be an integer");
    }
    if constexpr (std::is_unsigned_v<T>) {
      if (j.is_number_integer() && !j.is_number_unsigned() && j.get<std::int64_t>() < 0) {
        throw std::invalid_argument("synth key '" + key + "' must be nonnegative");
      }
    }
  }
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    throw std::invalid_argument("synth key '" + key + "' has the wrong type");
  }
}

std::pair<int, int> read_pair(const json& j, const std::string& key) {
  if (!j.is_array() || j.size() != 2) {
    throw std::invalid_argument("synth key '" + key + "' must be [lo, hi]");
  }
  return {read_key<int>(j[0], key), read_key<int>(j[1], key)};
}

}  // namespace

SynthParams synth_params_from_json(std::string_view json_text, SynthParams base) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("synth params are not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("synth params must be a JSON object");
  for (const auto& [key, v] : j.items()) {
    if (key == "seed") base.seed = read_key<std::uint64_t>(v, key);
    else if (key == "n_authors") base.n_authors = read_key<std::size_t>(v, key);
    else if (key == "n_topics") base.n_topics = read_key<std::size_t>(v, key);
    else if (key == "n_papers") base.n_papers = read_key<std::size_t>(v, key);
    else if (key == "year_range") std::tie(base.year_start, base.year_end) = read_pair(v, key);
    else if (key == "window_years") base.window_years = read_key<int>(v, key);
    else if (key == "team_size_weights") base.team_size_weights = read_key<std::vector<double>>(v, key);
    else if (key == "n_expertise_clusters") base.n_expertise_clusters = read_key<std::size_t>(v, key);
    else if (key == "topics_per_cluster") base.topics_per_cluster = read_key<std::size_t>(v, key);
    else if (key == "specialties_per_cluster") base.specialties_per_cluster = read_key<std::size_t>(v, key);
    else if (key == "cluster_mix") base.cluster_mix = read_key<double>(v, key);
    else if (key == "team_spread") base.team_spread = read_key<double>(v, key);
    else if (key == "coupling") base.coupling = read_key<double>(v, key);
    else if (key == "citation_mean") base.citation_mean = read_key<double>(v, key);
    else if (key == "citation_noise") base.citation_noise = read_key<double>(v, key);
    else if (key == "min_citations") base.min_citations = read_key<std::int64_t>(v, key);
    else if (key == "domain_paper_fraction") base.domain_paper_fraction = read_key<double>(v, key);
    else if (key == "backfill_range") std::tie(base.backfill_min, base.backfill_max) = read_pair(v, key);
    else if (key == "rng_algorithm") {
      if (read_key<std::string>(v, key) != kRngAlgorithm) {
        throw std::invalid_argument("unsupported rng_algorithm '" + v.get<std::string>() + "'");
      }
    } else {
      throw std::invalid_argument("unknown synth key '" + key + "'");
    }
  }
  return base;
}

}  // namespace teamdiv
