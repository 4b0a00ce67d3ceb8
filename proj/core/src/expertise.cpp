#include "teamdiv/expertise.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "json.hpp"

namespace teamdiv {

TopicDistribution::TopicDistribution(std::vector<TopicCount> counts,
                                     std::int64_t paper_count)
    : counts_(std::move(counts)), paper_count_(paper_count) {
  if (paper_count_ <= 0) throw std::invalid_argument("paper_count must be positive");
  std::sort(counts_.begin(), counts_.end(),
            [](const TopicCount& a, const TopicCount& b) { return a.topic < b.topic; });
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    if (counts_[i].count < 1 || counts_[i].count > paper_count_) {
      throw std::invalid_argument("topic count outside [1, paper_count]");
    }
    if (i > 0 && counts_[i - 1].topic == counts_[i].topic) {
      throw std::invalid_argument("duplicate topic in distribution");
    }
  }
}

std::int64_t TopicDistribution::count(TopicId topic) const {
  auto it = std::lower_bound(counts_.begin(), counts_.end(), topic,
                             [](const TopicCount& c, TopicId t) { return c.topic < t; });
  return it != counts_.end() && it->topic == topic ? it->count : 0;
}

double TopicDistribution::weight(TopicId topic) const {
  return static_cast<double>(count(topic)) / static_cast<double>(paper_count_);
}

namespace {

std::vector<TopicCount> count_topics(const Corpus& corpus,
                                     std::span<const PaperIndex> papers) {
  std::vector<TopicId> all;
  for (PaperIndex p : papers) {
    const auto& topics = corpus.paper(p).topics;
    all.insert(all.end(), topics.begin(), topics.end());
  }
  std::sort(all.begin(), all.end());
  std::vector<TopicCount> counts;
  for (std::size_t i = 0; i < all.size();) {
    std::size_t j = i;
    while (j < all.size() && all[j] == all[i]) ++j;
    counts.push_back({all[i], static_cast<std::int64_t>(j - i)});
    i = j;
  }
  return counts;
}

}  // namespace

TopicDistribution topic_distribution(const Corpus& corpus,
                                     std::span<const PaperIndex> papers) {
  if (papers.empty()) throw std::domain_error("topic distribution of an empty paper set");
  return {count_topics(corpus, papers), static_cast<std::int64_t>(papers.size())};
}

BackgroundDistribution background_distribution(const Corpus& corpus) {
  if (corpus.empty()) throw std::domain_error("background distribution of an empty corpus");
  std::vector<std::int64_t> counts(corpus.topic_count(), 0);
  for (const auto& paper : corpus.papers()) {
    for (TopicId t : paper.topics) ++counts[t.value];
  }
  std::vector<TopicCount> out;
  for (std::uint32_t t = 0; t < counts.size(); ++t) {
    if (counts[t] > 0) out.push_back({TopicId{t}, counts[t]});
  }
  return {std::move(out), static_cast<std::int64_t>(corpus.size())};
}

ExpertiseVector::ExpertiseVector(AuthorId owner, int k, std::vector<WeightedTopic> entries)
    : owner_(owner), k_(k), by_topic_(std::move(entries)) {
  if (by_topic_.size() > static_cast<std::size_t>(std::max(k_, 0))) {
    throw std::invalid_argument("expertise vector holds more than k topics");
  }
  std::sort(by_topic_.begin(), by_topic_.end(),
            [](const WeightedTopic& a, const WeightedTopic& b) { return a.topic < b.topic; });
  for (std::size_t i = 0; i < by_topic_.size(); ++i) {
    if (!(by_topic_[i].weight > 0.0) || !std::isfinite(by_topic_[i].weight)) {
      throw std::invalid_argument("expertise weights must be finite and positive");
    }
    if (i > 0 && by_topic_[i - 1].topic == by_topic_[i].topic) {
      throw std::invalid_argument("duplicate topic in expertise vector");
    }
  }
  double sum = 0.0;
  for (const auto& e : by_topic_) sum += e.weight * e.weight;
  norm_ = std::sqrt(sum);
}

std::vector<WeightedTopic> ExpertiseVector::ranked() const {
  std::vector<WeightedTopic> out = by_topic_;
  std::stable_sort(out.begin(), out.end(), [](const WeightedTopic& a, const WeightedTopic& b) {
    return a.weight > b.weight;
  });
  return out;
}

double ExpertiseVector::weight(TopicId topic) const {
  auto it = std::lower_bound(
      by_topic_.begin(), by_topic_.end(), topic,
      [](const WeightedTopic& e, TopicId t) { return e.topic < t; });
  return it != by_topic_.end() && it->topic == topic ? it->weight : 0.0;
}

ExpertiseVector expertise_vector(AuthorId owner, const TopicDistribution& author,
                                 const BackgroundDistribution& background, int k) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");

  // a/n - b/N over the common denominator n*N; numerators order exactly.
  struct Scored {
    TopicId topic;
    std::int64_t numerator;
  };
  const std::int64_t n = author.paper_count();
  const std::int64_t big_n = background.paper_count();
  std::vector<Scored> scored;
  scored.reserve(author.counts().size());
  for (const auto& c : author.counts()) {
    const std::int64_t numerator = c.count * big_n - background.count(c.topic) * n;
    if (numerator > 0) scored.push_back({c.topic, numerator});
  }
  std::sort(scored.begin(), scored.end(), [](const Scored& a, const Scored& b) {
    if (a.numerator != b.numerator) return a.numerator > b.numerator;
    return a.topic < b.topic;
  });
  if (scored.size() > static_cast<std::size_t>(k)) scored.resize(static_cast<std::size_t>(k));

  const double denominator = static_cast<double>(n) * static_cast<double>(big_n);
  std::vector<WeightedTopic> ranked;
  ranked.reserve(scored.size());
  for (const auto& s : scored) {
    ranked.push_back({s.topic, static_cast<double>(s.numerator) / denominator});
  }
  return {owner, k, std::move(ranked)};
}

ExpertiseVector profile_author(const Corpus& corpus, const BackgroundDistribution& background,
                               AuthorId author, int year, int window_years, int k) {
  const auto window = prior_window(corpus, author, year, window_years);
  if (window.empty()) return {author, k, {}};
  return expertise_vector(author, topic_distribution(corpus, window), background, k);
}

void write_profiles(std::ostream& out, const Corpus& corpus,
                    std::span<const AuthorProfile> profiles) {
  for (const auto& profile : profiles) {
    nlohmann::ordered_json j;
    j["author"] = corpus.author_name(profile.author);
    j["as_of_year"] = profile.as_of_year;
    auto& topics = j["topics"] = nlohmann::ordered_json::array();
    for (const auto& e : profile.vector.ranked()) {
      topics.push_back({{"id", corpus.topic_name(e.topic)}, {"weight", e.weight}});
    }
    out << j.dump() << '\n';
  }
}

}  // namespace teamdiv
