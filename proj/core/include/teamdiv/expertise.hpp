#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "teamdiv/corpus.hpp"
#include "teamdiv/ids.hpp"

namespace teamdiv {

struct TopicCount {
  TopicId topic;
  std::int64_t count = 0;
  friend bool operator==(const TopicCount&, const TopicCount&) = default;
};

// Share of a paper set that carries each topic. Stored as exact counts;
// weight(t) = count(t) / paper_count.
class TopicDistribution {
 public:
  // `counts` need not be sorted; every count must lie in [1, paper_count]
  // and topics must be unique. Throws std::invalid_argument otherwise.
  TopicDistribution(std::vector<TopicCount> counts, std::int64_t paper_count);

  std::int64_t paper_count() const noexcept { return paper_count_; }
  std::span<const TopicCount> counts() const noexcept { return counts_; }
  std::int64_t count(TopicId topic) const;
  double weight(TopicId topic) const;

 private:
  std::vector<TopicCount> counts_;  // sorted by topic
  std::int64_t paper_count_;
};

// Topic shares over the whole corpus.
class BackgroundDistribution : public TopicDistribution {
 public:
  using TopicDistribution::TopicDistribution;
};

// Throws std::domain_error for an empty paper list.
TopicDistribution topic_distribution(const Corpus& corpus,
                                     std::span<const PaperIndex> papers);

// Throws std::domain_error for an empty corpus.
BackgroundDistribution background_distribution(const Corpus& corpus);

struct WeightedTopic {
  TopicId topic;
  double weight = 0.0;
  friend bool operator==(const WeightedTopic&, const WeightedTopic&) = default;
};

// An author's retained topics with strictly positive background-adjusted
// weights, at most k of them.
class ExpertiseVector {
 public:
  ExpertiseVector() = default;
  // Entries may come in any order. Throws std::invalid_argument for more
  // than k entries, non-positive weights or repeated topics.
  ExpertiseVector(AuthorId owner, int k, std::vector<WeightedTopic> entries);

  AuthorId owner() const noexcept { return owner_; }
  int k() const noexcept { return k_; }
  bool empty() const noexcept { return by_topic_.empty(); }
  std::size_t size() const noexcept { return by_topic_.size(); }

  // Rank order: weight descending, ties by ascending topic id.
  std::vector<WeightedTopic> ranked() const;
  std::span<const WeightedTopic> by_topic() const noexcept { return by_topic_; }
  double weight(TopicId topic) const;
  double norm() const noexcept { return norm_; }

  friend bool operator==(const ExpertiseVector& a, const ExpertiseVector& b) {
    return a.owner_ == b.owner_ && a.k_ == b.k_ && a.by_topic_ == b.by_topic_;
  }

 private:
  AuthorId owner_;
  int k_ = 0;
  std::vector<WeightedTopic> by_topic_;
  double norm_ = 0.0;
};

// adjusted(t) = author share - background share, ranked descending with
// ties broken by topic id; keeps the top k and drops anything <= 0.
// The subtraction is carried out on exact counts so equal shares cancel to
// exactly zero. Throws std::invalid_argument for k < 1.
ExpertiseVector expertise_vector(AuthorId owner, const TopicDistribution& author,
                                 const BackgroundDistribution& background, int k);

// Profile of `author` as of `year`: distribution over the prior window,
// then expertise_vector. An author without window papers gets an empty
// vector.
ExpertiseVector profile_author(const Corpus& corpus, const BackgroundDistribution& background,
                               AuthorId author, int year, int window_years, int k);

struct AuthorProfile {
  AuthorId author;
  int as_of_year = 0;
  ExpertiseVector vector;
};

// {"author": str, "as_of_year": int, "topics": [{"id": str, "weight": num}]}
// one line per profile, topics in rank order.
void write_profiles(std::ostream& out, const Corpus& corpus,
                    std::span<const AuthorProfile> profiles);

}  // namespace teamdiv
