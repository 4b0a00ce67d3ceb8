#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "teamdiv/expertise.hpp"
#include "test_support.hpp"

namespace teamdiv {
namespace {

using testing::rec;

TopicId T(std::uint32_t v) { return TopicId{v}; }

TEST(TopicDistribution, SharesOfPapers) {
  std::vector<RawRecord> records;
  for (int i = 0; i < 10; ++i) {
    std::vector<std::string> topics = {"other"};
    if (i < 7) topics.push_back("ml");
    records.push_back(rec("p" + std::to_string(i), 2010, {"a"}, topics));
  }
  auto c = Corpus::from_records(records);
  std::vector<PaperIndex> all(10);
  for (PaperIndex i = 0; i < 10; ++i) all[i] = i;
  auto d = topic_distribution(c, all);
  EXPECT_EQ(d.paper_count(), 10);
  EXPECT_DOUBLE_EQ(d.weight(*c.find_topic("ml")), 0.7);
  EXPECT_EQ(d.count(*c.find_topic("ml")), 7);
}

TEST(TopicDistribution, SinglePaper) {
  auto c = Corpus::from_records({rec("p", 2010, {"a"}, {"x", "y"}), rec("q", 2010, {"a"}, {"z"})});
  std::vector<PaperIndex> one = {0};
  auto d = topic_distribution(c, one);
  EXPECT_EQ(d.weight(*c.find_topic("x")), 1.0);
  EXPECT_EQ(d.weight(*c.find_topic("y")), 1.0);
  EXPECT_EQ(d.weight(*c.find_topic("z")), 0.0);
  EXPECT_EQ(d.counts().size(), 2u);  // absent topics are not stored
}

TEST(TopicDistribution, EmptyIsError) {
  auto c = Corpus::from_records({rec("p", 2010, {"a"}, {"x"})});
  EXPECT_THROW(topic_distribution(c, {}), std::domain_error);
  EXPECT_THROW(background_distribution(Corpus{}), std::domain_error);
}

TEST(TopicDistribution, ValidatesCounts) {
  EXPECT_THROW(TopicDistribution({{T(0), 0}}, 5), std::invalid_argument);
  EXPECT_THROW(TopicDistribution({{T(0), 6}}, 5), std::invalid_argument);
  EXPECT_THROW(TopicDistribution({{T(0), 1}, {T(0), 2}}, 5), std::invalid_argument);
  EXPECT_THROW(TopicDistribution({}, 0), std::invalid_argument);
}

TEST(BackgroundDistribution, HundredPapers) {
  std::vector<RawRecord> records;
  for (int i = 0; i < 100; ++i) {
    records.push_back(rec("p" + std::to_string(i), 2010, {"a"}, {i < 30 ? "ml" : "db"}));
  }
  auto c = Corpus::from_records(records);
  auto bg = background_distribution(c);
  EXPECT_DOUBLE_EQ(bg.weight(*c.find_topic("ml")), 0.3);
  EXPECT_EQ(bg.paper_count(), 100);
}

TEST(BackgroundDistribution, SinglePaperCorpus) {
  auto c = Corpus::from_records({rec("p", 2010, {"a"}, {"x", "y"})});
  auto bg = background_distribution(c);
  EXPECT_EQ(bg.weight(*c.find_topic("x")), 1.0);
  EXPECT_EQ(bg.weight(*c.find_topic("y")), 1.0);
}

TEST(BackgroundDistribution, MatchesLinearScan) {
  std::mt19937 gen(11);
  std::vector<RawRecord> records;
  for (int i = 0; i < 1000; ++i) {
    std::set<std::string> topics;
    const int n = 1 + static_cast<int>(gen() % 5);
    while (static_cast<int>(topics.size()) < n) topics.insert("t" + std::to_string(gen() % 40));
    records.push_back(rec("p" + std::to_string(i), 2010, {"a"}, {topics.begin(), topics.end()}));
  }
  auto c = Corpus::from_records(records);
  auto bg = background_distribution(c);
  for (std::uint32_t t = 0; t < c.topic_count(); ++t) {
    std::int64_t count = 0;
    for (const auto& r : records) {
      for (const auto& name : r.topics) count += name == c.topic_name(T(t)) ? 1 : 0;
    }
    EXPECT_EQ(bg.count(T(t)), count);
    EXPECT_DOUBLE_EQ(bg.weight(T(t)), static_cast<double>(count) / 1000.0);
  }
}

TEST(ExpertiseVector, WorkedExampleIsExact) {
  TopicDistribution author({{T(3), 7}}, 10);
  BackgroundDistribution bg({{T(3), 30}}, 100);
  auto v = expertise_vector(AuthorId{1}, author, bg, 10);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v.weight(T(3)), 0.4);
}

TEST(ExpertiseVector, EqualSharesDrop) {
  TopicDistribution author({{T(0), 3}, {T(1), 2}}, 10);
  BackgroundDistribution bg({{T(0), 30}, {T(1), 50}}, 100);
  auto v = expertise_vector(AuthorId{1}, author, bg, 10);
  EXPECT_TRUE(v.empty());
}

TEST(ExpertiseVector, TopicUnknownToBackgroundKeepsFullShare) {
  TopicDistribution author({{T(9), 1}}, 2);
  BackgroundDistribution bg({{T(0), 5}}, 10);
  EXPECT_EQ(expertise_vector(AuthorId{0}, author, bg, 3).weight(T(9)), 0.5);
}

TEST(ExpertiseVector, TopKMatchesFullSort) {
  std::mt19937 gen(3);
  for (int trial = 0; trial < 200; ++trial) {
    const std::int64_t n = 20, big_n = 1000;
    std::vector<TopicCount> a, b;
    for (std::uint32_t t = 0; t < 15; ++t) {
      const std::int64_t ac = 1 + static_cast<std::int64_t>(gen() % n);
      a.push_back({T(t), ac});
      // keep most adjusted weights positive, allow a few ties
      const std::int64_t bc = static_cast<std::int64_t>(gen() % (ac * big_n / n));
      if (bc > 0) b.push_back({T(t), bc});
    }
    TopicDistribution author(a, n);
    BackgroundDistribution bg(b, big_n);
    const int k = 10;
    auto v = expertise_vector(AuthorId{0}, author, bg, k);

    std::vector<std::pair<double, std::uint32_t>> all;
    for (std::uint32_t t = 0; t < 15; ++t) {
      const double w = author.weight(T(t)) - bg.weight(T(t));
      if (w > 1e-15) all.emplace_back(w, t);
    }
    std::sort(all.begin(), all.end(), [](auto x, auto y) {
      if (std::abs(x.first - y.first) > 1e-12) return x.first > y.first;
      return x.second < y.second;
    });
    all.resize(std::min<std::size_t>(all.size(), k));
    auto ranked = v.ranked();
    ASSERT_EQ(ranked.size(), all.size());
    for (std::size_t i = 0; i < all.size(); ++i) {
      EXPECT_EQ(ranked[i].topic, T(all[i].second));
      EXPECT_NEAR(ranked[i].weight, all[i].first, 1e-12);
    }
  }
}

TEST(ExpertiseVector, TiesAtCutoffByTopicId) {
  TopicDistribution author({{T(5), 1}, {T(2), 1}, {T(8), 1}, {T(1), 2}}, 2);
  BackgroundDistribution bg({}, 1);
  auto v = expertise_vector(AuthorId{0}, author, bg, 3);
  auto ranked = v.ranked();
  ASSERT_EQ(ranked.size(), 3u);
  EXPECT_EQ(ranked[0].topic, T(1));
  EXPECT_EQ(ranked[1].topic, T(2));
  EXPECT_EQ(ranked[2].topic, T(5));
}

TEST(ExpertiseVector, BackgroundShiftOnForeignTopicKeepsSet) {
  TopicDistribution author({{T(0), 4}, {T(1), 3}, {T(2), 2}}, 5);
  BackgroundDistribution bg({{T(0), 10}, {T(1), 20}}, 100);
  BackgroundDistribution shifted({{T(0), 10}, {T(1), 20}, {T(7), 90}}, 100);
  for (int k = 1; k <= 3; ++k) {
    EXPECT_EQ(expertise_vector(AuthorId{0}, author, bg, k).ranked(),
              expertise_vector(AuthorId{0}, author, shifted, k).ranked());
  }
}

TEST(ExpertiseVector, VaryingKOnlyTruncates) {
  std::vector<TopicCount> a;
  for (std::uint32_t t = 0; t < 25; ++t) a.push_back({T(t), 1 + (t * 7) % 30});
  TopicDistribution author(a, 30);
  BackgroundDistribution bg({{T(3), 100}, {T(4), 5}}, 1000);
  const auto full = expertise_vector(AuthorId{0}, author, bg, 25).ranked();
  for (int k = 5; k <= 20; ++k) {
    const auto part = expertise_vector(AuthorId{0}, author, bg, k).ranked();
    ASSERT_EQ(part.size(), static_cast<std::size_t>(k));
    EXPECT_TRUE(std::equal(part.begin(), part.end(), full.begin()));
  }
}

TEST(ExpertiseVector, ConstructorValidates) {
  EXPECT_THROW(testing::vec(0, {{1, 0.0}}), std::invalid_argument);
  EXPECT_THROW(testing::vec(0, {{1, -1.0}}), std::invalid_argument);
  EXPECT_THROW(testing::vec(0, {{1, 0.5}, {1, 0.2}}), std::invalid_argument);
  EXPECT_THROW(testing::vec(0, {{1, 0.5}, {2, 0.2}}, 1), std::invalid_argument);
  EXPECT_THROW(expertise_vector(AuthorId{0}, TopicDistribution({}, 1), BackgroundDistribution({}, 1), 0),
               std::invalid_argument);
  auto v = testing::vec(0, {{4, 3.0}, {1, 4.0}});
  EXPECT_DOUBLE_EQ(v.norm(), 5.0);
  EXPECT_EQ(v.by_topic()[0].topic, T(1));
}

Corpus profile_world() {
  return Corpus::from_records({
      rec("a1", 2008, {"ann"}, {"ml", "db"}),
      rec("a2", 2011, {"ann", "bob"}, {"ml"}),
      rec("a3", 2013, {"ann"}, {"vision"}),  // same year as the query: excluded
      rec("b1", 2000, {"bob"}, {"db"}),
      rec("f1", 2010, {"fil"}, {"db"}),
      rec("f2", 2010, {"fil"}, {"ir"}),
      rec("f3", 2010, {"fil"}, {"ir"}),
      rec("f4", 2010, {"fil"}, {"ir"}),
  });
}

TEST(ProfileAuthor, UsesWindowOnly) {
  auto c = profile_world();
  auto bg = background_distribution(c);
  auto ann = *c.find_author("ann");
  auto v = profile_author(c, bg, ann, 2013, 5, 10);
  std::set<TopicId> window_topics;
  for (auto p : prior_window(c, ann, 2013, 5)) {
    for (auto t : c.paper(p).topics) window_topics.insert(t);
  }
  for (const auto& e : v.by_topic()) EXPECT_TRUE(window_topics.count(e.topic));
  EXPECT_EQ(v.weight(*c.find_topic("vision")), 0.0);
  // ml: 2/2 - 2/8
  EXPECT_DOUBLE_EQ(v.weight(*c.find_topic("ml")), 0.75);
  // db: 1/2 - 3/8
  EXPECT_DOUBLE_EQ(v.weight(*c.find_topic("db")), 0.125);
}

TEST(ProfileAuthor, EmptyWindowGivesEmptyVector) {
  auto c = profile_world();
  auto bg = background_distribution(c);
  auto v = profile_author(c, bg, *c.find_author("bob"), 2010, 5, 10);
  EXPECT_TRUE(v.empty());
  EXPECT_EQ(v.owner(), *c.find_author("bob"));
}

TEST(ProfileAuthor, DumpIsDeterministic) {
  auto c = profile_world();
  auto dump = [&] {
    auto bg = background_distribution(c);
    std::vector<AuthorProfile> profiles;
    for (std::uint32_t a = 0; a < c.author_count(); ++a) {
      profiles.push_back({AuthorId{a}, 2013, profile_author(c, bg, AuthorId{a}, 2013, 5, 10)});
    }
    std::ostringstream out;
    write_profiles(out, c, profiles);
    return out.str();
  };
  const auto first = dump();
  EXPECT_EQ(first, dump());
  EXPECT_NE(first.find(R"("author":"ann","as_of_year":2013,"topics":[{"id":"ml","weight":0.75})"),
            std::string::npos)
      << first;
}

}  // namespace
}  // namespace teamdiv
