#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "coexplore/error.hpp"
#include "coexplore/explore_rank.hpp"
#include "test_support.hpp"

namespace coexplore::rank {
namespace {

using coexplore::testing::FakeGateway;

PaperRecord paper(const std::string& id, std::vector<std::string> disciplines) {
  PaperRecord p;
  p.paper_id = id;
  p.title = "Title " + id;
  p.disciplines = std::move(disciplines);
  return p;
}

TEST(Engagement, CountersAndExplorationScore) {
  EngagementHistory h;
  EXPECT_DOUBLE_EQ(h.exploration_score("Psychology"), 1.0);
  h = record_engagement(h, {EngagementKind::PaperCollected, "Psychology"});
  h = record_engagement(h, {EngagementKind::EqQueried, "Psychology"});
  h = record_engagement(h, {EngagementKind::EqQueried, "Psychology"});
  EXPECT_EQ(h.counters("Psychology"), (EngagementCounters{1, 2}));
  EXPECT_EQ(h.engagement("Psychology"), 3u);
  EXPECT_DOUBLE_EQ(h.exploration_score("Psychology"), 0.25);
  EXPECT_EQ(h.engagement("Education"), 0u);
  EXPECT_THROW((void)record_engagement(h, {EngagementKind::EqQueried, "Astrology"}), Error);
}

TEST(Engagement, ExplorationStrictlyDecreases) {
  EngagementHistory h;
  double previous = h.exploration_score("Sociology");
  for (int i = 0; i < 200; ++i) {
    h = record_engagement(h, {i % 3 ? EngagementKind::EqQueried : EngagementKind::PaperCollected, "Sociology"});
    const double e = h.exploration_score("Sociology");
    EXPECT_LT(e, previous);
    EXPECT_GT(e, 0.0);
    previous = e;
  }
}

struct Scored : ::testing::Test {
  // Topic (1,0); a: cos 1, b: cos 0, c: cos 0.6.
  std::vector<PaperRecord> papers{paper("a", {"Psychology"}), paper("b", {"Psychology", "Education"}), paper("c", {})};
  std::vector<Vector> vectors{Vector({1.0, 0.0}), Vector({0.0, 1.0}), Vector({0.6, 0.8})};
  Vector topic{std::vector<double>{1.0, 0.0}};
  EngagementHistory history = EngagementHistory::from_counters({{"Psychology", {1, 1}}});
};

TEST_F(Scored, CombinedScoreOrdersDisciplines) {
  const auto s = score_disciplines(papers, vectors, history, topic, 1.0);
  ASSERT_EQ(s.size(), 3u);
  EXPECT_EQ(s[0].discipline, kUnknownDiscipline);
  EXPECT_NEAR(s[0].relevance, 0.6, 1e-12);
  EXPECT_NEAR(s[0].combined, 1.6, 1e-12);
  EXPECT_EQ(s[1].discipline, "Education");
  EXPECT_NEAR(s[1].combined, 1.0, 1e-12);
  EXPECT_EQ(s[2].discipline, "Psychology");
  EXPECT_EQ(s[2].engagement, 2u);
  EXPECT_NEAR(s[2].exploration, 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(s[2].relevance, 0.5, 1e-12);
  EXPECT_NEAR(s[2].combined, 0.5 + 1.0 / 3.0, 1e-12);
  EXPECT_EQ(s[2].members, (std::vector<std::size_t>{0, 1}));
}

TEST_F(Scored, BetaZeroTiesBreakByName) {
  const auto s = score_disciplines(papers, vectors, history, topic, 0.0);
  ASSERT_EQ(s.size(), 3u);
  EXPECT_EQ(s[0].discipline, "Education");
  EXPECT_EQ(s[1].discipline, kUnknownDiscipline);
  EXPECT_EQ(s[2].discipline, "Psychology");
  for (const auto& d : s) EXPECT_DOUBLE_EQ(d.combined, d.exploration);
}

TEST_F(Scored, EngagementMovesADisciplineDown) {
  auto h = history;
  for (int i = 0; i < 3; ++i) h = record_engagement(h, {EngagementKind::PaperCollected, kUnknownDiscipline});
  const auto s = score_disciplines(papers, vectors, h, topic, 1.0);
  // Unknown: 0.6 + 1/4 = 0.85 drops below Education (1.0) but stays above Psychology (0.833).
  EXPECT_EQ(s[0].discipline, "Education");
  EXPECT_EQ(s[1].discipline, kUnknownDiscipline);
  EXPECT_NEAR(s[1].combined, 0.85, 1e-12);
}

TEST_F(Scored, PapersWithinRankBySimilarityThenId) {
  std::vector<PaperRecord> ps{paper("z", {}), paper("y", {}), paper("x", {})};
  std::vector<Vector> vs{Vector({0.6, 0.8}), Vector({1.0, 0.0}), Vector({0.6, -0.8})};
  EXPECT_EQ(rank_papers_within(ps, vs, topic), (std::vector<std::size_t>{1, 2, 0}));
}

TEST_F(Scored, RandomPapersMatchABruteForceSort) {
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<PaperRecord> ps;
    std::vector<Vector> vs;
    std::vector<std::tuple<double, std::string, std::size_t>> expected;
    for (std::size_t i = 0; i < 20; ++i) {
      ps.push_back(paper("id" + std::to_string(rng() % 1000), {}));
      // Every fourth paper repeats an earlier direction so ties occur.
      vs.push_back(i % 4 == 3 ? vs[i - 1].scaled(2.0) : Vector({u(rng), u(rng), u(rng)}));
      const auto& v = vs.back();
      const double sim = v[0] / std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
      expected.emplace_back(-sim, ps.back().paper_id, i);
    }
    std::sort(expected.begin(), expected.end(), [](const auto& a, const auto& b) {
      const double da = std::get<0>(a), db = std::get<0>(b);
      if (std::abs(da - db) > 1e-12) return da < db;
      return std::get<1>(a) < std::get<1>(b);
    });
    std::vector<std::size_t> order;
    for (const auto& e : expected) order.push_back(std::get<2>(e));
    EXPECT_EQ(rank_papers_within(ps, vs, Vector({1.0, 0.0, 0.0})), order) << "trial " << trial;
  }
}

TEST_F(Scored, RejectsBadInput) {
  EXPECT_THROW((void)score_disciplines({}, {}, history, topic), Error);
  EXPECT_THROW((void)score_disciplines(papers, {vectors[0]}, history, topic), Error);
  EXPECT_THROW((void)score_disciplines(papers, vectors, history, Vector::zeros(2)), Error);
  EXPECT_THROW((void)rank_papers_within(papers, {}, topic), Error);
}

TEST_F(Scored, RankLinksUsesMetadataEmbeddings) {
  auto g = std::make_shared<FakeGateway>([](const llm::PromptRequest&) { return std::string(); });
  const auto t = normalize_topic("older adults and news");
  g->pinned[t.text] = topic;
  for (std::size_t i = 0; i < papers.size(); ++i) g->pinned[papers[i].metadata_text()] = vectors[i];
  llm::EmbeddingCache cache(g);
  const auto groups = rank_links(papers, history, t, cache, 1.0);
  ASSERT_EQ(groups.size(), 3u);
  EXPECT_EQ(groups[2].score.discipline, "Psychology");
  ASSERT_EQ(groups[2].papers.size(), 2u);
  EXPECT_EQ(groups[2].papers[0].paper_id, "a");
  EXPECT_EQ(groups[2].papers[1].paper_id, "b");
  EXPECT_NEAR(groups[2].similarities[0], 1.0, 1e-12);
  EXPECT_NEAR(groups[2].similarities[1], 0.0, 1e-12);
  EXPECT_TRUE(rank_links({}, history, t, cache).empty());
}

}  // namespace
}  // namespace coexplore::rank
