#include <gtest/gtest.h>

#include <cmath>

#include "coexplore/error.hpp"
#include "coexplore/query_engine.hpp"
#include "test_support.hpp"

namespace coexplore::query {
namespace {

using coexplore::testing::FakeGateway;
using coexplore::testing::TempDir;
using llm::TemplateId;

ExploratoryQuestion eq(std::string text) {
  ExploratoryQuestion e;
  e.id = "eq-1";
  e.text = std::move(text);
  e.discipline = "Linguistics";
  return e;
}

std::vector<std::string> strings(const std::vector<scholar::QueryString>& qs) {
  std::vector<std::string> out;
  for (const auto& q : qs) out.push_back(q.text());
  return out;
}

TEST(ParseQueries, StripsQuotesMarkersDuplicatesAndQuestionCopies) {
  const auto out = parse_queries(
      "Here are the queries:\n1. \"fake news elderly\"\n2) 'Fake News Elderly'\n- “rumor spread”\n"
      "* `how do rumors spread?`\n\"\"\n",
      "How do rumors spread?");
  EXPECT_EQ(out, (std::vector<std::string>{"fake news elderly", "rumor spread"}));
}

TEST(ParseQueries, CutsLongQueriesAtAWordBoundary) {
  std::string longq;
  for (int i = 0; i < 80; ++i) longq += "word" + std::to_string(i) + " ";
  const auto out = parse_queries("\"" + longq + "\"", "q?");
  ASSERT_EQ(out.size(), 1u);
  EXPECT_LE(out[0].size(), scholar::kMaxQueryLength);
  EXPECT_NE(out[0].back(), ' ');
  EXPECT_EQ(longq.rfind(out[0], 0), 0u);
}

class AppendixQueries : public ::testing::Test {
 protected:
  std::shared_ptr<llm::ScriptedGateway> gateway = coexplore::testing::scripted_gateway();
  QueryEngine engine{*gateway};
  nlohmann::json items =
      coexplore::testing::read_json(coexplore::testing::test_data("fixture_eqs.json")).at("appendix_queries");
};

TEST_F(AppendixQueries, WithPseudoAnswersMatchFixturesVerbatim) {
  ASSERT_EQ(items.size(), 3u);
  for (const auto& item : items) {
    auto e = eq(item.at("question"));
    const auto x = engine.expand_queries(e, normalize_topic(item.at("topic").get<std::string>()));
    EXPECT_EQ(strings(x.queries), item.at("with_pa").get<std::vector<std::string>>());
    EXPECT_EQ(x.eq_id, "eq-1");
    EXPECT_FALSE(x.reprompted);
    EXPECT_EQ(x.padded, 0u);
    EXPECT_FALSE(x.pseudo_answers.empty());
    EXPECT_EQ(x.terms.size(), x.pseudo_answers.size());
    for (const auto& bt : x.terms) EXPECT_FALSE(bt.terms.empty()) << bt.bullet;
  }
}

TEST_F(AppendixQueries, WithoutPseudoAnswersMatchFixturesVerbatim) {
  for (const auto& item : items) {
    EXPECT_EQ(engine.queries_without_pseudo_answers(eq(item.at("question"))),
              item.at("without_pa").get<std::vector<std::string>>());
  }
}

// Chain where the compose step returns `first` and the reprompt returns `second`.
std::shared_ptr<FakeGateway> chain(std::string first, std::string second) {
  return std::make_shared<FakeGateway>([=](const llm::PromptRequest& r) -> std::string {
    switch (r.template_id) {
      case TemplateId::PseudoAnswers: return "- Bullet one\n- Bullet two";
      case TemplateId::AnswerTerms: return "1: alpha; beta; gamma\n2: delta, epsilon\n7: ignored";
      case TemplateId::ComposeQueries: return r.variables.at("previous_queries").empty() ? first : second;
      default: return "";
    }
  });
}

std::string quoted(int from, int to) {
  std::string out;
  for (int i = from; i <= to; ++i) out += "\"query " + std::to_string(i) + "\"\n";
  return out;
}

TEST(ExpandQueries, ParsesTermsPerBullet) {
  auto g = chain(quoted(1, 9), "");
  QueryEngine engine(*g);
  const auto x = engine.expand_queries(eq("How do seniors verify news?"), normalize_topic("t"));
  ASSERT_EQ(x.terms.size(), 2u);
  EXPECT_EQ(x.terms[0].bullet, "Bullet one");
  EXPECT_EQ(x.terms[0].terms, (std::vector<std::string>{"alpha", "beta", "gamma"}));
  EXPECT_EQ(x.terms[1].terms, (std::vector<std::string>{"delta", "epsilon"}));
  EXPECT_EQ(g->requests[2].variables.at("terms"), "1. alpha; beta; gamma\n2. delta; epsilon");
  EXPECT_EQ(g->requests[2].variables.at("num_queries"), "9");
  EXPECT_EQ(x.queries.size(), kQueriesPerEq);
  EXPECT_EQ(g->count(TemplateId::ComposeQueries), 1u);
}

TEST(ExpandQueries, ExtraQueriesAreTruncatedToNine) {
  auto g = chain(quoted(1, 14), "");
  QueryEngine engine(*g);
  const auto x = engine.expand_queries(eq("How do seniors verify news?"), normalize_topic("t"));
  EXPECT_EQ(strings(x.queries).back(), "query 9");
}

TEST(ExpandQueries, ShortListTriggersOneRepromptListingPreviousQueries) {
  auto g = chain(quoted(1, 6), quoted(5, 9));
  QueryEngine engine(*g);
  const auto x = engine.expand_queries(eq("How do seniors verify news?"), normalize_topic("t"));
  EXPECT_TRUE(x.reprompted);
  EXPECT_EQ(x.padded, 0u);
  EXPECT_EQ(strings(x.queries).size(), 9u);
  EXPECT_EQ(strings(x.queries)[6], "query 7");
  EXPECT_NE(g->requests.back().variables.at("previous_queries").find("\"query 6\""), std::string::npos);
}

TEST(ExpandQueries, StillShortAfterRepromptPadsFromTermCombinations) {
  auto g = chain(quoted(1, 3), quoted(2, 4));
  QueryEngine engine(*g);
  const auto x = engine.expand_queries(eq("How do seniors verify news?"), normalize_topic("t"));
  EXPECT_TRUE(x.reprompted);
  EXPECT_EQ(x.padded, 5u);
  const auto qs = strings(x.queries);
  EXPECT_EQ(qs.size(), 9u);
  EXPECT_EQ(qs[4], "alpha beta");
  EXPECT_EQ(qs[7], "delta epsilon");
  EXPECT_EQ(qs[8], "alpha delta");
}

TEST(ExpandQueries, EmptyAnswersOrQueriesAreErrors) {
  auto none = std::make_shared<FakeGateway>([](const llm::PromptRequest&) { return std::string(); });
  QueryEngine engine(*none);
  EXPECT_THROW((void)engine.expand_queries(eq("  "), normalize_topic("t")), Error);
  try {
    (void)engine.expand_queries(eq("How do seniors verify news?"), normalize_topic("t"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnparseableCompletion);
  }
}

TEST(ExpandQueries, ScriptedFixtureDirectoryWithoutChainFails) {
  TempDir empty;
  auto g = coexplore::testing::scripted_gateway(empty.path());
  QueryEngine engine(*g);
  try {
    (void)engine.expand_queries(eq("How do seniors verify news?"), normalize_topic("t"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::FixtureMissing);
  }
}

TEST(Lexicon, ParsesTsvAndFallsBackToSingular) {
  const auto lex = ConcretenessLexicon::parse("# comment\n\nrobot\t600\nstudy\t300\n");
  EXPECT_EQ(lex.size(), 2u);
  EXPECT_EQ(lex.rating("Robots"), 600.0);
  EXPECT_EQ(lex.rating("studies"), 300.0);
  EXPECT_FALSE(lex.rating("ethics").has_value());
  EXPECT_THROW((void)ConcretenessLexicon::parse("robot 600"), Error);
  EXPECT_THROW((void)ConcretenessLexicon::parse("robot\tmany"), Error);
}

TEST(Lexicon, BundledRatingsStayOnTheMrcScale) {
  const auto& lex = ConcretenessLexicon::bundled();
  EXPECT_GT(lex.size(), 100u);
  for (const auto* w : {"robot", "ethics", "commuter", "media"}) {
    const auto r = lex.rating(w);
    ASSERT_TRUE(r.has_value()) << w;
    EXPECT_GE(*r, 100.0);
    EXPECT_LE(*r, 700.0);
  }
  EXPECT_GT(*lex.rating("robot"), *lex.rating("ethics"));
}

TEST(Lexicon, EnvOverridesBundled) {
  TempDir dir;
  util::atomic_write_file(dir.path() / "mrc.tsv", "apple\t650\n");
  ::setenv("MRC_LEXICON_PATH", (dir.path() / "mrc.tsv").c_str(), 1);
  EXPECT_EQ(ConcretenessLexicon::from_env_or_bundled().size(), 1u);
  ::unsetenv("MRC_LEXICON_PATH");
  EXPECT_EQ(ConcretenessLexicon::from_env_or_bundled().size(), ConcretenessLexicon::bundled().size());
}

TEST(Concreteness, MeanOfPerQueryMeansWithSampleSd) {
  const ConcretenessLexicon lex({{"robot", 600.0}, {"care", 300.0}, {"ethics", 200.0}});
  const auto s = concreteness_score({"robot care", "ethics of care", "nothing known"}, lex);
  // Per-query scores 450 and 250; the third query has no covered word.
  EXPECT_DOUBLE_EQ(s.mean, 350.0);
  EXPECT_DOUBLE_EQ(s.sd, std::sqrt(20000.0));
  EXPECT_EQ(s.scored_queries, 2u);
  EXPECT_DOUBLE_EQ(s.coverage, 4.0 / 7.0);
  const auto one = concreteness_score({"robot"}, lex);
  EXPECT_DOUBLE_EQ(one.sd, 0.0);
}

TEST(Concreteness, ErrorsOnEmptyOrUncovered) {
  const ConcretenessLexicon lex({{"robot", 600.0}});
  EXPECT_THROW((void)concreteness_score({}, lex), Error);
  try {
    (void)concreteness_score({"nothing here"}, lex);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NoCoveredWords);
  }
}

}  // namespace
}  // namespace coexplore::query
