#include <gtest/gtest.h>

#include <atomic>

#include "coexplore/error.hpp"
#include "coexplore/json_io.hpp"
#include "coexplore/scholar_client.hpp"
#include "mock_server.hpp"
#include "test_support.hpp"

namespace coexplore::scholar {
namespace {

using coexplore::testing::MockServer;
using coexplore::testing::TempDir;
using nlohmann::json;

Corpus small_corpus() {
  return Corpus::parse(R"({
    "papers": [
      {"paper_id": "p1", "title": "Fake news and older adults", "abstract": "Sharing of fake news online.",
       "disciplines": ["Psychology"], "year": 2020, "venue": "V", "authors": ["A"], "citation_count": 5, "url": null},
      {"paper_id": "p2", "title": "Digital literacy training", "abstract": "Older learners and news.",
       "disciplines": ["Education"], "year": 2021, "venue": null, "authors": [], "citation_count": 0, "url": null},
      {"paper_id": "p3", "title": "Robots in elder care", "abstract": "", "disciplines": [],
       "year": null, "venue": null, "authors": [], "citation_count": 1, "url": null}
    ],
    "citations": {"p1": ["p2", "p3"]},
    "references": {"p2": ["p1"]}
  })");
}

ScholarClient corpus_client(const std::filesystem::path& cache = {}) {
  ScholarConfig c;
  c.cache_dir = cache;
  return ScholarClient(c, small_corpus());
}

std::vector<std::string> ids(const std::vector<PaperRecord>& papers) {
  std::vector<std::string> out;
  for (const auto& p : papers) out.push_back(p.paper_id);
  return out;
}

TEST(QueryString, TrimsAndBoundsLength) {
  EXPECT_EQ(QueryString("  fake news ").text(), "fake news");
  EXPECT_THROW(QueryString("   "), Error);
  EXPECT_NO_THROW(QueryString(std::string(300, 'a')));
  EXPECT_THROW(QueryString(std::string(301, 'a')), Error);
}

TEST(LinkDirection, ParsesBothDirections) {
  EXPECT_EQ(link_direction_from_string("citations"), LinkDirection::Citations);
  EXPECT_EQ(link_direction_from_string(to_string(LinkDirection::References)), LinkDirection::References);
  EXPECT_THROW((void)link_direction_from_string("cites"), Error);
}

TEST(Corpus, RejectsDuplicatesAndDanglingLinks) {
  EXPECT_THROW((void)Corpus::parse(R"({"papers":[{"paper_id":"a","title":"x"},{"paper_id":"a","title":"y"}]})"), Error);
  EXPECT_THROW((void)Corpus::parse(R"({"papers":[{"paper_id":"a","title":"x"}],"citations":{"a":["b"]}})"), Error);
  EXPECT_THROW((void)Corpus::parse("not json"), Error);
}

TEST(Corpus, BundledCorpusLoads) {
  const auto c = Corpus::load(coexplore::testing::corpus_path());
  EXPECT_GE(c.papers.size(), 50u);
  EXPECT_FALSE(c.citations.empty());
  EXPECT_NE(c.find(c.papers.front().paper_id), nullptr);
  EXPECT_EQ(c.find("missing"), nullptr);
}

TEST(CorpusSearch, RanksByMatchedTokensThenCorpusOrder) {
  auto client = corpus_client();
  EXPECT_EQ(ids(client.search_papers(QueryString("older news"))), (std::vector<std::string>{"p1", "p2"}));
  EXPECT_EQ(ids(client.search_papers(QueryString("fake news sharing"))), std::vector<std::string>{"p1"});
  EXPECT_EQ(ids(client.search_papers(QueryString("fake news sharing"), 1)), std::vector<std::string>{"p1"});
  EXPECT_TRUE(client.search_papers(QueryString("quantum chromodynamics")).empty());
  EXPECT_THROW((void)client.search_papers(QueryString("x"), 0), Error);
  EXPECT_THROW((void)client.search_papers(QueryString("x"), 101), Error);
}

TEST(CorpusSearch, SearchAllMergesInQueryOrderWithoutDuplicates) {
  auto client = corpus_client();
  const auto merged = client.search_all({QueryString("robots care"), QueryString("older news")});
  EXPECT_EQ(ids(merged), (std::vector<std::string>{"p3", "p1", "p2"}));
}

TEST(CorpusSearch, RecordsMapProviderFields) {
  auto client = corpus_client();
  const auto p = client.get_paper("p3");
  EXPECT_EQ(p.title, "Robots in elder care");
  EXPECT_FALSE(p.year.has_value());
  EXPECT_TRUE(p.disciplines.empty());
  EXPECT_EQ(p.citation_count, 1);
  EXPECT_EQ(client.get_paper("p1").venue, "V");
  try {
    (void)client.get_paper("nope");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotFound);
  }
}

TEST(CorpusLinks, CitationsAndReferences) {
  auto client = corpus_client();
  EXPECT_EQ(ids(client.fetch_links("p1", LinkDirection::Citations)), (std::vector<std::string>{"p2", "p3"}));
  EXPECT_EQ(ids(client.fetch_links("p2", LinkDirection::References)), std::vector<std::string>{"p1"});
  EXPECT_TRUE(client.fetch_links("p3", LinkDirection::Citations).empty());
  EXPECT_THROW((void)client.fetch_links("zz", LinkDirection::Citations), Error);
}

TEST(Cache, SecondIdenticalRequestIsServedFromDisk) {
  TempDir cache;
  auto client = corpus_client(cache.path());
  const auto first = client.search_papers(QueryString("older news"));
  EXPECT_EQ(client.network_requests(), 1u);
  EXPECT_EQ(client.search_papers(QueryString("older news")), first);
  EXPECT_EQ(client.network_requests(), 1u);
  EXPECT_EQ(client.cache_hits(), 1u);
  // A fresh client over the same directory reuses it too.
  auto again = corpus_client(cache.path());
  EXPECT_EQ(again.search_papers(QueryString("older news")), first);
  EXPECT_EQ(again.network_requests(), 0u);
}

ScholarConfig live_config(const std::string& url) {
  ScholarConfig c;
  c.mode = ScholarMode::Live;
  c.base_url = url;
  c.api_key = "k";
  c.base_backoff = std::chrono::milliseconds(1);
  c.timeout = std::chrono::seconds(5);
  return c;
}

TEST(Live, SearchMapsProviderResponse) {
  MockServer mock;
  std::string query, key;
  mock.server().Get("/graph/v1/paper/search", [&](const httplib::Request& req, httplib::Response& res) {
    query = req.get_param_value("query");
    key = req.get_header_value("x-api-key");
    res.set_content(R"({"total":2,"offset":0,"data":[
      {"paperId":"a","title":"T","abstract":null,"fieldsOfStudy":["psychology","Basket Weaving"],"year":2019,
       "venue":"","authors":[{"authorId":"1","name":"N"}],"citationCount":-4,"url":"http://x"},
      {"paperId":"a","title":"T dup"},
      {"paperId":null,"title":"no id"}]})",
                    "application/json");
  });
  mock.start();
  ScholarClient client(live_config(mock.url("/graph/v1")));
  const auto papers = client.search_papers(QueryString("older adults & news"));
  EXPECT_EQ(query, "older adults & news");
  EXPECT_EQ(key, "k");
  ASSERT_EQ(papers.size(), 1u);
  EXPECT_EQ(papers[0].disciplines, (std::vector<DisciplineName>{"Psychology", kUnknownDiscipline}));
  EXPECT_EQ(papers[0].abstract, "");
  EXPECT_FALSE(papers[0].venue.has_value());
  EXPECT_EQ(papers[0].authors, std::vector<std::string>{"N"});
  EXPECT_EQ(papers[0].citation_count, 0);
  EXPECT_EQ(papers[0].url, "http://x");
}

TEST(Live, NotFoundAndRateLimitMapToKinds) {
  MockServer mock;
  std::atomic<int> limited{0};
  mock.server().Get("/paper/missing", [](const httplib::Request&, httplib::Response& res) { res.status = 404; });
  mock.server().Get("/paper/search", [&](const httplib::Request&, httplib::Response& res) {
    ++limited;
    res.status = 429;
    res.set_header("Retry-After", "7");
  });
  mock.start();
  ScholarClient client(live_config(mock.url()));
  try {
    (void)client.get_paper("missing");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotFound);
  }
  try {
    (void)client.search_papers(QueryString("x"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::RateLimited);
    EXPECT_EQ(e.retry_after(), 7.0);
  }
  EXPECT_EQ(limited.load(), 3);
}

TEST(Live, MalformedBodyIsReported) {
  MockServer mock;
  mock.server().Get("/paper/search", [](const httplib::Request&, httplib::Response& res) {
    res.set_content("{oops", "application/json");
  });
  mock.start();
  ScholarClient client(live_config(mock.url()));
  try {
    (void)client.search_papers(QueryString("x"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::MalformedResponse);
  }
}

TEST(Live, LinksUseNestedPaperKeys) {
  MockServer mock;
  mock.server().Get("/paper/h/references", [](const httplib::Request&, httplib::Response& res) {
    res.set_content(R"({"data":[{"citedPaper":{"paperId":"r1","title":"R"}},{"citedPaper":{"paperId":null}}]})",
                    "application/json");
  });
  mock.start();
  ScholarClient client(live_config(mock.url()));
  EXPECT_EQ(ids(client.fetch_links("h", LinkDirection::References)), std::vector<std::string>{"r1"});
}

TEST(Live, ServerErrorsRetryThenFail) {
  MockServer mock;
  std::atomic<int> hits{0};
  mock.server().Get("/paper/search", [&](const httplib::Request&, httplib::Response& res) {
    ++hits;
    res.status = 502;
  });
  mock.start();
  ScholarClient client(live_config(mock.url()));
  try {
    (void)client.search_papers(QueryString("x"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NetworkError);
    EXPECT_EQ(e.attempts(), 3);
  }
  EXPECT_EQ(hits.load(), 3);
}

TEST(Live, InFlightRequestsStayUnderCap) {
  MockServer mock;
  mock.server().new_task_queue = [] { return new httplib::ThreadPool(10); };
  mock.server().Get("/paper/search", [](const httplib::Request&, httplib::Response& res) {
    std::this_thread::sleep_for(std::chrono::milliseconds(20));
    res.set_content(R"({"data":[]})", "application/json");
  });
  mock.start();
  auto config = live_config(mock.url());
  config.max_in_flight = 3;
  ScholarClient client(config);
  std::vector<QueryString> queries;
  for (int i = 0; i < 9; ++i) queries.emplace_back("q" + std::to_string(i));
  EXPECT_TRUE(client.search_all(queries).empty());
  EXPECT_LE(client.peak_in_flight(), 3u);
  EXPECT_EQ(client.network_requests(), 9u);
}

TEST(ScholarConfig, FromEnv) {
  ::setenv("SCHOLAR_MODE", "live", 1);
  ::setenv("CACHE_DIR", "/tmp/c", 1);
  const auto c = ScholarConfig::from_env();
  EXPECT_EQ(c.mode, ScholarMode::Live);
  EXPECT_EQ(c.cache_dir, "/tmp/c");
  ::setenv("SCHOLAR_MODE", "other", 1);
  EXPECT_THROW((void)ScholarConfig::from_env(), Error);
  ::unsetenv("SCHOLAR_MODE");
  ::unsetenv("CACHE_DIR");
}

}  // namespace
}  // namespace coexplore::scholar
