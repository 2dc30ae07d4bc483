// One PASS/FAIL line per acceptance criterion; exit status 1 when any fails.
// usage: acceptance [--only NAME]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/core.h>
#include <spdlog/spdlog.h>

#include "coexplore/eq_engine.hpp"
#include "coexplore/explore_rank.hpp"
#include "coexplore/explorer.hpp"
#include "coexplore/query_engine.hpp"
#include "coexplore/relevance.hpp"
#include "coexplore/session.hpp"
#include "coexplore/theming.hpp"
#include "test_support.hpp"

using namespace coexplore;
using coexplore::testing::TempDir;
using nlohmann::json;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

json inventory() { return testing::read_json(testing::test_data("fixture_eqs.json")); }

ExploratoryQuestion eq_from(const json& item, std::size_t index) {
  ExploratoryQuestion eq;
  eq.id = "eq-" + std::to_string(index + 1);
  eq.text = item.at("question").get<std::string>();
  eq.discipline = item.at("discipline").get<std::string>();
  if (item.contains("subfield")) eq.subfield = item.at("subfield").get<std::string>();
  eq.selected = true;
  return eq;
}

Outcome determinism() {
  TempDir tmp;
  const std::string topic = "misinformation awareness among older adults";
  std::vector<std::string> outputs;
  double slowest = 0.0;
  ::setenv("LLM_MODE", "scripted", 1);
  ::setenv("SCHOLAR_MODE", "corpus", 1);
  for (int run = 0; run < 3; ++run) {
    const auto out = tmp.path() / fmt::format("run{}.json", run);
    const auto cmd = fmt::format("\"{}\" explore --topic \"{}\" --max-fields 6 --format json --out \"{}\" "
                                 "--scripted \"{}\" --corpus \"{}\" --log-level warn > /dev/null",
                                 COEXPLORE_CLI_PATH, topic, out.string(), testing::fixture_dir().string(),
                                 testing::corpus_path().string());
    const auto start = std::chrono::steady_clock::now();
    const int rc = std::system(cmd.c_str());
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    slowest = std::max(slowest, secs);
    if (rc != 0) return {false, fmt::format("run {} exited with status {}", run + 1, rc)};
    outputs.push_back(util::read_file(out));
  }
  const bool same = outputs[0] == outputs[1] && outputs[1] == outputs[2];
  const auto topics = json::parse(outputs[0]).at("topics").size();
  return {same && slowest < 10.0 && topics > 0,
          fmt::format("3 runs {}, {} bytes, {} outline topics, slowest {:.2f} s", same ? "byte-identical" : "DIFFER",
                      outputs[0].size(), topics, slowest)};
}

Outcome query_count() {
  auto gateway = testing::scripted_gateway();
  query::QueryEngine engine(*gateway);
  const auto eqs = inventory().at("explored_eqs");
  std::size_t ok = 0, padded = 0, reprompted = 0;
  std::vector<std::string> bad;
  for (std::size_t i = 0; i < eqs.size(); ++i) {
    const auto eq = eq_from(eqs[i], i);
    const auto expansion = engine.expand_queries(eq, normalize_topic(eqs[i].at("topic").get<std::string>()));
    if (expansion.queries.size() == query::kQueriesPerEq) {
      ++ok;
    } else {
      bad.push_back(fmt::format("{} -> {}", eq.text, expansion.queries.size()));
    }
    padded += expansion.padded > 0;
    reprompted += expansion.reprompted;
  }
  return {ok == eqs.size() && !eqs.empty(),
          fmt::format("{}/{} EQs yield 9 queries ({} reprompted, {} padded){}", ok, eqs.size(), reprompted, padded,
                      bad.empty() ? "" : "; " + text::join(bad, "; "))};
}

Outcome concreteness() {
  auto gateway = testing::scripted_gateway();
  query::QueryEngine engine(*gateway);
  std::vector<std::string> with_pa, without_pa;
  const auto items = inventory().at("appendix_queries");
  for (std::size_t i = 0; i < items.size(); ++i) {
    const auto eq = eq_from(items[i], i);
    for (const auto& q : engine.expand_queries(eq, normalize_topic(items[i].at("topic").get<std::string>())).queries) {
      with_pa.push_back(q.text());
    }
    const auto plain = engine.queries_without_pseudo_answers(eq);
    without_pa.insert(without_pa.end(), plain.begin(), plain.end());
  }
  const auto& lexicon = query::ConcretenessLexicon::bundled();
  const auto a = query::concreteness_score(with_pa, lexicon);
  const auto b = query::concreteness_score(without_pa, lexicon);
  return {a.mean > b.mean,
          fmt::format("with-PA {:.2f} (sd {:.2f}, n={}, coverage {:.2f}) vs without-PA {:.2f} (sd {:.2f}, n={}, "
                      "coverage {:.2f})",
                      a.mean, a.sd, a.scored_queries, a.coverage, b.mean, b.sd, b.scored_queries, b.coverage)};
}

Vector at_cosine(double c) { return Vector({c, std::sqrt(1.0 - c * c)}); }

Outcome threshold() {
  relevance::RelevanceConfig config;
  const relevance::EmbeddingTable table{
      {"concept", Vector({1.0, 0.0})}, {"below", at_cosine(0.59)}, {"above", at_cosine(0.61)}};
  const auto kept = relevance::relevant_phrases({"concept"}, {"below", "above"}, table, config);
  const bool boundary = kept == std::vector<std::string>{"above"};

  std::mt19937_64 rng(20240917);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::size_t monotone = 0;
  for (int trial = 0; trial < 100; ++trial) {
    auto random_vec = [&] {
      std::vector<double> v(6);
      for (auto& x : v) x = normal(rng);
      return Vector(std::move(v));
    };
    std::vector<Vector> concepts(1 + trial % 4), phrases(5 + trial % 20);
    for (auto& v : concepts) v = random_vec();
    for (auto& v : phrases) v = random_vec();
    std::vector<double> taus(12);
    for (auto& t : taus) t = unit(rng);
    std::sort(taus.begin(), taus.end());
    bool ok = true;
    std::vector<std::size_t> previous;
    for (std::size_t k = 0; k < taus.size(); ++k) {
      const auto current = relevance::relevant_phrase_indices(concepts, phrases, taus[k]);
      if (k > 0 && !std::includes(previous.begin(), previous.end(), current.begin(), current.end())) ok = false;
      previous = current;
    }
    monotone += ok;
  }
  return {boundary && monotone == 100,
          fmt::format("0.59 {} / 0.61 {} at tau 0.6; monotone in tau on {}/100 random fixtures",
                      boundary ? "excluded" : "WRONG", boundary ? "included" : "WRONG", monotone)};
}

Outcome key_sentence_oracle() {
  const auto cases = testing::read_json(testing::test_data("key_sentence_cases.json"));
  llm::EmbeddingCache cache(testing::scripted_gateway());
  std::size_t agree = 0;
  for (const auto& c : cases) {
    relevance::RelevanceConfig config;
    config.tau = c.at("tau").get<double>();
    const auto result = relevance::key_sentence(c.at("sentences").get<std::vector<std::string>>(),
                                                c.at("concepts").get<std::vector<std::string>>(), cache, config);
    const auto expected = c.at("covered").get<std::vector<std::string>>();
    agree += result.sentence_index == c.at("key_index").get<std::size_t>() && result.covered_concepts == expected;
  }
  return {agree == cases.size() && cases.size() == 100,
          fmt::format("{}/{} abstracts match the brute-force oracle", agree, cases.size())};
}

Outcome dbscan_oracle() {
  const auto cases = testing::read_json(testing::test_data("dbscan_cases.json"));
  std::size_t agree = 0, points = 0;
  for (const auto& c : cases) {
    std::vector<Vector> pts;
    for (const auto& p : c.at("points")) pts.emplace_back(p.get<std::vector<double>>());
    points += pts.size();
    theming::ClusteringParams params{c.at("eps").get<double>(), c.at("min_pts").get<std::size_t>()};
    const auto got = theming::dbscan(pts, params);
    std::set<std::vector<std::size_t>> got_parts(got.clusters.begin(), got.clusters.end());
    const auto want = c.at("clusters").get<std::vector<std::vector<std::size_t>>>();
    std::set<std::vector<std::size_t>> want_parts(want.begin(), want.end());
    agree += got_parts == want_parts && got.clusters.size() == want.size() &&
             got.noise == c.at("noise").get<std::vector<std::size_t>>();
  }
  return {agree == cases.size() && cases.size() == 50,
          fmt::format("{}/{} instances ({} points) match the naive reference", agree, cases.size(), points)};
}

Outcome conservation() {
  auto gateway = testing::scripted_gateway();
  auto scholar = testing::corpus_scholar();
  llm::EmbeddingCache cache(gateway);
  query::QueryEngine engine(*gateway);
  const api::ExplorerConfig config;
  const auto eqs = inventory().at("explored_eqs");
  std::size_t ok = 0, retrieved = 0, themed = 0;
  std::vector<std::string> bad;
  for (std::size_t i = 0; i < eqs.size(); ++i) {
    const auto eq = eq_from(eqs[i], i);
    const auto topic = normalize_topic(eqs[i].at("topic").get<std::string>());
    const auto expansion = engine.expand_queries(eq, topic);
    const auto papers = scholar->search_all(expansion.queries, config.results_per_query);
    std::map<std::string, int> seen;
    for (const auto& p : papers) seen[p.paper_id] = 0;
    std::size_t unknown = 0;
    if (!papers.empty()) {
      const auto themes =
          theming::extract_themes(papers, make_context(topic, eq), config.clustering, config.relevance, cache);
      for (const auto& t : themes.themes) {
        themed += t.paper_ids.size();
        for (const auto& id : t.paper_ids) seen.contains(id) ? ++seen[id] : ++unknown;
      }
      for (const auto& id : themes.possibly_relevant) seen.contains(id) ? ++seen[id] : ++unknown;
    }
    retrieved += seen.size();
    const bool exact = unknown == 0 && std::all_of(seen.begin(), seen.end(), [](auto& kv) { return kv.second == 1; });
    if (exact) {
      ++ok;
    } else {
      bad.push_back(eq.id);
    }
  }
  return {ok == eqs.size() && retrieved > 0,
          fmt::format("{}/{} EQs conserve {} retrieved papers ({} in themes){}", ok, eqs.size(), retrieved, themed,
                      bad.empty() ? "" : "; violations in " + text::join(bad, ", "))};
}

Outcome ranking() {
  const auto doc = testing::read_json(testing::test_data("ranking_table.json"));
  auto scholar = testing::corpus_scholar();
  llm::EmbeddingCache cache(testing::scripted_gateway());
  const auto papers = scholar->fetch_links(doc.at("hub_paper_id").get<std::string>(), scholar::LinkDirection::Citations);
  rank::EngagementHistory history;
  for (const auto& [d, c] : doc.at("history").items()) {
    for (int i = 0; i < c.at("papers_collected").get<int>(); ++i) {
      history = rank::record_engagement(history, {rank::EngagementKind::PaperCollected, d});
    }
    for (int i = 0; i < c.at("eqs_queried").get<int>(); ++i) {
      history = rank::record_engagement(history, {rank::EngagementKind::EqQueried, d});
    }
  }
  const auto topic = normalize_topic(doc.at("topic").get<std::string>());
  std::size_t rows = 0, matched = 0;
  double worst = 0.0;
  for (const auto& table : doc.at("tables")) {
    const double beta = table.at("beta").get<double>();
    const auto groups = rank::rank_links(papers, history, topic, cache, beta);
    const auto& want = table.at("rows");
    rows += want.size();
    for (std::size_t i = 0; i < want.size() && i < groups.size(); ++i) {
      const auto& s = groups[i].score;
      const auto& w = want[i];
      std::vector<std::string> ids;
      for (const auto& p : groups[i].papers) ids.push_back(p.paper_id);
      const double err = std::max({std::abs(s.relevance - w.at("relevance").get<double>()),
                                   std::abs(s.exploration - w.at("exploration").get<double>()),
                                   std::abs(s.combined - w.at("combined").get<double>())});
      worst = std::max(worst, err);
      matched += s.discipline == w.at("discipline").get<std::string>() &&
                 s.engagement == w.at("engagement").get<std::uint64_t>() && err <= 1e-9 &&
                 ids == w.at("papers").get<std::vector<std::string>>() && groups.size() == want.size();
    }
  }

  // E_d must fall with every recorded event.
  rank::EngagementHistory h;
  bool decreasing = true;
  double last = h.exploration_score("Education");
  for (int i = 0; i < 50; ++i) {
    const auto kind = i % 3 == 0 ? rank::EngagementKind::EqQueried : rank::EngagementKind::PaperCollected;
    h = rank::record_engagement(h, {kind, "Education"});
    const double e = h.exploration_score("Education");
    decreasing = decreasing && e < last && std::abs(e - 1.0 / (i + 2.0)) <= 1e-15;
    last = e;
  }
  return {matched == rows && rows > 0 && decreasing,
          fmt::format("{}/{} oracle rows over {} citing papers (max abs error {:.1e}); E_d strictly decreasing: {}",
                      matched, rows, papers.size(), worst, decreasing ? "yes" : "NO")};
}

// A live session with explorations to draw edits from.
session::SessionState explored_session(const std::filesystem::path& data_dir) {
  session::SessionStore store(data_dir);
  api::Explorer explorer(store, testing::scripted_gateway(), testing::corpus_scholar());
  const auto state = explorer.create_session("misinformation awareness among older adults");
  const auto eqs = explorer.generate_topic_eqs(state.session_id);
  for (std::size_t i = 0; i < 3 && i < eqs.size(); ++i) {
    explorer.update_eq(state.session_id, eqs[i].id, std::nullopt, true);
    const auto job = explorer.run_explore(state.session_id, eqs[i].id);
    if (job.status != api::JobStatus::Done) throw std::runtime_error("exploration failed: " + job.error.value_or(""));
  }
  return explorer.load(state.session_id);
}

Outcome persistence() {
  TempDir tmp;
  auto state = explored_session(tmp.path() / "explore");
  session::SessionStore store(tmp.path() / "roundtrip");
  std::mt19937_64 rng(1000);
  auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };

  std::vector<std::pair<std::string, std::string>> themes;
  for (const auto& [eq_id, e] : state.explorations) {
    for (const auto& t : e.themes.themes) themes.emplace_back(eq_id, t.id);
  }
  std::vector<std::string> paper_ids;
  for (const auto& [id, p] : state.papers) paper_ids.push_back(id);
  auto any_collection = [&]() -> std::string {
    if (state.collections.empty() || pick(10) == 0) return "col-missing";
    return state.collections[pick(state.collections.size())].id;
  };

  std::size_t applied = 0, rejected = 0, roundtrips = 0, violations = 0, unchanged_on_error = 0;
  for (int op = 1; op <= 1000; ++op) {
    const auto before = state;
    try {
      switch (pick(9)) {
        case 0: {
          const auto& [eq_id, theme_id] = themes[pick(themes.size())];
          session::apply_edit(state, session::DropTheme{eq_id, theme_id});
          break;
        }
        case 1: {
          session::DropPaper d{paper_ids[pick(paper_ids.size())], std::nullopt, std::nullopt, std::nullopt};
          if (pick(2) == 0) d.target_collection = any_collection();
          if (pick(3) == 0) {
            const auto& [eq_id, theme_id] = themes[pick(themes.size())];
            d.source_eq_id = eq_id;
            d.source_theme_id = theme_id;
          }
          session::apply_edit(state, d);
          break;
        }
        case 2: {
          const auto from = any_collection();
          std::string paper = paper_ids[pick(paper_ids.size())];
          if (const auto* c = state.find_collection(from); c && !c->paper_ids.empty() && pick(4) != 0) {
            paper = c->paper_ids[pick(c->paper_ids.size())];
          }
          session::apply_edit(state, session::MovePaper{paper, from, any_collection()});
          break;
        }
        case 3: {
          const auto id = any_collection();
          std::string paper = "missing-paper";
          if (const auto* c = state.find_collection(id); c && !c->paper_ids.empty()) {
            paper = c->paper_ids[pick(c->paper_ids.size())];
          }
          session::apply_edit(state, session::RemovePaper{id, paper});
          break;
        }
        case 4:
          session::apply_edit(state, session::CreateCollection{pick(8) == 0 ? "  " : fmt::format("Topic {}", op)});
          break;
        case 5:
          session::apply_edit(state, session::RenameCollection{any_collection(), fmt::format("Renamed {}", op)});
          break;
        case 6:
          if (pick(3) == 0) session::apply_edit(state, session::DeleteCollection{any_collection()});
          break;
        case 7: {
          const auto& eq = state.eqs[pick(state.eqs.size())];
          std::optional<std::string> text;
          if (pick(2) == 0) text = eq.text + " today?";
          session::update_eq(state, eq.id, text, pick(2) == 0);
          break;
        }
        default:
          session::create_user_eq(state, fmt::format("What else matters for case {}?", op),
                                  pick(5) == 0 ? "Not A Field" : "Sociology");
      }
      ++applied;
    } catch (const Error&) {
      ++rejected;
      unchanged_on_error += state == before;
    }
    violations += !session::check_invariants(state).empty();
    if (op % 100 == 0) {
      store.save(state);
      const bool equal = store.load(state.session_id) == state && session::deserialize(session::serialize(state)) == state;
      roundtrips += equal;
    }
  }
  std::size_t collected = 0;
  for (const auto& c : state.collections) collected += c.paper_ids.size();
  return {violations == 0 && roundtrips == 10 && unchanged_on_error == rejected,
          fmt::format("1000 ops ({} applied, {} rejected with state untouched in {}), {} invariant violations, "
                      "{}/10 roundtrips equal, {} collections holding {} papers",
                      applied, rejected, unchanged_on_error, violations, roundtrips, state.collections.size(),
                      collected)};
}

Outcome eq_validation() {
  auto gateway = testing::scripted_gateway();
  llm::EmbeddingCache cache(gateway);
  eq::EqEngine engine(cache);
  const auto inv = inventory();
  std::vector<std::vector<ExploratoryQuestion>> batches;
  for (const auto& b : inv.at("generation_batches")) {
    batches.push_back(engine.generate_eqs(normalize_topic(b.at("research_idea").get<std::string>()),
                                          {b.at("discipline").get<std::string>(), b.at("persona").get<std::string>()},
                                          3, llm::template_from_string(b.at("template").get<std::string>())));
  }
  const auto topic = normalize_topic("misinformation awareness among older adults");
  batches.push_back(engine.generate_for_topic(topic));
  const auto topic_eqs = batches.back();
  const auto corpus = scholar::Corpus::load(testing::corpus_path());
  for (const auto& s : inv.at("paper_seeded")) {
    const auto title = s.at("title").get<std::string>();
    const auto paper = std::find_if(corpus.papers.begin(), corpus.papers.end(),
                                    [&](const PaperRecord& p) { return p.title == title; });
    if (paper == corpus.papers.end()) throw std::runtime_error("seed paper missing from corpus: " + title);
    batches.push_back(engine.eqs_from_paper(*paper, {"older adults"}, topic, topic_eqs));
  }
  std::size_t questions = 0, marked = 0, idempotent = 0;
  for (const auto& batch : batches) {
    for (const auto& q : batch) {
      ++questions;
      marked += !q.text.empty() && q.text.back() == '?';
    }
    const auto once = eq::dedupe_eqs(batch, cache);
    idempotent += eq::dedupe_eqs(once, cache) == once;
  }
  return {questions > 0 && marked == questions && idempotent == batches.size(),
          fmt::format("{}/{} questions end in '?'; dedupe idempotent on {}/{} batches", marked, questions, idempotent,
                      batches.size())};
}

}  // namespace

int main(int argc, char** argv) {
  spdlog::set_level(spdlog::level::warn);
  std::string only;
  if (argc == 3 && std::string(argv[1]) == "--only") only = argv[2];

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"determinism", determinism},
      {"query_count", query_count},
      {"concreteness", concreteness},
      {"threshold", threshold},
      {"key_sentence", key_sentence_oracle},
      {"dbscan", dbscan_oracle},
      {"conservation", conservation},
      {"ranking", ranking},
      {"persistence", persistence},
      {"eq_validation", eq_validation},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    if (!only.empty() && name != only) continue;
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    failures += !o.pass;
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
