#include "coexplore/explorer.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <unordered_map>

#include <fmt/format.h>

#include "coexplore/error.hpp"
#include "coexplore/json_io.hpp"
#include "coexplore/query_engine.hpp"
#include "coexplore/serialization.hpp"
#include "coexplore/text.hpp"

namespace coexplore::api {
namespace {

using nlohmann::json;

json spans_json(const std::vector<text::Span>& spans) {
  json out = json::array();
  for (const auto& s : spans) out.push_back({s.begin, s.end});
  return out;
}

const char* stage_name(JobStatus s) {
  switch (s) {
    case JobStatus::Expanding: return "expand_queries";
    case JobStatus::Searching: return "search_papers";
    case JobStatus::Theming: return "extract_themes";
    default: return "explore";
  }
}

// Most frequent title concepts of the member papers, ties by first appearance.
std::vector<std::string> title_keyphrases(const session::SessionState& state, const session::Collection& c) {
  std::vector<std::string> order;
  std::unordered_map<std::string, int> counts;
  for (const auto& id : c.paper_ids) {
    auto it = state.papers.find(id);
    if (it == state.papers.end()) continue;
    for (auto& phrase : text::extract_concepts(it->second.title)) {
      if (counts[phrase]++ == 0) order.push_back(phrase);
    }
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](const std::string& a, const std::string& b) { return counts[a] > counts[b]; });
  if (order.size() > theming::kThemeKeyphrases) order.resize(theming::kThemeKeyphrases);
  return order;
}

std::vector<std::string> collection_keyphrases(const session::SessionState& state, const session::Collection& c) {
  return c.keyphrases.empty() ? title_keyphrases(state, c) : c.keyphrases;
}

}  // namespace

std::string_view to_string(JobStatus s) {
  switch (s) {
    case JobStatus::Queued: return "queued";
    case JobStatus::Expanding: return "expanding";
    case JobStatus::Searching: return "searching";
    case JobStatus::Theming: return "theming";
    case JobStatus::Done: return "done";
    case JobStatus::Failed: return "failed";
  }
  return "failed";
}

json to_json(const ExploreJob& job) {
  return json{{"job_id", job.job_id},
              {"session_id", job.session_id},
              {"eq_id", job.eq_id},
              {"status", std::string(to_string(job.status))},
              {"progress", job.progress},
              {"error", job.error ? json(*job.error) : json(nullptr)},
              {"stage", job.stage ? json(*job.stage) : json(nullptr)}};
}

OutlineFormat outline_format_from_string(std::string_view s) {
  if (s == "json") return OutlineFormat::Json;
  if (s == "markdown" || s == "md") return OutlineFormat::Markdown;
  throw Error(ErrorKind::InvalidArgument, fmt::format("unknown outline format '{}'", s));
}

Explorer::Explorer(session::SessionStore& store, std::shared_ptr<llm::LlmGateway> gateway,
                   std::shared_ptr<scholar::ScholarClient> scholar, ExplorerConfig config)
    : store_(store),
      gateway_(std::move(gateway)),
      scholar_(std::move(scholar)),
      config_(std::move(config)),
      embeddings_(gateway_) {
  config_.relevance.validate();
  config_.clustering.validate();
}

Explorer::~Explorer() {
  std::vector<std::shared_future<void>> pending;
  {
    std::lock_guard lock(jobs_mutex_);
    for (auto& [id, f] : workers_) pending.push_back(f);
  }
  for (auto& f : pending) f.wait();
}

session::SessionState Explorer::mutate(const std::string& session_id,
                                       const std::function<void(session::SessionState&)>& f) {
  return store_.mutate(session_id, [&](session::SessionState& s) {
    f(s);
    // Refuse to persist a state that breaks an invariant.
    if (auto issues = session::check_invariants(s); !issues.empty()) {
      throw Error(ErrorKind::CorruptState, "invariant violated: " + issues.front());
    }
  });
}

session::SessionState Explorer::create_session(std::string_view topic) { return store_.create(topic); }

std::vector<ExploratoryQuestion> Explorer::generate_topic_eqs(const std::string& session_id) {
  const auto state = store_.load(session_id);
  eq::EqEngine engine(embeddings_, DisciplineRegistry::builtin(), config_.eq);
  auto fresh = engine.generate_for_topic(state.topic);
  return store_.mutate_returning<std::vector<ExploratoryQuestion>>(
      session_id, [&](session::SessionState& s) { return session::add_eqs(s, fresh); });
}

std::vector<ExploratoryQuestion> Explorer::generate_paper_eqs(const std::string& session_id,
                                                              const std::string& paper_id,
                                                              const std::vector<std::string>& focus_keywords) {
  const auto state = store_.load(session_id);
  auto it = state.papers.find(paper_id);
  const PaperRecord paper = it != state.papers.end() ? it->second : scholar_->get_paper(paper_id);
  eq::EqEngine engine(embeddings_, DisciplineRegistry::builtin(), config_.eq);
  auto fresh = engine.eqs_from_paper(paper, focus_keywords, state.topic, state.eqs);
  for (auto& e : fresh) e.selected = false;
  return store_.mutate_returning<std::vector<ExploratoryQuestion>>(session_id, [&](session::SessionState& s) {
    session::add_papers(s, {paper});
    return session::add_eqs(s, fresh);
  });
}

ExploratoryQuestion Explorer::update_eq(const std::string& session_id, const std::string& eq_id,
                                        const std::optional<std::string>& text, const std::optional<bool>& selected) {
  return store_.mutate_returning<ExploratoryQuestion>(
      session_id, [&](session::SessionState& s) { return session::update_eq(s, eq_id, text, selected); });
}

ExploratoryQuestion Explorer::create_eq(const std::string& session_id, const std::string& text,
                                        const DisciplineName& discipline) {
  return store_.mutate_returning<ExploratoryQuestion>(
      session_id, [&](session::SessionState& s) { return session::create_user_eq(s, text, discipline); });
}

std::string Explorer::start_explore(const std::string& session_id, const std::string& eq_id) {
  const auto state = store_.load(session_id);
  const auto* eq = state.find_eq(eq_id);
  if (!eq) throw Error(ErrorKind::UnknownEntity, "no EQ " + eq_id);
  if (!eq->selected) throw Error(ErrorKind::PreconditionFailed, "EQ " + eq_id + " is not selected");

  std::lock_guard lock(jobs_mutex_);
  const auto job_id = fmt::format("job-{}", next_job_++);
  ExploreJob job;
  job.job_id = job_id;
  job.session_id = session_id;
  job.eq_id = eq_id;
  jobs_[job_id] = std::move(job);
  workers_[job_id] = std::async(std::launch::async, [this, job_id] { execute(job_id); }).share();
  return job_id;
}

ExploreJob Explorer::run_explore(const std::string& session_id, const std::string& eq_id) {
  return wait(start_explore(session_id, eq_id));
}

ExploreJob Explorer::job(const std::string& session_id, const std::string& job_id) const {
  std::lock_guard lock(jobs_mutex_);
  auto it = jobs_.find(job_id);
  if (it == jobs_.end() || it->second.session_id != session_id) {
    throw Error(ErrorKind::NotFound, "no job " + job_id);
  }
  return it->second;
}

ExploreJob Explorer::wait(const std::string& job_id) {
  std::shared_future<void> f;
  {
    std::lock_guard lock(jobs_mutex_);
    auto it = workers_.find(job_id);
    if (it == workers_.end()) throw Error(ErrorKind::NotFound, "no job " + job_id);
    f = it->second;
  }
  f.wait();
  std::lock_guard lock(jobs_mutex_);
  return jobs_.at(job_id);
}

void Explorer::set_job(const std::string& job_id, JobStatus status, double progress) {
  std::lock_guard lock(jobs_mutex_);
  auto& j = jobs_.at(job_id);
  j.status = status;
  j.progress = progress;
}

void Explorer::execute(const std::string& job_id) {
  ExploreJob job;
  {
    std::lock_guard lock(jobs_mutex_);
    job = jobs_.at(job_id);
  }
  JobStatus stage = JobStatus::Expanding;
  try {
    const auto state = store_.load(job.session_id);
    const auto* found = state.find_eq(job.eq_id);
    if (!found) throw Error(ErrorKind::UnknownEntity, "no EQ " + job.eq_id);
    const ExploratoryQuestion eq = *found;

    set_job(job_id, stage, 0.1);
    query::QueryEngine queries(*gateway_);
    auto expansion = queries.expand_queries(eq, state.topic);

    stage = JobStatus::Searching;
    set_job(job_id, stage, 0.4);
    const auto papers = scholar_->search_all(expansion.queries, config_.results_per_query);

    stage = JobStatus::Theming;
    set_job(job_id, stage, 0.7);
    theming::ThemeSet themes;
    themes.eq_id = eq.id;
    if (!papers.empty()) {
      themes = theming::extract_themes(papers, make_context(state.topic, eq), config_.clustering, config_.relevance,
                                       embeddings_);
    }

    session::Exploration exploration;
    exploration.expansion = std::move(expansion);
    for (const auto& p : papers) exploration.retrieved_paper_ids.push_back(p.paper_id);
    exploration.themes = std::move(themes);

    stage = JobStatus::Done;
    mutate(job.session_id, [&](session::SessionState& s) {
      const auto* current = s.find_eq(eq.id);
      if (!current) throw Error(ErrorKind::UnknownEntity, "EQ " + eq.id + " was removed");
      session::add_papers(s, papers);
      s.explorations[eq.id] = exploration;
      s.engagement.record({rank::EngagementKind::EqQueried, current->discipline});
    });
    set_job(job_id, JobStatus::Done, 1.0);
  } catch (const std::exception& e) {
    spdlog::warn("explore {} for {} failed in {}: {}", job_id, job.eq_id, stage_name(stage), e.what());
    std::lock_guard lock(jobs_mutex_);
    auto& j = jobs_.at(job_id);
    j.status = JobStatus::Failed;
    j.error = e.what();
    j.stage = stage == JobStatus::Done ? "commit" : stage_name(stage);
  }
}

json Explorer::themes_view(const std::string& session_id, const std::string& eq_id) {
  const auto state = store_.load(session_id);
  const auto* eq = state.find_eq(eq_id);
  if (!eq) throw Error(ErrorKind::UnknownEntity, "no EQ " + eq_id);
  auto it = state.explorations.find(eq_id);
  if (it == state.explorations.end()) throw Error(ErrorKind::NotFound, "EQ " + eq_id + " has not been explored");
  const auto context = make_context(state.topic, *eq);

  auto paper_view = [&](const std::string& id) {
    const auto& p = state.papers.at(id);
    json j = p;
    const auto h = relevance::highlight_paper(p, context.concepts, embeddings_, config_.relevance);
    j["highlights"] = {
        {"title_spans", spans_json(h.title_spans)},
        {"abstract_spans", spans_json(h.abstract_spans)},
        {"relevant_phrases", h.relevant_phrases},
        {"key_sentence_index", h.key_sentence ? json(h.key_sentence->sentence_index) : json(nullptr)},
        {"key_sentence", h.key_sentence ? json(h.key_sentence->sentence) : json(nullptr)},
    };
    return j;
  };

  const auto& set = it->second.themes;
  json themes = json::array();
  for (const auto& t : set.themes) {
    json papers = json::array();
    for (const auto& id : t.paper_ids) papers.push_back(paper_view(id));
    themes.push_back({{"id", t.id},
                      {"title", t.title},
                      {"paper_ids", t.paper_ids},
                      {"discipline_histogram", t.discipline_histogram},
                      {"keyphrases", t.keyphrases},
                      {"papers", papers}});
  }
  json possibly = json::array();
  for (const auto& id : set.possibly_relevant) possibly.push_back(paper_view(id));
  std::vector<std::string> queries;
  for (const auto& q : it->second.expansion.queries) queries.push_back(q.text());
  return json{{"eq_id", eq_id},
              {"eq", *eq},
              {"queries", queries},
              {"themes", themes},
              {"possibly_relevant", set.possibly_relevant},
              {"possibly_relevant_papers", possibly}};
}

std::vector<rank::DisciplineGroup> Explorer::links(const std::string& session_id, const std::string& paper_id,
                                                   scholar::LinkDirection direction) {
  store_.load(session_id);  // NotFound before any network work
  const auto linked = scholar_->fetch_links(paper_id, direction);
  const auto state = mutate(session_id, [&](session::SessionState& s) { session::add_papers(s, linked); });
  return rank::rank_links(linked, state.engagement, state.topic, embeddings_, config_.beta);
}

session::SessionState Explorer::apply_edit(const std::string& session_id, const session::CollectionEdit& edit) {
  return mutate(session_id, [&](session::SessionState& s) { session::apply_edit(s, edit); });
}

std::string Explorer::export_outline(const std::string& session_id, OutlineFormat format) const {
  const auto state = store_.load(session_id);
  return format == OutlineFormat::Json ? outline_json(state).dump(2) + "\n" : outline_markdown(state);
}

json outline_json(const session::SessionState& state) {
  json topics = json::array();
  for (const auto& c : state.collections) {
    json papers = json::array();
    for (const auto& id : c.paper_ids) {
      const auto& p = state.papers.at(id);
      papers.push_back({{"paper_id", p.paper_id},
                        {"title", p.title},
                        {"year", p.year ? json(*p.year) : json(nullptr)},
                        {"venue", p.venue ? json(*p.venue) : json(nullptr)},
                        {"disciplines", p.effective_disciplines()}});
    }
    topics.push_back({{"title", c.title}, {"keyphrases", collection_keyphrases(state, c)}, {"papers", papers}});
  }
  return json{{"schema_version", 1}, {"research_topic", state.topic.text}, {"topics", topics}};
}

std::string outline_markdown(const session::SessionState& state) {
  std::string out = "# " + state.topic.text + "\n";
  if (state.collections.empty()) out += "\n_No collections yet._\n";
  std::size_t n = 0;
  for (const auto& c : state.collections) {
    out += fmt::format("\n## {}. {}\n\n", ++n, c.title);
    const auto keyphrases = collection_keyphrases(state, c);
    if (!keyphrases.empty()) out += "Keyphrases: " + text::join(keyphrases, ", ") + "\n\n";
    for (const auto& id : c.paper_ids) {
      const auto& p = state.papers.at(id);
      std::string line = "- " + p.title;
      if (p.year) line += fmt::format(" ({})", *p.year);
      if (p.venue && !p.venue->empty()) line += ". " + *p.venue;
      line += ". " + text::join(p.effective_disciplines(), ", ");
      out += line + "\n";
    }
  }
  return out;
}

json session_summary(const session::SessionState& state) {
  json collections = json::array();
  for (const auto& c : state.collections) collections.push_back(c);
  return json{{"session_id", state.session_id},
              {"topic", state.topic.text},
              {"eq_count", state.eqs.size()},
              {"explored_eqs", [&] {
                 std::vector<std::string> ids;
                 for (const auto& [id, e] : state.explorations) ids.push_back(id);
                 return ids;
               }()},
              {"collections", collections},
              {"engagement", state.engagement},
              {"updated_ms", state.updated_ms}};
}

}  // namespace coexplore::api
