#pragma once

#include <cstdint>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "coexplore/eq_engine.hpp"
#include "coexplore/explore_rank.hpp"
#include "coexplore/llm_gateway.hpp"
#include "coexplore/relevance.hpp"
#include "coexplore/scholar_client.hpp"
#include "coexplore/session.hpp"
#include "coexplore/theming.hpp"

namespace coexplore::api {

enum class JobStatus { Queued, Expanding, Searching, Theming, Done, Failed };
std::string_view to_string(JobStatus s);

struct ExploreJob {
  std::string job_id;
  std::string session_id;
  std::string eq_id;
  JobStatus status = JobStatus::Queued;
  double progress = 0.0;
  std::optional<std::string> error;
  std::optional<std::string> stage;  // stage that failed
};
nlohmann::json to_json(const ExploreJob& job);

enum class OutlineFormat { Json, Markdown };
OutlineFormat outline_format_from_string(std::string_view s);

struct ExplorerConfig {
  eq::EqEngineConfig eq;
  theming::ClusteringParams clustering;
  relevance::RelevanceConfig relevance;
  double beta = 1.0;
  std::size_t results_per_query = scholar::kDefaultResultsPerQuery;
};

// Drives the whole pipeline against a session store. Thread-safe.
class Explorer {
 public:
  Explorer(session::SessionStore& store, std::shared_ptr<llm::LlmGateway> gateway,
           std::shared_ptr<scholar::ScholarClient> scholar, ExplorerConfig config = {});
  ~Explorer();

  Explorer(const Explorer&) = delete;
  Explorer& operator=(const Explorer&) = delete;

  session::SessionState create_session(std::string_view topic);
  session::SessionState load(const std::string& session_id) const { return store_.load(session_id); }

  // Topic-seeded EQs, unselected.
  std::vector<ExploratoryQuestion> generate_topic_eqs(const std::string& session_id);
  // Three paper-seeded suggestions, unselected. The paper joins the session's paper table.
  std::vector<ExploratoryQuestion> generate_paper_eqs(const std::string& session_id, const std::string& paper_id,
                                                      const std::vector<std::string>& focus_keywords);
  ExploratoryQuestion update_eq(const std::string& session_id, const std::string& eq_id,
                                const std::optional<std::string>& text, const std::optional<bool>& selected);
  ExploratoryQuestion create_eq(const std::string& session_id, const std::string& text,
                                const DisciplineName& discipline);

  // Checks the preconditions, then runs the exploration on a worker thread.
  // Throws UnknownEntity or PreconditionFailed.
  std::string start_explore(const std::string& session_id, const std::string& eq_id);
  // Synchronous form; the returned job is done or failed.
  ExploreJob run_explore(const std::string& session_id, const std::string& eq_id);
  ExploreJob job(const std::string& session_id, const std::string& job_id) const;
  ExploreJob wait(const std::string& job_id);

  // ThemeSet with full paper records and highlight cues.
  nlohmann::json themes_view(const std::string& session_id, const std::string& eq_id);
  // Linked papers grouped by discipline and ranked; they join the session's paper table.
  std::vector<rank::DisciplineGroup> links(const std::string& session_id, const std::string& paper_id,
                                           scholar::LinkDirection direction);

  session::SessionState apply_edit(const std::string& session_id, const session::CollectionEdit& edit);

  std::string export_outline(const std::string& session_id, OutlineFormat format) const;

  llm::EmbeddingCache& embeddings() { return embeddings_; }
  const ExplorerConfig& config() const { return config_; }

 private:
  void execute(const std::string& job_id);
  void set_job(const std::string& job_id, JobStatus status, double progress);
  session::SessionState mutate(const std::string& session_id, const std::function<void(session::SessionState&)>& f);

  session::SessionStore& store_;
  std::shared_ptr<llm::LlmGateway> gateway_;
  std::shared_ptr<scholar::ScholarClient> scholar_;
  ExplorerConfig config_;
  llm::EmbeddingCache embeddings_;

  mutable std::mutex jobs_mutex_;
  std::map<std::string, ExploreJob> jobs_;
  std::map<std::string, std::shared_future<void>> workers_;
  std::uint64_t next_job_ = 1;
};

// Collections as outline topics. Deterministic; the session id is left out.
nlohmann::json outline_json(const session::SessionState& state);
std::string outline_markdown(const session::SessionState& state);

// Compact view returned after collection edits.
nlohmann::json session_summary(const session::SessionState& state);

}  // namespace coexplore::api
