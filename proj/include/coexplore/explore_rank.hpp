#pragma once

#include <map>
#include <string>
#include <vector>

#include "coexplore/llm_gateway.hpp"
#include "coexplore/types.hpp"

namespace coexplore::rank {

enum class EngagementKind { PaperCollected, EqQueried };

struct EngagementEvent {
  EngagementKind kind;
  DisciplineName discipline;
};

struct EngagementCounters {
  std::uint64_t papers_collected = 0;  // p_d
  std::uint64_t eqs_queried = 0;       // q_d
  friend bool operator==(const EngagementCounters&, const EngagementCounters&) = default;
};

// Per-discipline engagement U_d = p_d + q_d. Counters only ever grow.
class EngagementHistory {
 public:
  void record(const EngagementEvent& event);

  EngagementCounters counters(const DisciplineName& d) const;
  std::uint64_t engagement(const DisciplineName& d) const;  // U_d
  double exploration_score(const DisciplineName& d) const;  // E_d
  const std::map<DisciplineName, EngagementCounters>& all() const { return counters_; }
  static EngagementHistory from_counters(std::map<DisciplineName, EngagementCounters> counters) {
    EngagementHistory h;
    h.counters_ = std::move(counters);
    return h;
  }

  friend bool operator==(const EngagementHistory&, const EngagementHistory&) = default;

 private:
  std::map<DisciplineName, EngagementCounters> counters_;
};

// Returns the updated history; throws InvalidArgument for a discipline outside the registry.
EngagementHistory record_engagement(EngagementHistory history, const EngagementEvent& event,
                                    const DisciplineRegistry& registry = DisciplineRegistry::builtin());

// E_d = 1 / (U_d + 1).
double exploration_score(std::uint64_t engagement);

struct DisciplineScore {
  DisciplineName discipline;
  std::uint64_t engagement = 0;  // U_d
  double exploration = 0.0;      // E_d
  double relevance = 0.0;        // V_d
  double combined = 0.0;         // C_d = beta * V_d + E_d
  double beta = 1.0;
  std::vector<std::size_t> members;  // indices into the scored papers
};

// Groups papers by discipline (a paper counts toward each of its disciplines),
// V_d = mean cosine of member embeddings to the topic embedding; sorted by C_d
// descending, then discipline name. `paper_vectors` is parallel to `papers`.
std::vector<DisciplineScore> score_disciplines(const std::vector<PaperRecord>& papers,
                                               const std::vector<Vector>& paper_vectors,
                                               const EngagementHistory& history, const Vector& topic_embedding,
                                               double beta = 1.0);

// Indices of `papers` by descending cosine to the topic, ties by paper_id.
std::vector<std::size_t> rank_papers_within(const std::vector<PaperRecord>& papers,
                                            const std::vector<Vector>& paper_vectors, const Vector& topic_embedding);

struct DisciplineGroup {
  DisciplineScore score;
  std::vector<PaperRecord> papers;  // ranked
  std::vector<double> similarities;
};

// Citation/reference drawer: ranked discipline groups with ranked papers.
std::vector<DisciplineGroup> rank_links(const std::vector<PaperRecord>& papers, const EngagementHistory& history,
                                        const ResearchTopic& topic, llm::EmbeddingCache& embeddings,
                                        double beta = 1.0);

}  // namespace coexplore::rank
