#include "coexplore/explore_rank.hpp"

#include <algorithm>
#include <numeric>

#include "coexplore/error.hpp"
#include "coexplore/relevance.hpp"

namespace coexplore::rank {

void EngagementHistory::record(const EngagementEvent& event) {
  auto& c = counters_[event.discipline];
  if (event.kind == EngagementKind::PaperCollected) {
    ++c.papers_collected;
  } else {
    ++c.eqs_queried;
  }
}

EngagementCounters EngagementHistory::counters(const DisciplineName& d) const {
  auto it = counters_.find(d);
  return it == counters_.end() ? EngagementCounters{} : it->second;
}

std::uint64_t EngagementHistory::engagement(const DisciplineName& d) const {
  const auto c = counters(d);
  return c.papers_collected + c.eqs_queried;
}

double EngagementHistory::exploration_score(const DisciplineName& d) const {
  return rank::exploration_score(engagement(d));
}

EngagementHistory record_engagement(EngagementHistory history, const EngagementEvent& event,
                                    const DisciplineRegistry& registry) {
  if (!registry.contains(event.discipline)) {
    throw Error(ErrorKind::InvalidArgument, "unknown discipline " + event.discipline);
  }
  history.record(event);
  return history;
}

double exploration_score(std::uint64_t engagement) { return 1.0 / (static_cast<double>(engagement) + 1.0); }

std::vector<DisciplineScore> score_disciplines(const std::vector<PaperRecord>& papers,
                                               const std::vector<Vector>& paper_vectors,
                                               const EngagementHistory& history, const Vector& topic_embedding,
                                               double beta) {
  if (papers.empty()) throw Error(ErrorKind::InvalidArgument, "no papers to score");
  if (paper_vectors.size() != papers.size()) throw Error(ErrorKind::InvalidArgument, "one vector per paper required");
  if (topic_embedding.is_zero()) throw Error(ErrorKind::ZeroVector, "topic embedding is zero");

  std::map<DisciplineName, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < papers.size(); ++i) {
    for (const auto& d : papers[i].effective_disciplines()) {
      auto& members = groups[d];
      if (members.empty() || members.back() != i) members.push_back(i);
    }
  }

  std::vector<DisciplineScore> out;
  for (auto& [discipline, members] : groups) {
    DisciplineScore s;
    s.discipline = discipline;
    s.beta = beta;
    s.engagement = history.engagement(discipline);
    s.exploration = exploration_score(s.engagement);
    double sum = 0.0;
    for (auto i : members) sum += relevance::cosine(paper_vectors[i], topic_embedding);
    s.relevance = sum / static_cast<double>(members.size());
    s.combined = beta * s.relevance + s.exploration;
    s.members = std::move(members);
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end(), [](const DisciplineScore& a, const DisciplineScore& b) {
    if (a.combined != b.combined) return a.combined > b.combined;
    return a.discipline < b.discipline;
  });
  return out;
}

std::vector<std::size_t> rank_papers_within(const std::vector<PaperRecord>& papers,
                                            const std::vector<Vector>& paper_vectors, const Vector& topic_embedding) {
  if (paper_vectors.size() != papers.size()) throw Error(ErrorKind::InvalidArgument, "one vector per paper required");
  std::vector<double> sims;
  sims.reserve(papers.size());
  for (const auto& v : paper_vectors) sims.push_back(relevance::cosine(v, topic_embedding));
  std::vector<std::size_t> order(papers.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (sims[a] != sims[b]) return sims[a] > sims[b];
    return papers[a].paper_id < papers[b].paper_id;
  });
  return order;
}

std::vector<DisciplineGroup> rank_links(const std::vector<PaperRecord>& papers, const EngagementHistory& history,
                                        const ResearchTopic& topic, llm::EmbeddingCache& embeddings, double beta) {
  if (papers.empty()) return {};
  std::vector<std::string> texts;
  for (const auto& p : papers) texts.push_back(p.metadata_text());
  const auto vectors = embeddings.get_many(texts);
  const auto topic_vec = embeddings.get(topic.text);

  std::vector<DisciplineGroup> out;
  for (auto& score : score_disciplines(papers, vectors, history, topic_vec, beta)) {
    std::vector<PaperRecord> members;
    std::vector<Vector> member_vecs;
    for (auto i : score.members) {
      members.push_back(papers[i]);
      member_vecs.push_back(vectors[i]);
    }
    DisciplineGroup group;
    for (auto k : rank_papers_within(members, member_vecs, topic_vec)) {
      group.papers.push_back(members[k]);
      group.similarities.push_back(relevance::cosine(member_vecs[k], topic_vec));
    }
    group.score = std::move(score);
    out.push_back(std::move(group));
  }
  return out;
}

}  // namespace coexplore::rank
