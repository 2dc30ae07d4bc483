#pragma once

#include <map>
#include <string>
#include <vector>

#include "coexplore/dbscan.hpp"
#include "coexplore/llm_gateway.hpp"
#include "coexplore/relevance.hpp"
#include "coexplore/types.hpp"

namespace coexplore::theming {

inline constexpr double kSubclusterEpsFactor = 0.7;
inline constexpr std::size_t kThemeKeyphrases = 8;

// dbscan over cosine distance (1 - cosine similarity).
DbscanResult dbscan(const std::vector<Vector>& points, const ClusteringParams& params);
double cosine_distance(const Vector& a, const Vector& b);

struct Theme {
  std::string id;
  std::string title;
  std::vector<std::string> paper_ids;
  std::map<DisciplineName, int> discipline_histogram;
  std::vector<std::string> keyphrases;

  friend bool operator==(const Theme&, const Theme&) = default;
};

struct ThemeSet {
  std::string eq_id;
  std::vector<Theme> themes;
  std::vector<std::string> possibly_relevant;

  friend bool operator==(const ThemeSet&, const ThemeSet&) = default;
};

// Everything curation needs about the clustered papers; vectors and phrases
// are parallel to `papers`.
struct ClusteredPapers {
  std::vector<PaperRecord> papers;
  std::vector<Vector> vectors;
  std::vector<std::vector<std::string>> relevant_phrases;
  DbscanResult clustering;
};

// Asks the LLM, per cluster, whether it relates to the context (unrelated
// clusters go to possibly_relevant) and whether it should be split (one
// sub-DBSCAN pass at eps * 0.7); then titles each surviving group.
ThemeSet curate_clusters(const ClusteredPapers& input, const ExplorationContext& context,
                         const ClusteringParams& params, llm::LlmGateway& gateway);

// contextual_embedding -> dbscan -> curate_clusters. Papers are deduplicated by
// paper_id first; requires at least one paper.
ThemeSet extract_themes(const std::vector<PaperRecord>& papers, const ExplorationContext& context,
                        const ClusteringParams& params, const relevance::RelevanceConfig& config,
                        llm::EmbeddingCache& embeddings);

// Parses a yes/no judgment; nullopt when neither.
std::optional<bool> parse_yes_no(std::string_view completion);

}  // namespace coexplore::theming
