#include "coexplore/theming.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "coexplore/error.hpp"
#include "coexplore/text.hpp"

namespace coexplore::theming {
namespace {

using llm::PromptRequest;
using llm::TemplateId;

std::string paper_listing(const ClusteredPapers& input, const std::vector<std::size_t>& members) {
  std::string out;
  for (std::size_t k = 0; k < members.size(); ++k) {
    const auto& p = input.papers[members[k]];
    out += std::to_string(k + 1) + ". " + p.title + " [" + text::join(p.effective_disciplines(), ", ") + "]";
    if (k + 1 < members.size()) out += "\n";
  }
  return out;
}

std::map<std::string, std::string> judgment_variables(const ClusteredPapers& input,
                                                      const std::vector<std::size_t>& members,
                                                      const ExplorationContext& context) {
  return {{"research_idea", context.topic.text},
          {"question", context.eq.text},
          {"papers", paper_listing(input, members)}};
}

bool ask(llm::LlmGateway& gateway, TemplateId id, std::map<std::string, std::string> vars, bool fallback) {
  const auto answer = gateway.complete(PromptRequest{id, std::move(vars), llm::kJudgmentTemperature});
  if (auto parsed = parse_yes_no(answer)) return *parsed;
  spdlog::warn("unparseable {} judgment '{}', assuming {}", llm::to_string(id), text::trim(answer),
               fallback ? "yes" : "no");
  return fallback;
}

std::vector<std::string> top_keyphrases(const ClusteredPapers& input, const std::vector<std::size_t>& members) {
  std::map<std::string, int> counts;
  for (auto i : members) {
    for (const auto& p : input.relevant_phrases[i]) ++counts[p];
  }
  std::vector<std::pair<std::string, int>> ranked(counts.begin(), counts.end());
  std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
  std::vector<std::string> out;
  for (std::size_t k = 0; k < ranked.size() && k < kThemeKeyphrases; ++k) out.push_back(ranked[k].first);
  return out;
}

std::string clean_title(std::string_view completion) {
  std::string first = text::trim(completion.substr(0, completion.find('\n')));
  if (first.rfind("Title:", 0) == 0) first = text::trim(std::string_view(first).substr(6));
  while (!first.empty() && (first.front() == '"' || first.front() == '\'' || first.front() == '*')) first.erase(0, 1);
  while (!first.empty() && (first.back() == '"' || first.back() == '\'' || first.back() == '*')) first.pop_back();
  return text::trim(first);
}

// Splits one cluster with a tighter radius; leftover points join the most
// similar subcluster so the parts still cover the original members.
std::vector<std::vector<std::size_t>> subcluster(const ClusteredPapers& input, const std::vector<std::size_t>& members,
                                                 const ClusteringParams& params) {
  std::vector<Vector> points;
  for (auto i : members) points.push_back(input.vectors[i]);
  const auto sub = dbscan(points, ClusteringParams{params.eps * kSubclusterEpsFactor, params.min_pts});
  if (sub.clusters.empty()) return {members};

  std::vector<std::vector<std::size_t>> local = sub.clusters;
  for (auto n : sub.noise) {
    std::size_t best_group = 0;
    double best_sim = -2.0;
    for (std::size_t g = 0; g < sub.clusters.size(); ++g) {
      for (auto m : sub.clusters[g]) {
        const double sim = relevance::cosine(points[n], points[m]);
        if (sim > best_sim) {
          best_sim = sim;
          best_group = g;
        }
      }
    }
    local[best_group].push_back(n);
  }
  std::vector<std::vector<std::size_t>> out;
  for (auto& group : local) {
    std::sort(group.begin(), group.end());
    auto& mapped = out.emplace_back();
    for (auto k : group) mapped.push_back(members[k]);
  }
  return out;
}

}  // namespace

double cosine_distance(const Vector& a, const Vector& b) { return 1.0 - relevance::cosine(a, b); }

DbscanResult dbscan(const std::vector<Vector>& points, const ClusteringParams& params) {
  params.validate();
  for (const auto& p : points) {
    if (p.dimension() != points.front().dimension()) throw Error(ErrorKind::DimensionMismatch, "dbscan points");
  }
  return dbscan(std::span<const Vector>(points), params.eps, params.min_pts, cosine_distance);
}

std::optional<bool> parse_yes_no(std::string_view completion) {
  std::string s = text::to_lower(text::trim(completion));
  while (!s.empty() && !std::isalpha(static_cast<unsigned char>(s.front()))) s.erase(0, 1);
  auto starts_with_word = [&](std::string_view w) {
    return s.rfind(w, 0) == 0 && (s.size() == w.size() || !std::isalpha(static_cast<unsigned char>(s[w.size()])));
  };
  if (starts_with_word("yes")) return true;
  if (starts_with_word("no")) return false;
  return std::nullopt;
}

ThemeSet curate_clusters(const ClusteredPapers& input, const ExplorationContext& context,
                         const ClusteringParams& params, llm::LlmGateway& gateway) {
  ThemeSet out;
  out.eq_id = context.eq.id;
  std::vector<std::size_t> leftovers(input.clustering.noise);

  std::vector<std::vector<std::size_t>> groups;
  for (const auto& cluster : input.clustering.clusters) {
    auto vars = judgment_variables(input, cluster, context);
    if (!ask(gateway, TemplateId::ClusterRelevance, vars, true)) {
      leftovers.insert(leftovers.end(), cluster.begin(), cluster.end());
      continue;
    }
    if (ask(gateway, TemplateId::ClusterDivisible, vars, false)) {
      for (auto& part : subcluster(input, cluster, params)) groups.push_back(std::move(part));
    } else {
      groups.push_back(cluster);
    }
  }

  for (const auto& group : groups) {
    Theme theme;
    theme.id = context.eq.id + "-t" + std::to_string(out.themes.size() + 1);
    for (auto i : group) {
      theme.paper_ids.push_back(input.papers[i].paper_id);
      for (const auto& d : input.papers[i].effective_disciplines()) ++theme.discipline_histogram[d];
    }
    theme.keyphrases = top_keyphrases(input, group);
    auto vars = judgment_variables(input, group, context);
    vars["keyphrases"] = theme.keyphrases.empty() ? "(none)" : text::join(theme.keyphrases, ", ");
    theme.title = clean_title(gateway.complete(PromptRequest{TemplateId::ThemeTitle, std::move(vars)}));
    if (theme.title.empty()) {
      spdlog::warn("empty theme title for {}", theme.id);
      theme.title = theme.keyphrases.empty() ? "Untitled theme" : theme.keyphrases.front();
    }
    out.themes.push_back(std::move(theme));
  }

  std::sort(leftovers.begin(), leftovers.end());
  for (auto i : leftovers) out.possibly_relevant.push_back(input.papers[i].paper_id);
  return out;
}

ThemeSet extract_themes(const std::vector<PaperRecord>& papers, const ExplorationContext& context,
                        const ClusteringParams& params, const relevance::RelevanceConfig& config,
                        llm::EmbeddingCache& embeddings) {
  if (papers.empty()) throw Error(ErrorKind::InvalidArgument, "extract_themes needs at least one paper");
  params.validate();
  ClusteredPapers input;
  std::unordered_set<std::string> seen;
  for (const auto& p : papers) {
    if (seen.insert(p.paper_id).second) input.papers.push_back(p);
  }
  auto contextual = relevance::contextual_embeddings(input.papers, context, config, embeddings);
  for (auto& c : contextual) {
    input.vectors.push_back(std::move(c.combined));
    input.relevant_phrases.push_back(std::move(c.relevant_phrases));
  }
  input.clustering = dbscan(input.vectors, params);
  return curate_clusters(input, context, params, embeddings.gateway());
}

}  // namespace coexplore::theming
