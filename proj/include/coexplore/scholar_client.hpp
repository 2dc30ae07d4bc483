#pragma once

#include <chrono>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "coexplore/concurrency.hpp"
#include "coexplore/types.hpp"

namespace coexplore::scholar {

inline constexpr std::size_t kMaxQueryLength = 300;
inline constexpr std::size_t kDefaultResultsPerQuery = 20;

// Keyword search string; non-empty and at most 300 characters.
class QueryString {
 public:
  explicit QueryString(std::string text);
  const std::string& text() const noexcept { return text_; }
  friend bool operator==(const QueryString&, const QueryString&) = default;

 private:
  std::string text_;
};

enum class LinkDirection { Citations, References };
std::string_view to_string(LinkDirection d);
LinkDirection link_direction_from_string(std::string_view s);

// Offline stand-in for the search provider: papers in provider order plus
// citation and reference adjacency lists.
struct Corpus {
  std::vector<PaperRecord> papers;
  std::map<std::string, std::vector<std::string>> citations;   // paper -> citing papers
  std::map<std::string, std::vector<std::string>> references;  // paper -> cited papers

  static Corpus parse(const std::string& json_text);
  static Corpus load(const std::filesystem::path& path);
  const PaperRecord* find(const std::string& paper_id) const;

 private:
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::vector<std::string>> tokens_;  // sorted unique content tokens per paper
  friend class ScholarClient;
  void build_index();
};

enum class ScholarMode { Live, Corpus };

struct ScholarConfig {
  ScholarMode mode = ScholarMode::Corpus;
  std::string base_url = "https://api.semanticscholar.org/graph/v1";
  std::string api_key;
  std::filesystem::path cache_dir;  // empty disables caching
  std::filesystem::path corpus_path;
  std::size_t max_in_flight = 5;
  int max_attempts = 3;
  std::chrono::milliseconds base_backoff{500};
  std::chrono::seconds timeout{30};

  // SCHOLAR_MODE, SCHOLAR_BASE_URL, SCHOLAR_API_KEY, CACHE_DIR, CORPUS_PATH.
  static ScholarConfig from_env();
};

class ScholarClient {
 public:
  explicit ScholarClient(ScholarConfig config, const DisciplineRegistry& registry = DisciplineRegistry::builtin());
  // Corpus mode over an in-memory corpus.
  ScholarClient(ScholarConfig config, Corpus corpus,
                const DisciplineRegistry& registry = DisciplineRegistry::builtin());

  // At most `limit` (1..100) records, deduplicated by paper_id.
  std::vector<PaperRecord> search_papers(const QueryString& query, std::size_t limit = kDefaultResultsPerQuery);

  // Runs the queries concurrently and merges results in query order, keeping
  // the first occurrence of each paper_id.
  std::vector<PaperRecord> search_all(const std::vector<QueryString>& queries,
                                      std::size_t limit_per_query = kDefaultResultsPerQuery);

  std::vector<PaperRecord> fetch_links(const std::string& paper_id, LinkDirection direction);
  PaperRecord get_paper(const std::string& paper_id);

  std::size_t network_requests() const;
  std::size_t cache_hits() const;
  std::size_t peak_in_flight() const { return gate_.peak(); }

 private:
  // Cached response body for a request; `origin` produces it on a miss.
  std::string fetch(const std::string& cache_key_material, const std::function<std::string()>& origin);
  std::string live_get(const std::string& path);
  std::string corpus_search(const QueryString& query, std::size_t limit) const;
  std::string corpus_links(const std::string& paper_id, LinkDirection direction) const;
  std::string corpus_paper(const std::string& paper_id) const;

  ScholarConfig config_;
  const DisciplineRegistry& registry_;
  std::unique_ptr<Corpus> corpus_;
  AdmissionGate gate_;
  mutable std::mutex stats_mutex_;
  std::size_t network_requests_ = 0;
  std::size_t cache_hits_ = 0;
};

}  // namespace coexplore::scholar
