#pragma once

#include <filesystem>
#include <string>
#include <unordered_map>
#include <vector>

#include "coexplore/llm_gateway.hpp"
#include "coexplore/scholar_client.hpp"
#include "coexplore/types.hpp"

namespace coexplore::query {

inline constexpr std::size_t kQueriesPerEq = 9;

struct BulletTerms {
  std::string bullet;
  std::vector<std::string> terms;
  friend bool operator==(const BulletTerms&, const BulletTerms&) = default;
};

// Audit record of the pseudo-answer -> terms -> queries chain for one EQ.
struct QueryExpansion {
  std::string eq_id;
  std::vector<std::string> pseudo_answers;
  std::vector<BulletTerms> terms;
  std::vector<scholar::QueryString> queries;  // exactly kQueriesPerEq
  bool reprompted = false;
  std::size_t padded = 0;  // queries synthesized from term combinations

  friend bool operator==(const QueryExpansion&, const QueryExpansion&) = default;
};

// Parses a query-list completion: one query per line, markers and quotes
// stripped, case-insensitive duplicates and copies of the question removed,
// long queries cut at a word boundary to 300 characters.
std::vector<std::string> parse_queries(std::string_view completion, std::string_view question);

class QueryEngine {
 public:
  explicit QueryEngine(llm::LlmGateway& gateway) : gateway_(gateway) {}

  QueryExpansion expand_queries(const ExploratoryQuestion& eq, const ResearchTopic& context);

  // Single-prompt baseline without pseudo-answers (evaluation harness only).
  std::vector<std::string> queries_without_pseudo_answers(const ExploratoryQuestion& eq);

 private:
  llm::LlmGateway& gateway_;
};

// Word -> concreteness rating on the MRC 100-700 scale.
class ConcretenessLexicon {
 public:
  ConcretenessLexicon() = default;
  explicit ConcretenessLexicon(std::unordered_map<std::string, double> entries);

  // Two columns, word<TAB>rating; blank lines and '#' comments skipped.
  static ConcretenessLexicon parse(std::string_view tsv);
  static ConcretenessLexicon load(const std::filesystem::path& path);
  // Mini-lexicon compiled into the library.
  static const ConcretenessLexicon& bundled();
  // MRC_LEXICON_PATH when set, otherwise the bundled mini-lexicon.
  static ConcretenessLexicon from_env_or_bundled();

  // Exact word, then its singular form.
  std::optional<double> rating(std::string_view word) const;
  std::size_t size() const { return entries_.size(); }

 private:
  std::unordered_map<std::string, double> entries_;
};

struct ConcretenessSummary {
  double mean = 0.0;      // mean of per-query scores
  double sd = 0.0;        // sample standard deviation (0 for one scored query)
  double coverage = 0.0;  // covered words / all words
  std::size_t scored_queries = 0;
};

// Per-query score is the mean rating of its lexicon-covered words; queries
// without covered words do not contribute a score. Throws NoCoveredWords when
// nothing is covered and InvalidArgument on an empty list.
ConcretenessSummary concreteness_score(const std::vector<std::string>& queries, const ConcretenessLexicon& lexicon);

}  // namespace coexplore::query
