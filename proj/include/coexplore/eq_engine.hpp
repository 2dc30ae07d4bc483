#pragma once

#include <string>
#include <vector>

#include "coexplore/llm_gateway.hpp"
#include "coexplore/types.hpp"

namespace coexplore::eq {

struct FieldPath {
  DisciplineName discipline;
  std::string subfield;

  // Persona name used in the prompt.
  const std::string& persona() const { return subfield.empty() ? discipline : subfield; }
  friend bool operator==(const FieldPath&, const FieldPath&) = default;
};

inline constexpr std::size_t kMaxFieldsHardCap = 8;
inline constexpr std::size_t kPaperSeededCount = 3;

struct EqEngineConfig {
  std::size_t max_fields = 6;
  std::size_t num_rq = 3;
  double duplicate_similarity = 0.92;
  std::size_t max_words = 20;
  // Second-prompt duplicate removal instead of the embedding threshold.
  bool llm_dedup = false;
};

// Lines of a completion with list markers ("-", "*", "1.", "2)") stripped.
std::vector<std::string> completion_items(std::string_view completion);

// Fills `warnings` for texts that do not end in '?' or exceed max_words.
void validate_question(ExploratoryQuestion& eq, std::size_t max_words);

// Case- and whitespace-insensitive key used for exact-duplicate detection.
std::string duplicate_key(std::string_view question);

// Keeps the first of any exact-text duplicate or any pair whose embedding
// cosine similarity exceeds `threshold`. Order-preserving.
std::vector<ExploratoryQuestion> dedupe_eqs(const std::vector<ExploratoryQuestion>& eqs,
                                            llm::EmbeddingCache& embeddings, double threshold = 0.92);

class EqEngine {
 public:
  EqEngine(llm::EmbeddingCache& embeddings, const DisciplineRegistry& registry = DisciplineRegistry::builtin(),
           EqEngineConfig config = {});

  // Relevant disciplines and subfields; 1..min(8, max_fields) entries.
  std::vector<FieldPath> identify_fields(const ResearchTopic& topic);

  // Persona-prompted questions for one field; at most num_rq (1..10).
  // `prompt` may name an ablation template (no persona / no simplification);
  // the service always uses the default.
  std::vector<ExploratoryQuestion> generate_eqs(const ResearchTopic& topic, const FieldPath& field,
                                                std::size_t num_rq,
                                                llm::TemplateId prompt = llm::TemplateId::EqGeneration);

  std::vector<ExploratoryQuestion> dedupe(const std::vector<ExploratoryQuestion>& eqs,
                                          const ResearchTopic& topic);

  // identify_fields -> generate_eqs per field (concurrently) -> dedupe.
  std::vector<ExploratoryQuestion> generate_for_topic(const ResearchTopic& topic);

  // Three questions seeded by a paper, excluding duplicates of `existing`;
  // regenerates once when fewer than three survive.
  std::vector<ExploratoryQuestion> eqs_from_paper(const PaperRecord& paper,
                                                  const std::vector<std::string>& focus_keywords,
                                                  const ResearchTopic& context,
                                                  const std::vector<ExploratoryQuestion>& existing);

  const EqEngineConfig& config() const { return config_; }

 private:
  std::vector<ExploratoryQuestion> llm_dedupe(const std::vector<ExploratoryQuestion>& eqs,
                                              const ResearchTopic& topic);

  llm::EmbeddingCache& embeddings_;
  const DisciplineRegistry& registry_;
  EqEngineConfig config_;
};

}  // namespace coexplore::eq
