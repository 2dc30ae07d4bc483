#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "coexplore/llm_gateway.hpp"
#include "coexplore/text.hpp"
#include "coexplore/types.hpp"

namespace coexplore::relevance {

struct RelevanceConfig {
  // A phrase is relevant when its best concept similarity is strictly above tau.
  double tau = 0.6;
  // Weights of the (text, discipline, keyphrase) segments.
  std::array<double, 3> segment_weights{1.0, 1.0, 1.0};

  void validate() const;
};

using EmbeddingTable = std::unordered_map<std::string, Vector>;

// Throws DimensionMismatch or ZeroVector.
double cosine(const Vector& a, const Vector& b);

// Indices i with max_j cosine(concepts[j], phrases[i]) > tau, ascending.
std::vector<std::size_t> relevant_phrase_indices(std::span<const Vector> concepts, std::span<const Vector> phrases,
                                                 double tau);

// Phrases whose best concept similarity exceeds tau, in input order.
// Throws MissingEmbedding when a concept or phrase has no entry in `table`.
std::vector<std::string> relevant_phrases(const std::vector<std::string>& concepts,
                                          const std::vector<std::string>& phrases, const EmbeddingTable& table,
                                          const RelevanceConfig& config);

// Same, fetching embeddings through the cache.
std::vector<std::string> relevant_phrases(const std::vector<std::string>& concepts,
                                          const std::vector<std::string>& phrases, llm::EmbeddingCache& embeddings,
                                          const RelevanceConfig& config);

struct ContextualEmbedding {
  Vector text_segment;
  Vector discipline_segment;
  Vector keyphrase_segment;
  Vector combined;
  // Phrases of the paper metadata that cleared tau.
  std::vector<std::string> relevant_phrases;
};

ContextualEmbedding contextual_embedding(const PaperRecord& paper, const ExplorationContext& context,
                                         const RelevanceConfig& config, llm::EmbeddingCache& embeddings);

// Batched form; embeddings for all papers are requested up front.
std::vector<ContextualEmbedding> contextual_embeddings(const std::vector<PaperRecord>& papers,
                                                       const ExplorationContext& context,
                                                       const RelevanceConfig& config,
                                                       llm::EmbeddingCache& embeddings);

struct KeySentenceResult {
  std::size_t sentence_index = 0;
  std::string sentence;
  std::vector<std::string> covered_concepts;
};

struct SentenceCoverage {
  std::size_t sentence_index = 0;
  std::vector<std::size_t> covered;  // concept indices, ascending
};

// argmax over sentences of the number of concepts with at least one relevant
// phrase in the sentence; ties go to the smallest index. `sentence_phrases[i]`
// holds the phrase embeddings of sentence i. Requires at least one sentence.
SentenceCoverage key_sentence_index(std::span<const std::vector<Vector>> sentence_phrases,
                                    std::span<const Vector> concepts, double tau);

KeySentenceResult key_sentence(const std::vector<std::string>& sentences, const std::vector<std::string>& concepts,
                               llm::EmbeddingCache& embeddings, const RelevanceConfig& config);

// Information-scent cues for one paper under an exploration context.
struct PaperHighlights {
  std::vector<text::Span> title_spans;
  std::vector<text::Span> abstract_spans;
  std::vector<std::string> relevant_phrases;
  std::vector<text::SentenceSpan> sentences;
  std::optional<KeySentenceResult> key_sentence;  // absent when the abstract is empty
};

PaperHighlights highlight_paper(const PaperRecord& paper, const std::vector<std::string>& concepts,
                                llm::EmbeddingCache& embeddings, const RelevanceConfig& config);

}  // namespace coexplore::relevance
