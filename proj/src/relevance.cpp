#include "coexplore/relevance.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "coexplore/error.hpp"

namespace coexplore::relevance {
namespace {

EmbeddingTable fetch_table(const std::vector<std::string>& texts, llm::EmbeddingCache& embeddings) {
  EmbeddingTable table;
  if (texts.empty()) return table;
  auto vectors = embeddings.get_many(texts);
  for (std::size_t i = 0; i < texts.size(); ++i) table.insert_or_assign(texts[i], std::move(vectors[i]));
  return table;
}

const Vector& lookup(const EmbeddingTable& table, const std::string& text) {
  auto it = table.find(text);
  if (it == table.end()) throw Error(ErrorKind::MissingEmbedding, "no embedding for '" + text + "'");
  return it->second;
}

Vector unit_or_zero(const Vector& v) { return v.is_zero() ? v : v.normalized(); }

Vector mean(const std::vector<const Vector*>& vectors, std::size_t dimension) {
  std::vector<double> sum(dimension, 0.0);
  for (const Vector* v : vectors) {
    if (v->dimension() != dimension) throw Error(ErrorKind::DimensionMismatch, "phrase embedding dimension");
    for (std::size_t i = 0; i < dimension; ++i) sum[i] += (*v)[i];
  }
  if (!vectors.empty()) {
    for (double& x : sum) x /= static_cast<double>(vectors.size());
  }
  return Vector(std::move(sum));
}

ContextualEmbedding assemble(const PaperRecord& paper, const ExplorationContext& context,
                             const RelevanceConfig& config, const EmbeddingTable& table) {
  ContextualEmbedding out;
  const Vector& text_vec = lookup(table, paper.metadata_text());
  const std::size_t dim = text_vec.dimension();
  out.text_segment = unit_or_zero(text_vec);

  const auto& disciplines = paper.disciplines;
  const bool discipline_match =
      std::find(disciplines.begin(), disciplines.end(), context.eq.discipline) != disciplines.end();
  out.discipline_segment = discipline_match ? unit_or_zero(lookup(table, context.eq.discipline)) : Vector::zeros(dim);

  out.relevant_phrases =
      relevant_phrases(context.concepts, text::extract_concepts(paper.metadata_text()), table, config);
  std::vector<const Vector*> members;
  for (const auto& p : out.relevant_phrases) members.push_back(&lookup(table, p));
  out.keyphrase_segment = members.empty() ? Vector::zeros(dim) : unit_or_zero(mean(members, dim));

  const std::array<Vector, 3> weighted{out.text_segment.scaled(config.segment_weights[0]),
                                       out.discipline_segment.scaled(config.segment_weights[1]),
                                       out.keyphrase_segment.scaled(config.segment_weights[2])};
  out.combined = concat(weighted);
  return out;
}

std::vector<std::string> texts_for(const PaperRecord& paper, const ExplorationContext& context) {
  std::vector<std::string> texts{paper.metadata_text(), context.eq.discipline};
  for (auto& p : text::extract_concepts(paper.metadata_text())) texts.push_back(std::move(p));
  return texts;
}

}  // namespace

void RelevanceConfig::validate() const {
  if (!(tau > 0.0 && tau < 1.0)) throw Error(ErrorKind::InvalidArgument, "tau must be in (0, 1)");
  bool any = false;
  for (double w : segment_weights) {
    if (!(w >= 0.0)) throw Error(ErrorKind::InvalidArgument, "segment weights must be nonnegative");
    any = any || w > 0.0;
  }
  if (!any) throw Error(ErrorKind::InvalidArgument, "segment weights must not all be zero");
}

double cosine(const Vector& a, const Vector& b) {
  if (a.dimension() != b.dimension()) {
    throw Error(ErrorKind::DimensionMismatch,
                std::to_string(a.dimension()) + " vs " + std::to_string(b.dimension()));
  }
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.dimension(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) throw Error(ErrorKind::ZeroVector, "cosine of a zero vector");
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), -1.0, 1.0);
}

std::vector<std::size_t> relevant_phrase_indices(std::span<const Vector> concepts, std::span<const Vector> phrases,
                                                 double tau) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < phrases.size(); ++i) {
    for (const auto& c : concepts) {
      if (cosine(c, phrases[i]) > tau) {
        out.push_back(i);
        break;
      }
    }
  }
  return out;
}

std::vector<std::string> relevant_phrases(const std::vector<std::string>& concepts,
                                          const std::vector<std::string>& phrases, const EmbeddingTable& table,
                                          const RelevanceConfig& config) {
  if (phrases.empty()) return {};
  std::vector<Vector> concept_vecs;
  concept_vecs.reserve(concepts.size());
  for (const auto& c : concepts) concept_vecs.push_back(lookup(table, c));
  std::vector<Vector> phrase_vecs;
  phrase_vecs.reserve(phrases.size());
  for (const auto& p : phrases) phrase_vecs.push_back(lookup(table, p));
  std::vector<std::string> out;
  for (auto i : relevant_phrase_indices(concept_vecs, phrase_vecs, config.tau)) out.push_back(phrases[i]);
  return out;
}

std::vector<std::string> relevant_phrases(const std::vector<std::string>& concepts,
                                          const std::vector<std::string>& phrases, llm::EmbeddingCache& embeddings,
                                          const RelevanceConfig& config) {
  if (phrases.empty()) return {};
  std::vector<std::string> texts(concepts);
  texts.insert(texts.end(), phrases.begin(), phrases.end());
  return relevant_phrases(concepts, phrases, fetch_table(texts, embeddings), config);
}

ContextualEmbedding contextual_embedding(const PaperRecord& paper, const ExplorationContext& context,
                                         const RelevanceConfig& config, llm::EmbeddingCache& embeddings) {
  return contextual_embeddings({paper}, context, config, embeddings).front();
}

std::vector<ContextualEmbedding> contextual_embeddings(const std::vector<PaperRecord>& papers,
                                                       const ExplorationContext& context,
                                                       const RelevanceConfig& config,
                                                       llm::EmbeddingCache& embeddings) {
  config.validate();
  std::vector<std::string> texts(context.concepts);
  for (const auto& p : papers) {
    if (text::trim(p.title).empty()) throw Error(ErrorKind::InvalidArgument, "paper " + p.paper_id + " has no title");
    auto more = texts_for(p, context);
    texts.insert(texts.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
  }
  const auto table = fetch_table(texts, embeddings);
  std::vector<ContextualEmbedding> out;
  out.reserve(papers.size());
  for (const auto& p : papers) out.push_back(assemble(p, context, config, table));
  return out;
}

SentenceCoverage key_sentence_index(std::span<const std::vector<Vector>> sentence_phrases,
                                    std::span<const Vector> concepts, double tau) {
  if (sentence_phrases.empty()) throw Error(ErrorKind::InvalidArgument, "key sentence needs at least one sentence");
  SentenceCoverage best;
  bool have_best = false;
  for (std::size_t s = 0; s < sentence_phrases.size(); ++s) {
    SentenceCoverage current{s, {}};
    for (std::size_t c = 0; c < concepts.size(); ++c) {
      for (const auto& phrase : sentence_phrases[s]) {
        if (cosine(concepts[c], phrase) > tau) {
          current.covered.push_back(c);
          break;
        }
      }
    }
    if (!have_best || current.covered.size() > best.covered.size()) {
      best = std::move(current);
      have_best = true;
    }
  }
  return best;
}

KeySentenceResult key_sentence(const std::vector<std::string>& sentences, const std::vector<std::string>& concepts,
                               llm::EmbeddingCache& embeddings, const RelevanceConfig& config) {
  if (sentences.empty()) throw Error(ErrorKind::InvalidArgument, "key sentence needs at least one sentence");
  std::vector<std::vector<std::string>> phrases;
  std::vector<std::string> texts(concepts);
  for (const auto& s : sentences) {
    phrases.push_back(text::extract_concepts(s));
    texts.insert(texts.end(), phrases.back().begin(), phrases.back().end());
  }
  const auto table = fetch_table(texts, embeddings);
  std::vector<Vector> concept_vecs;
  for (const auto& c : concepts) concept_vecs.push_back(lookup(table, c));
  std::vector<std::vector<Vector>> sentence_vecs;
  for (const auto& ps : phrases) {
    auto& row = sentence_vecs.emplace_back();
    for (const auto& p : ps) row.push_back(lookup(table, p));
  }
  const auto coverage = key_sentence_index(sentence_vecs, concept_vecs, config.tau);
  KeySentenceResult out{coverage.sentence_index, sentences[coverage.sentence_index], {}};
  for (auto c : coverage.covered) out.covered_concepts.push_back(concepts[c]);
  return out;
}

PaperHighlights highlight_paper(const PaperRecord& paper, const std::vector<std::string>& concepts,
                                llm::EmbeddingCache& embeddings, const RelevanceConfig& config) {
  PaperHighlights out;
  auto phrases = text::extract_concepts(paper.metadata_text());
  out.relevant_phrases = relevant_phrases(concepts, phrases, embeddings, config);
  out.title_spans = text::find_phrase_spans(paper.title, out.relevant_phrases);
  out.abstract_spans = text::find_phrase_spans(paper.abstract, out.relevant_phrases);
  out.sentences = text::split_sentences(paper.abstract);
  if (!out.sentences.empty()) {
    std::vector<std::string> sentence_texts;
    for (const auto& s : out.sentences) sentence_texts.push_back(s.text);
    out.key_sentence = key_sentence(sentence_texts, concepts, embeddings, config);
  }
  return out;
}

}  // namespace coexplore::relevance
