#include "coexplore/eq_engine.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <cctype>
#include <future>
#include <unordered_set>

#include "coexplore/error.hpp"
#include "coexplore/relevance.hpp"
#include "coexplore/text.hpp"

namespace coexplore::eq {
namespace {

using llm::PromptRequest;
using llm::TemplateId;

std::string strip_marker(std::string_view line, bool& had_marker) {
  std::string s = text::trim(line);
  had_marker = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '*' || s.rfind("•", 0) == 0)) {
    s.erase(0, s[0] == '-' || s[0] == '*' ? 1 : 3);
    had_marker = true;
  } else {
    std::size_t i = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i > 0 && i < s.size() && (s[i] == '.' || s[i] == ')')) {
      s.erase(0, i + 1);
      had_marker = true;
    }
  }
  return text::trim(s);
}

std::string bulleted(const std::vector<std::string>& items) {
  if (items.empty()) return "(none)";
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += "\n";
    out += "- " + items[i];
  }
  return out;
}

std::string discipline_list(const DisciplineRegistry& registry) { return bulleted(registry.names()); }

std::vector<std::string> question_lines(std::string_view completion) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= completion.size()) {
    auto nl = completion.find('\n', start);
    auto line = completion.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
    bool marker = false;
    auto item = strip_marker(line, marker);
    if (!item.empty() && (marker || item.back() == '?')) out.push_back(std::move(item));
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  return out;
}

bool is_duplicate_of_any(const ExploratoryQuestion& candidate, const Vector& candidate_vec,
                         const std::vector<std::string>& keys, const std::vector<Vector>& vecs, double threshold) {
  const auto key = duplicate_key(candidate.text);
  for (std::size_t i = 0; i < keys.size(); ++i) {
    if (keys[i] == key || relevance::cosine(candidate_vec, vecs[i]) > threshold) return true;
  }
  return false;
}

}  // namespace

std::vector<std::string> completion_items(std::string_view completion) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= completion.size()) {
    auto nl = completion.find('\n', start);
    auto line = completion.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
    bool marker = false;
    auto item = strip_marker(line, marker);
    if (!item.empty()) out.push_back(std::move(item));
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  return out;
}

void validate_question(ExploratoryQuestion& eq, std::size_t max_words) {
  eq.warnings.clear();
  const auto trimmed = text::trim(eq.text);
  if (trimmed.empty() || trimmed.back() != '?') eq.warnings.emplace_back("missing_question_mark");
  if (text::word_count(trimmed) > max_words) eq.warnings.emplace_back("too_long");
}

std::string duplicate_key(std::string_view question) {
  std::string out;
  bool space = false;
  for (char c : text::to_lower(text::trim(question))) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      space = true;
      continue;
    }
    if (space && !out.empty()) out.push_back(' ');
    space = false;
    out.push_back(c);
  }
  while (!out.empty() && (out.back() == '?' || out.back() == '.')) out.pop_back();
  return out;
}

std::vector<ExploratoryQuestion> dedupe_eqs(const std::vector<ExploratoryQuestion>& eqs,
                                            llm::EmbeddingCache& embeddings, double threshold) {
  if (eqs.empty()) return {};
  std::vector<std::string> texts;
  for (const auto& e : eqs) texts.push_back(e.text);
  const auto vecs = embeddings.get_many(texts);

  std::vector<ExploratoryQuestion> out;
  std::vector<std::string> kept_keys;
  std::vector<Vector> kept_vecs;
  for (std::size_t i = 0; i < eqs.size(); ++i) {
    if (is_duplicate_of_any(eqs[i], vecs[i], kept_keys, kept_vecs, threshold)) continue;
    out.push_back(eqs[i]);
    kept_keys.push_back(duplicate_key(eqs[i].text));
    kept_vecs.push_back(vecs[i]);
  }
  return out;
}

EqEngine::EqEngine(llm::EmbeddingCache& embeddings, const DisciplineRegistry& registry, EqEngineConfig config)
    : embeddings_(embeddings), registry_(registry), config_(config) {}

std::vector<FieldPath> EqEngine::identify_fields(const ResearchTopic& topic) {
  const std::size_t cap = std::clamp<std::size_t>(config_.max_fields, 1, kMaxFieldsHardCap);
  const auto completion = embeddings_.gateway().complete(PromptRequest{
      TemplateId::IdentifyFields,
      {{"research_idea", topic.text}, {"disciplines", discipline_list(registry_)}, {"max_fields", std::to_string(cap)}}});

  std::vector<FieldPath> out;
  for (const auto& item : completion_items(completion)) {
    const auto bar = item.find('|');
    if (bar == std::string::npos) continue;
    auto discipline = registry_.canonical(item.substr(0, bar));
    auto subfield = text::trim(item.substr(bar + 1));
    if (!discipline || *discipline == kUnknownDiscipline || subfield.empty()) {
      spdlog::debug("dropping field line '{}'", item);
      continue;
    }
    FieldPath field{*discipline, std::move(subfield)};
    if (std::find(out.begin(), out.end(), field) == out.end()) out.push_back(std::move(field));
    if (out.size() == cap) break;
  }
  if (out.empty()) throw Error(ErrorKind::UnparseableCompletion, "no valid field in identify_fields completion");
  return out;
}

std::vector<ExploratoryQuestion> EqEngine::generate_eqs(const ResearchTopic& topic, const FieldPath& field,
                                                        std::size_t num_rq, TemplateId prompt) {
  if (prompt != TemplateId::EqGeneration && prompt != TemplateId::EqGenerationNoPersona &&
      prompt != TemplateId::EqGenerationNoSimplification) {
    throw Error(ErrorKind::InvalidArgument, "not an EQ generation template");
  }
  if (num_rq < 1 || num_rq > 10) throw Error(ErrorKind::InvalidArgument, "num_rq must be in [1, 10]");
  if (!registry_.contains(field.discipline)) {
    throw Error(ErrorKind::InvalidArgument, "unknown discipline " + field.discipline);
  }
  const auto completion = embeddings_.gateway().complete(PromptRequest{
      prompt,
      {{"field", field.persona()}, {"research_idea", topic.text}, {"num_rq", std::to_string(num_rq)}}});
  auto lines = question_lines(completion);
  if (lines.empty()) throw Error(ErrorKind::UnparseableCompletion, "no questions for field " + field.persona());

  std::vector<ExploratoryQuestion> out;
  for (std::size_t i = 0; i < lines.size() && i < num_rq; ++i) {
    ExploratoryQuestion eq;
    eq.text = std::move(lines[i]);
    eq.discipline = field.discipline;
    if (!field.subfield.empty()) eq.subfield = field.subfield;
    eq.origin = EqOrigin::TopicSeeded;
    validate_question(eq, config_.max_words);
    out.push_back(std::move(eq));
  }
  return out;
}

std::vector<ExploratoryQuestion> EqEngine::dedupe(const std::vector<ExploratoryQuestion>& eqs,
                                                  const ResearchTopic& topic) {
  if (config_.llm_dedup) return llm_dedupe(eqs, topic);
  return dedupe_eqs(eqs, embeddings_, config_.duplicate_similarity);
}

std::vector<ExploratoryQuestion> EqEngine::llm_dedupe(const std::vector<ExploratoryQuestion>& eqs,
                                                      const ResearchTopic& topic) {
  if (eqs.empty()) return {};
  std::vector<std::string> texts;
  for (const auto& e : eqs) texts.push_back(e.text);
  const auto completion = embeddings_.gateway().complete(
      PromptRequest{TemplateId::EqDedup, {{"research_idea", topic.text}, {"questions", bulleted(texts)}}});
  std::unordered_set<std::string> kept;
  for (const auto& item : completion_items(completion)) kept.insert(duplicate_key(item));

  std::vector<ExploratoryQuestion> out;
  std::unordered_set<std::string> emitted;
  for (const auto& e : eqs) {
    const auto key = duplicate_key(e.text);
    if (kept.contains(key) && emitted.insert(key).second) out.push_back(e);
  }
  if (out.empty()) {
    spdlog::warn("LLM dedup kept nothing recognizable; falling back to exact-match dedup");
    for (const auto& e : eqs) {
      if (emitted.insert(duplicate_key(e.text)).second) out.push_back(e);
    }
  }
  return out;
}

std::vector<ExploratoryQuestion> EqEngine::generate_for_topic(const ResearchTopic& topic) {
  const auto fields = identify_fields(topic);
  std::vector<std::future<std::vector<ExploratoryQuestion>>> pending;
  for (const auto& field : fields) {
    pending.push_back(std::async(std::launch::async, [this, &topic, &field] {
      return generate_eqs(topic, field, config_.num_rq);
    }));
  }
  std::vector<ExploratoryQuestion> all;
  std::exception_ptr first_error;
  for (auto& f : pending) {
    try {
      auto eqs = f.get();
      all.insert(all.end(), std::make_move_iterator(eqs.begin()), std::make_move_iterator(eqs.end()));
    } catch (...) {
      if (!first_error) first_error = std::current_exception();
    }
  }
  if (first_error) std::rethrow_exception(first_error);
  return dedupe(all, topic);
}

std::vector<ExploratoryQuestion> EqEngine::eqs_from_paper(const PaperRecord& paper,
                                                          const std::vector<std::string>& focus_keywords,
                                                          const ResearchTopic& context,
                                                          const std::vector<ExploratoryQuestion>& existing) {
  if (text::trim(paper.title).empty()) throw Error(ErrorKind::InvalidArgument, "paper has no title");

  std::vector<std::string> kept_keys;
  std::vector<Vector> kept_vecs;
  std::vector<std::string> avoid;
  for (const auto& e : existing) {
    kept_keys.push_back(duplicate_key(e.text));
    kept_vecs.push_back(embeddings_.get(e.text));
    avoid.push_back(e.text);
  }
  const auto fallback_discipline = paper.effective_disciplines().front();

  std::vector<ExploratoryQuestion> out;
  for (int attempt = 0; attempt < 2 && out.size() < kPaperSeededCount; ++attempt) {
    const auto completion = embeddings_.gateway().complete(PromptRequest{
        TemplateId::EqFromPaper,
        {{"research_idea", context.text},
         {"title", paper.title},
         {"abstract", paper.abstract.empty() ? "(no abstract)" : paper.abstract},
         {"paper_fields", text::join(paper.effective_disciplines(), ", ")},
         {"keywords", focus_keywords.empty() ? "(none)" : text::join(focus_keywords, ", ")},
         {"disciplines", discipline_list(registry_)},
         {"num_rq", std::to_string(kPaperSeededCount)},
         {"existing_questions", bulleted(avoid)}}});

    std::vector<ExploratoryQuestion> generated;
    for (const auto& item : completion_items(completion)) {
      ExploratoryQuestion eq;
      const auto bar = item.find('|');
      if (bar != std::string::npos) {
        eq.text = text::trim(item.substr(bar + 1));
        eq.discipline = registry_.canonical(item.substr(0, bar)).value_or(fallback_discipline);
      } else {
        eq.text = item;
        eq.discipline = fallback_discipline;
      }
      if (eq.text.empty() || (bar == std::string::npos && eq.text.back() != '?')) continue;
      eq.origin = EqOrigin::PaperSeeded;
      validate_question(eq, config_.max_words);
      generated.push_back(std::move(eq));
      if (generated.size() == kPaperSeededCount) break;
    }
    if (generated.empty() && attempt == 0) {
      throw Error(ErrorKind::UnparseableCompletion, "no questions in paper-seeded completion");
    }
    for (auto& eq : generated) {
      avoid.push_back(eq.text);
      const auto vec = embeddings_.get(eq.text);
      if (out.size() < kPaperSeededCount &&
          !is_duplicate_of_any(eq, vec, kept_keys, kept_vecs, config_.duplicate_similarity)) {
        kept_keys.push_back(duplicate_key(eq.text));
        kept_vecs.push_back(vec);
        out.push_back(std::move(eq));
      }
    }
  }
  return out;
}

}  // namespace coexplore::eq
