#include "coexplore/query_engine.hpp"

#include <spdlog/spdlog.h>

#include <cctype>
#include <cmath>
#include <unordered_set>

#include "coexplore/assets.hpp"
#include "coexplore/eq_engine.hpp"
#include "coexplore/error.hpp"
#include "coexplore/text.hpp"
#include "coexplore/util.hpp"

namespace coexplore::query {
namespace {

using llm::PromptRequest;
using llm::TemplateId;

std::string numbered(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += "\n";
    out += std::to_string(i + 1) + ". " + items[i];
  }
  return out;
}

std::string strip_quotes(std::string s) {
  auto is_quote = [](char c) { return c == '"' || c == '\'' || c == '`'; };
  while (!s.empty() && is_quote(s.front())) s.erase(0, 1);
  while (!s.empty() && is_quote(s.back())) s.pop_back();
  // Curly quotes are three bytes each in UTF-8.
  for (std::string_view q : {"“", "”"}) {
    if (s.rfind(q, 0) == 0) s.erase(0, q.size());
    if (s.size() >= q.size() && s.compare(s.size() - q.size(), q.size(), q) == 0) s.resize(s.size() - q.size());
  }
  return text::trim(s);
}

std::string cut_to_limit(std::string s) {
  if (s.size() <= scholar::kMaxQueryLength) return s;
  auto cut = s.rfind(' ', scholar::kMaxQueryLength);
  s.resize(cut == std::string::npos || cut == 0 ? scholar::kMaxQueryLength : cut);
  return text::trim(s);
}

std::vector<BulletTerms> parse_terms(std::string_view completion, const std::vector<std::string>& bullets) {
  std::vector<BulletTerms> out;
  for (const auto& b : bullets) out.push_back({b, {}});
  for (const auto& line : eq::completion_items(completion)) {
    std::size_t i = 0;
    while (i < line.size() && std::isdigit(static_cast<unsigned char>(line[i]))) ++i;
    if (i == 0 || i >= line.size() || (line[i] != ':' && line[i] != '.' && line[i] != ')')) continue;
    const auto index = static_cast<std::size_t>(std::stoul(line.substr(0, i)));
    if (index < 1 || index > out.size()) continue;
    std::string rest = line.substr(i + 1);
    const char sep = rest.find(';') != std::string::npos ? ';' : ',';
    std::size_t start = 0;
    while (start <= rest.size()) {
      auto end = rest.find(sep, start);
      auto term = strip_quotes(text::trim(rest.substr(start, end == std::string::npos ? std::string::npos : end - start)));
      if (!term.empty()) out[index - 1].terms.push_back(std::move(term));
      if (end == std::string::npos) break;
      start = end + 1;
    }
  }
  return out;
}

// Term pairs within each bullet, then across neighbouring bullets.
std::vector<std::string> term_combinations(const std::vector<BulletTerms>& terms) {
  std::vector<std::string> out;
  for (const auto& bt : terms) {
    for (std::size_t i = 0; i + 1 < bt.terms.size(); ++i) {
      for (std::size_t j = i + 1; j < bt.terms.size(); ++j) out.push_back(bt.terms[i] + " " + bt.terms[j]);
    }
  }
  for (std::size_t b = 0; b + 1 < terms.size(); ++b) {
    for (const auto& x : terms[b].terms) {
      for (const auto& y : terms[b + 1].terms) out.push_back(x + " " + y);
    }
  }
  for (const auto& bt : terms) out.insert(out.end(), bt.terms.begin(), bt.terms.end());
  return out;
}

}  // namespace

std::vector<std::string> parse_queries(std::string_view completion, std::string_view question) {
  std::string question_key = eq::duplicate_key(question);
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  for (const auto& item : eq::completion_items(completion)) {
    auto q = cut_to_limit(strip_quotes(item));
    if (q.empty() || q.back() == ':') continue;
    const auto key = eq::duplicate_key(q);
    if (key.find(question_key) != std::string::npos) continue;
    if (seen.insert(key).second) out.push_back(std::move(q));
  }
  return out;
}

QueryExpansion QueryEngine::expand_queries(const ExploratoryQuestion& eq, const ResearchTopic& context) {
  if (text::trim(eq.text).empty()) throw Error(ErrorKind::InvalidArgument, "EQ text is empty");
  QueryExpansion out;
  out.eq_id = eq.id;

  const auto answers = gateway_.complete(
      PromptRequest{TemplateId::PseudoAnswers, {{"research_idea", context.text}, {"question", eq.text}}});
  out.pseudo_answers = eq::completion_items(answers);
  if (out.pseudo_answers.empty()) throw Error(ErrorKind::UnparseableCompletion, "no pseudo-answers for " + eq.text);

  const auto terms = gateway_.complete(
      PromptRequest{TemplateId::AnswerTerms, {{"question", eq.text}, {"bullets", numbered(out.pseudo_answers)}}});
  out.terms = parse_terms(terms, out.pseudo_answers);
  std::vector<std::string> term_lines;
  for (const auto& bt : out.terms) term_lines.push_back(text::join(bt.terms, "; "));

  auto ask_queries = [&](const std::string& previous) {
    return parse_queries(gateway_.complete(PromptRequest{TemplateId::ComposeQueries,
                                                         {{"question", eq.text},
                                                          {"terms", numbered(term_lines)},
                                                          {"num_queries", std::to_string(kQueriesPerEq)},
                                                          {"previous_queries", previous}}}),
                         eq.text);
  };

  auto queries = ask_queries("");
  std::unordered_set<std::string> seen;
  for (const auto& q : queries) seen.insert(eq::duplicate_key(q));

  if (queries.size() < kQueriesPerEq) {
    out.reprompted = true;
    std::string previous = "These queries were already produced; do not repeat them:";
    for (const auto& q : queries) previous += "\n- \"" + q + "\"";
    for (auto& q : ask_queries(previous)) {
      if (queries.size() == kQueriesPerEq) break;
      if (seen.insert(eq::duplicate_key(q)).second) queries.push_back(std::move(q));
    }
  }
  if (queries.size() < kQueriesPerEq) {
    const std::string question_key = eq::duplicate_key(eq.text);
    for (auto& combo : term_combinations(out.terms)) {
      if (queries.size() == kQueriesPerEq) break;
      combo = cut_to_limit(combo);
      const auto key = eq::duplicate_key(combo);
      if (combo.empty() || key.find(question_key) != std::string::npos) continue;
      if (seen.insert(key).second) {
        queries.push_back(std::move(combo));
        ++out.padded;
      }
    }
  }
  if (queries.empty()) throw Error(ErrorKind::UnparseableCompletion, "no queries for " + eq.text);
  // Nothing new left to combine: repeat earlier queries to keep the count.
  for (std::size_t i = 0; queries.size() < kQueriesPerEq; ++i) {
    queries.push_back(queries[i]);
    ++out.padded;
  }
  if (out.padded > 0) spdlog::info("padded {} queries for '{}'", out.padded, eq.text);
  queries.resize(kQueriesPerEq);
  for (auto& q : queries) out.queries.emplace_back(std::move(q));
  return out;
}

std::vector<std::string> QueryEngine::queries_without_pseudo_answers(const ExploratoryQuestion& eq) {
  return parse_queries(
      gateway_.complete(PromptRequest{TemplateId::QueriesWithoutPa,
                                      {{"question", eq.text}, {"num_queries", std::to_string(kQueriesPerEq)}}}),
      eq.text);
}

ConcretenessLexicon::ConcretenessLexicon(std::unordered_map<std::string, double> entries) {
  for (auto& [word, rating] : entries) {
    if (!(rating >= 100.0 && rating <= 700.0)) {
      throw Error(ErrorKind::InvalidArgument, "rating for '" + word + "' outside 100-700");
    }
    entries_.insert_or_assign(text::to_lower(word), rating);
  }
}

ConcretenessLexicon ConcretenessLexicon::parse(std::string_view tsv) {
  std::unordered_map<std::string, double> entries;
  std::size_t start = 0;
  std::size_t line_no = 0;
  while (start < tsv.size()) {
    auto nl = tsv.find('\n', start);
    auto line = text::trim(tsv.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start));
    ++line_no;
    start = nl == std::string_view::npos ? tsv.size() : nl + 1;
    if (line.empty() || line[0] == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw Error(ErrorKind::InvalidArgument, "lexicon line " + std::to_string(line_no) + " has no tab");
    }
    try {
      entries[text::to_lower(text::trim(line.substr(0, tab)))] = std::stod(line.substr(tab + 1));
    } catch (const std::exception&) {
      throw Error(ErrorKind::InvalidArgument, "lexicon line " + std::to_string(line_no) + " has a bad rating");
    }
  }
  return ConcretenessLexicon(std::move(entries));
}

ConcretenessLexicon ConcretenessLexicon::load(const std::filesystem::path& path) {
  return parse(util::read_file(path));
}

const ConcretenessLexicon& ConcretenessLexicon::bundled() {
  static const ConcretenessLexicon lexicon = parse(assets::get("lexicon/concreteness_mini.tsv"));
  return lexicon;
}

ConcretenessLexicon ConcretenessLexicon::from_env_or_bundled() {
  if (auto path = util::env("MRC_LEXICON_PATH")) return load(*path);
  return bundled();
}

std::optional<double> ConcretenessLexicon::rating(std::string_view word) const {
  const std::string lower = text::to_lower(word);
  if (auto it = entries_.find(lower); it != entries_.end()) return it->second;
  if (auto it = entries_.find(text::stem(lower)); it != entries_.end()) return it->second;
  return std::nullopt;
}

ConcretenessSummary concreteness_score(const std::vector<std::string>& queries, const ConcretenessLexicon& lexicon) {
  if (queries.empty()) throw Error(ErrorKind::InvalidArgument, "no queries to score");
  std::vector<double> scores;
  std::size_t words = 0, covered = 0;
  for (const auto& q : queries) {
    double sum = 0.0;
    std::size_t hits = 0;
    std::string word;
    auto finish = [&] {
      if (word.empty()) return;
      ++words;
      if (auto r = lexicon.rating(word)) {
        sum += *r;
        ++hits;
      }
      word.clear();
    };
    for (char c : q) {
      if (std::isalpha(static_cast<unsigned char>(c))) {
        word.push_back(c);
      } else {
        finish();
      }
    }
    finish();
    covered += hits;
    if (hits > 0) scores.push_back(sum / static_cast<double>(hits));
  }
  if (scores.empty()) throw Error(ErrorKind::NoCoveredWords, "no query word is in the lexicon");

  ConcretenessSummary out;
  out.scored_queries = scores.size();
  double total = 0.0;
  for (double s : scores) total += s;
  out.mean = total / static_cast<double>(scores.size());
  if (scores.size() > 1) {
    double ss = 0.0;
    for (double s : scores) ss += (s - out.mean) * (s - out.mean);
    out.sd = std::sqrt(ss / static_cast<double>(scores.size() - 1));
  }
  out.coverage = static_cast<double>(covered) / static_cast<double>(words);
  return out;
}

}  // namespace coexplore::query
