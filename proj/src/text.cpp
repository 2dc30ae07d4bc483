#include "coexplore/text.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <string>
#include <unordered_set>

#include "coexplore/assets.hpp"

namespace coexplore::text {
namespace {

constexpr std::size_t kMaxChunkTokens = 4;

bool is_word_byte(char c) {
  const auto u = static_cast<unsigned char>(c);
  return u >= 0x80 || std::isalnum(u) != 0;
}

const std::unordered_set<std::string>& stopwords() {
  static const std::unordered_set<std::string> words = [] {
    std::unordered_set<std::string> out;
    for (auto line : assets::lines("stopwords.txt")) out.insert(trim(line));
    return out;
  }();
  return words;
}

constexpr std::array<std::string_view, 22> kAbbreviations = {
    "e.g.", "i.e.", "al.", "dr.",  "fig.", "figs.", "vs.", "etc.", "mr.", "mrs.", "ms.",
    "no.",  "u.s.", "approx.", "eq.", "ref.", "st.", "prof.", "inc.", "cf.", "jr.", "sr."};

}  // namespace

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string trim(std::string_view s) {
  auto is_space = [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return std::string(s);
}

bool is_stopword(std::string_view lower_word) { return stopwords().contains(std::string(lower_word)); }

std::string stem(std::string_view w) {
  if (w.size() > 4 && w.ends_with("ies")) return std::string(w.substr(0, w.size() - 3)) + "y";
  if (w.size() > 3 && w.ends_with('s') && !w.ends_with("ss") && !w.ends_with("us") && !w.ends_with("is")) {
    return std::string(w.substr(0, w.size() - 1));
  }
  return std::string(w);
}

std::vector<std::string> content_tokens(std::string_view s) {
  std::vector<std::string> out;
  std::string current;
  auto flush = [&] {
    if (!current.empty() && !is_stopword(current)) out.push_back(stem(current));
    current.clear();
  };
  for (char c : s) {
    const auto u = static_cast<unsigned char>(c);
    if (u < 0x80 && std::isalnum(u)) {
      current.push_back(static_cast<char>(std::tolower(u)));
    } else {
      flush();
    }
  }
  flush();
  return out;
}

std::vector<std::string> extract_concepts(std::string_view s) {
  const std::string lower = to_lower(s);
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  std::vector<std::string> run;

  auto emit_run = [&] {
    for (std::size_t i = 0; i < run.size(); i += kMaxChunkTokens) {
      const std::size_t end = std::min(run.size(), i + kMaxChunkTokens);
      std::string chunk;
      for (std::size_t j = i; j < end; ++j) {
        if (!chunk.empty()) chunk.push_back(' ');
        chunk += run[j];
      }
      if (seen.insert(chunk).second) out.push_back(std::move(chunk));
    }
    run.clear();
  };

  std::string word;
  auto end_word = [&] {
    if (word.empty()) return;
    if (word.size() > 2 && word.ends_with("'s")) word.resize(word.size() - 2);
    if (is_stopword(word)) {
      emit_run();
    } else {
      run.push_back(word);
    }
    word.clear();
  };

  const std::size_t n = lower.size();
  for (std::size_t i = 0; i < n; ++i) {
    const char c = lower[i];
    if (is_word_byte(c)) {
      word.push_back(c);
      continue;
    }
    const bool joiner = (c == '-' || c == '\'') && !word.empty() && i + 1 < n && is_word_byte(lower[i + 1]);
    if (joiner) {
      word.push_back(c);
      continue;
    }
    end_word();
    // Whitespace and dangling apostrophes separate words; other punctuation ends the chunk.
    if (!(std::isspace(static_cast<unsigned char>(c)) || c == '\'')) emit_run();
  }
  end_word();
  emit_run();
  return out;
}

std::vector<SentenceSpan> split_sentences(std::string_view s) {
  std::vector<SentenceSpan> out;
  auto push = [&](std::size_t begin, std::size_t end) {
    while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
    if (end > begin) out.push_back(SentenceSpan{begin, end, std::string(s.substr(begin, end - begin))});
  };

  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (c != '.' && c != '?' && c != '!') continue;
    std::size_t j = i + 1;
    if (j >= s.size() || !std::isspace(static_cast<unsigned char>(s[j]))) continue;
    while (j < s.size() && std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j >= s.size() || !std::isupper(static_cast<unsigned char>(s[j]))) continue;
    if (c == '.') {
      std::size_t w = i;
      while (w > start && !std::isspace(static_cast<unsigned char>(s[w - 1]))) --w;
      const std::string last = to_lower(s.substr(w, i + 1 - w));
      if (std::find(kAbbreviations.begin(), kAbbreviations.end(), last) != kAbbreviations.end()) continue;
    }
    push(start, i + 1);
    start = j;
  }
  push(start, s.size());
  return out;
}

std::size_t word_count(std::string_view s) {
  std::size_t count = 0;
  bool in_word = false;
  for (char c : s) {
    const bool space = std::isspace(static_cast<unsigned char>(c)) != 0;
    if (!space && !in_word) ++count;
    in_word = !space;
  }
  return count;
}

std::vector<Span> find_phrase_spans(std::string_view haystack, const std::vector<std::string>& phrases) {
  const std::string lower = to_lower(haystack);
  std::vector<Span> spans;
  for (const auto& phrase : phrases) {
    if (phrase.empty()) continue;
    std::size_t pos = 0;
    while ((pos = lower.find(phrase, pos)) != std::string::npos) {
      const std::size_t end = pos + phrase.size();
      const bool left_ok = pos == 0 || !is_word_byte(lower[pos - 1]);
      const bool right_ok = end == lower.size() || !is_word_byte(lower[end]);
      if (left_ok && right_ok) spans.push_back(Span{pos, end});
      pos += 1;
    }
  }
  std::sort(spans.begin(), spans.end(), [](const Span& a, const Span& b) {
    return a.begin != b.begin ? a.begin < b.begin : a.end > b.end;
  });
  std::vector<Span> merged;
  for (const auto& sp : spans) {
    if (!merged.empty() && sp.begin <= merged.back().end) {
      merged.back().end = std::max(merged.back().end, sp.end);
    } else {
      merged.push_back(sp);
    }
  }
  return merged;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

}  // namespace coexplore::text
