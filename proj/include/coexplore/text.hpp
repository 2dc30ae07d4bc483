#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace coexplore::text {

std::string to_lower(std::string_view s);
std::string trim(std::string_view s);
bool is_stopword(std::string_view lower_word);

// Lowercase alphanumeric runs with stopwords removed and a light plural stem
// applied. This is the token stream the scripted embedder hashes.
std::vector<std::string> content_tokens(std::string_view s);
std::string stem(std::string_view lower_word);

// Contiguous chunks of 1-4 non-stopword tokens, split on punctuation and
// stopwords; lowercased and deduplicated in first-occurrence order.
std::vector<std::string> extract_concepts(std::string_view s);

struct SentenceSpan {
  std::size_t begin = 0;  // byte offset into the source text
  std::size_t end = 0;
  std::string text;
};

// Terminal punctuation followed by whitespace and a capital letter ends a
// sentence unless the preceding word is a known abbreviation.
std::vector<SentenceSpan> split_sentences(std::string_view s);

std::size_t word_count(std::string_view s);

struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;
  friend bool operator==(const Span&, const Span&) = default;
};

// Case-insensitive, word-boundary occurrences of each phrase; merged and sorted.
std::vector<Span> find_phrase_spans(std::string_view haystack, const std::vector<std::string>& phrases);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

}  // namespace coexplore::text
