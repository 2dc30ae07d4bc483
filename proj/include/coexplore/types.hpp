#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace coexplore {

// Dense real vector carrying every embedding in the system.
class Vector {
 public:
  Vector() = default;
  explicit Vector(std::vector<double> components) : components_(std::move(components)) {}

  static Vector zeros(std::size_t dimension) { return Vector(std::vector<double>(dimension, 0.0)); }

  std::size_t dimension() const noexcept { return components_.size(); }
  std::span<const double> components() const noexcept { return components_; }
  double operator[](std::size_t i) const { return components_[i]; }

  bool is_zero() const noexcept;
  double norm() const noexcept;
  Vector normalized() const;
  Vector scaled(double factor) const;

  friend bool operator==(const Vector&, const Vector&) = default;

 private:
  std::vector<double> components_;
};

// Concatenates vectors in order; dimensions add.
Vector concat(std::span<const Vector> parts);

using DisciplineName = std::string;
inline constexpr const char* kUnknownDiscipline = "Unknown";

// Discipline list of the search provider plus the "Unknown" sentinel.
class DisciplineRegistry {
 public:
  explicit DisciplineRegistry(std::vector<DisciplineName> names);
  // Bundled fields-of-study list.
  static const DisciplineRegistry& builtin();

  const std::vector<DisciplineName>& names() const noexcept { return names_; }
  bool contains(std::string_view name) const;
  // Case-insensitive lookup returning the canonical spelling.
  std::optional<DisciplineName> canonical(std::string_view name) const;

 private:
  std::vector<DisciplineName> names_;
};

struct ResearchTopic {
  std::string text;
  std::vector<std::string> concepts;

  friend bool operator==(const ResearchTopic&, const ResearchTopic&) = default;
};

enum class EqOrigin { TopicSeeded, PaperSeeded, UserCreated, UserEdited };

struct ExploratoryQuestion {
  std::string id;
  std::string text;
  DisciplineName discipline;
  std::optional<std::string> subfield;
  EqOrigin origin = EqOrigin::TopicSeeded;
  bool selected = false;
  // Post-generation validation findings ("missing_question_mark", "too_long").
  std::vector<std::string> warnings;

  friend bool operator==(const ExploratoryQuestion&, const ExploratoryQuestion&) = default;
};

struct PaperRecord {
  std::string paper_id;
  std::string title;
  std::string abstract;
  std::vector<DisciplineName> disciplines;
  std::optional<int> year;
  std::optional<std::string> venue;
  std::vector<std::string> authors;
  std::int64_t citation_count = 0;
  std::optional<std::string> url;

  // Disciplines, or {"Unknown"} when none are listed.
  std::vector<DisciplineName> effective_disciplines() const;
  // Title and abstract joined for embedding and phrase extraction.
  std::string metadata_text() const;

  friend bool operator==(const PaperRecord&, const PaperRecord&) = default;
};

struct ExplorationContext {
  ResearchTopic topic;
  ExploratoryQuestion eq;
  std::vector<std::string> concepts;
};

// Trims and extracts concepts. Throws Error(EmptyTopic) on blank input.
ResearchTopic normalize_topic(std::string_view text);

// Union of topic and EQ concepts, first occurrence order.
ExplorationContext make_context(ResearchTopic topic, ExploratoryQuestion eq);

std::string_view to_string(EqOrigin origin);
EqOrigin eq_origin_from_string(std::string_view s);

}  // namespace coexplore
