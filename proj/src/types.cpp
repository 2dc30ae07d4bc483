#include "coexplore/types.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "coexplore/assets.hpp"
#include "coexplore/error.hpp"
#include "coexplore/text.hpp"

namespace coexplore {

bool Vector::is_zero() const noexcept {
  return std::all_of(components_.begin(), components_.end(), [](double x) { return x == 0.0; });
}

double Vector::norm() const noexcept {
  double sum = 0.0;
  for (double x : components_) sum += x * x;
  return std::sqrt(sum);
}

Vector Vector::normalized() const {
  const double n = norm();
  if (n == 0.0) throw Error(ErrorKind::ZeroVector, "cannot normalize the zero vector");
  return scaled(1.0 / n);
}

Vector Vector::scaled(double factor) const {
  std::vector<double> out(components_);
  for (double& x : out) x *= factor;
  return Vector(std::move(out));
}

Vector concat(std::span<const Vector> parts) {
  std::vector<double> out;
  for (const auto& p : parts) out.insert(out.end(), p.components().begin(), p.components().end());
  return Vector(std::move(out));
}

DisciplineRegistry::DisciplineRegistry(std::vector<DisciplineName> names) : names_(std::move(names)) {}

const DisciplineRegistry& DisciplineRegistry::builtin() {
  static const DisciplineRegistry registry = [] {
    std::vector<DisciplineName> names;
    for (auto line : assets::lines("disciplines.txt")) names.emplace_back(text::trim(line));
    return DisciplineRegistry(std::move(names));
  }();
  return registry;
}

bool DisciplineRegistry::contains(std::string_view name) const {
  return name == kUnknownDiscipline || std::find(names_.begin(), names_.end(), name) != names_.end();
}

std::optional<DisciplineName> DisciplineRegistry::canonical(std::string_view name) const {
  const std::string wanted = text::to_lower(text::trim(name));
  for (const auto& n : names_) {
    if (text::to_lower(n) == wanted) return n;
  }
  if (wanted == "unknown") return DisciplineName(kUnknownDiscipline);
  return std::nullopt;
}

std::vector<DisciplineName> PaperRecord::effective_disciplines() const {
  if (disciplines.empty()) return {kUnknownDiscipline};
  return disciplines;
}

std::string PaperRecord::metadata_text() const {
  if (abstract.empty()) return title;
  return title + ". " + abstract;
}

ResearchTopic normalize_topic(std::string_view raw) {
  std::string trimmed = text::trim(raw);
  if (trimmed.empty()) throw Error(ErrorKind::EmptyTopic, "research topic is empty");
  auto concepts = text::extract_concepts(trimmed);
  // A topic made only of stopwords still needs a concept to anchor relevance.
  if (concepts.empty()) concepts.push_back(text::to_lower(trimmed));
  return ResearchTopic{std::move(trimmed), std::move(concepts)};
}

ExplorationContext make_context(ResearchTopic topic, ExploratoryQuestion eq) {
  std::vector<std::string> concepts;
  std::unordered_set<std::string> seen;
  auto add = [&](const std::vector<std::string>& from) {
    for (const auto& c : from) {
      if (seen.insert(c).second) concepts.push_back(c);
    }
  };
  add(topic.concepts);
  add(text::extract_concepts(eq.text));
  return ExplorationContext{std::move(topic), std::move(eq), std::move(concepts)};
}

std::string_view to_string(EqOrigin origin) {
  switch (origin) {
    case EqOrigin::TopicSeeded: return "topic_seeded";
    case EqOrigin::PaperSeeded: return "paper_seeded";
    case EqOrigin::UserCreated: return "user_created";
    case EqOrigin::UserEdited: return "user_edited";
  }
  return "topic_seeded";
}

EqOrigin eq_origin_from_string(std::string_view s) {
  if (s == "topic_seeded") return EqOrigin::TopicSeeded;
  if (s == "paper_seeded") return EqOrigin::PaperSeeded;
  if (s == "user_created") return EqOrigin::UserCreated;
  if (s == "user_edited") return EqOrigin::UserEdited;
  throw Error(ErrorKind::InvalidArgument, "unknown EQ origin '" + std::string(s) + "'");
}

}  // namespace coexplore
