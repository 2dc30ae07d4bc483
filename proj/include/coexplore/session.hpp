#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "coexplore/explore_rank.hpp"
#include "coexplore/query_engine.hpp"
#include "coexplore/theming.hpp"
#include "coexplore/types.hpp"

namespace coexplore::session {

inline constexpr int kSchemaVersion = 1;

enum class CollectionSourceKind { FromTheme, FromLinks, Manual };

struct CollectionSource {
  CollectionSourceKind kind = CollectionSourceKind::Manual;
  std::optional<std::string> theme_id;
  friend bool operator==(const CollectionSource&, const CollectionSource&) = default;
};

struct Collection {
  std::string id;
  std::string title;
  std::vector<std::string> paper_ids;
  CollectionSource source;
  // Copied from the theme on drop; empty for other collections.
  std::vector<std::string> keyphrases;
  friend bool operator==(const Collection&, const Collection&) = default;
};

struct Exploration {
  query::QueryExpansion expansion;
  std::vector<std::string> retrieved_paper_ids;
  theming::ThemeSet themes;
  friend bool operator==(const Exploration&, const Exploration&) = default;
};

struct SessionState {
  std::string session_id;
  ResearchTopic topic;
  std::vector<ExploratoryQuestion> eqs;
  std::map<std::string, Exploration> explorations;  // by eq_id
  std::vector<Collection> collections;
  rank::EngagementHistory engagement;
  std::map<std::string, PaperRecord> papers;  // paper table
  std::set<std::string> collected;            // papers whose collection already counted toward engagement
  std::uint64_t next_eq = 1;
  std::uint64_t next_collection = 1;
  std::int64_t created_ms = 0;
  std::int64_t updated_ms = 0;

  const ExploratoryQuestion* find_eq(std::string_view id) const;
  const Collection* find_collection(std::string_view id) const;
  const theming::Theme* find_theme(std::string_view eq_id, std::string_view theme_id) const;

  friend bool operator==(const SessionState&, const SessionState&) = default;
};

// Collection edits issued by drag-and-drop and the collection panel.
struct DropTheme {
  std::string eq_id;
  std::string theme_id;
};
struct DropPaper {
  std::string paper_id;
  std::optional<std::string> target_collection;
  // Where the paper was dragged from; decides the collection when no target is given.
  std::optional<std::string> source_eq_id;
  std::optional<std::string> source_theme_id;
};
struct MovePaper {
  std::string paper_id;
  std::string from_collection;
  std::string to_collection;
};
struct RemovePaper {
  std::string collection_id;
  std::string paper_id;
};
struct CreateCollection {
  std::string title;
};
struct RenameCollection {
  std::string collection_id;
  std::string title;
};
struct DeleteCollection {
  std::string collection_id;
};
using CollectionEdit =
    std::variant<DropTheme, DropPaper, MovePaper, RemovePaper, CreateCollection, RenameCollection, DeleteCollection>;

inline constexpr const char* kLinksCollectionTitle = "From citations and references";

// Throws EmptyTopic on a blank topic.
SessionState create_session(std::string_view topic_text, std::string session_id, std::int64_t now_ms);

// Applies one edit; throws UnknownEntity for missing references and
// InvalidArgument for a blank title. Newly collected papers record one
// paper_collected event per discipline, once per paper per session.
void apply_edit(SessionState& state, const CollectionEdit& edit);

// Assigns fresh ids ("eq-N") and appends.
std::vector<ExploratoryQuestion> add_eqs(SessionState& state, std::vector<ExploratoryQuestion> eqs);
const ExploratoryQuestion& update_eq(SessionState& state, std::string_view eq_id,
                                     const std::optional<std::string>& text, const std::optional<bool>& selected);
const ExploratoryQuestion& create_user_eq(SessionState& state, std::string text, const DisciplineName& discipline,
                                          const DisciplineRegistry& registry = DisciplineRegistry::builtin());
void add_papers(SessionState& state, const std::vector<PaperRecord>& papers);

// Referential-integrity and conservation findings; empty when consistent.
std::vector<std::string> check_invariants(const SessionState& state);

std::string serialize(const SessionState& state);
// Throws CorruptState on malformed content or checksum mismatch.
SessionState deserialize(std::string_view document);

// One JSON document per session under a data directory, written atomically.
// Mutations of one session are serialized; distinct sessions are independent.
class SessionStore {
 public:
  explicit SessionStore(std::filesystem::path data_dir);

  SessionState create(std::string_view topic_text);
  void save(const SessionState& state);
  // Throws NotFound or CorruptState.
  SessionState load(const std::string& session_id) const;
  bool exists(const std::string& session_id) const;

  // Load, apply, bump updated_ms, save; under the session's writer lock.
  SessionState mutate(const std::string& session_id, const std::function<void(SessionState&)>& edit);
  template <typename R>
  R mutate_returning(const std::string& session_id, const std::function<R(SessionState&)>& edit) {
    std::optional<R> result;
    mutate(session_id, [&](SessionState& s) { result.emplace(edit(s)); });
    return std::move(*result);
  }

  const std::filesystem::path& data_dir() const { return data_dir_; }

 private:
  std::filesystem::path path_for(const std::string& session_id) const;
  std::shared_ptr<std::mutex> writer_lock(const std::string& session_id);

  std::filesystem::path data_dir_;
  std::mutex locks_mutex_;
  std::map<std::string, std::shared_ptr<std::mutex>> locks_;
};

std::string_view to_string(CollectionSourceKind kind);
std::int64_t now_ms();

}  // namespace coexplore::session
