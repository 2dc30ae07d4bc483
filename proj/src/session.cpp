#include "coexplore/session.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <random>
#include <set>
#include <unordered_set>

#include <fmt/format.h>

#include "coexplore/eq_engine.hpp"
#include "coexplore/error.hpp"
#include "coexplore/serialization.hpp"
#include "coexplore/text.hpp"
#include "coexplore/util.hpp"

namespace coexplore::session {
namespace {

using nlohmann::json;

Collection& collection_or_throw(SessionState& s, std::string_view id) {
  for (auto& c : s.collections) {
    if (c.id == id) return c;
  }
  throw Error(ErrorKind::UnknownEntity, fmt::format("no collection {}", id));
}

std::string checked_title(std::string_view title) {
  auto t = text::trim(title);
  if (t.empty()) throw Error(ErrorKind::InvalidArgument, "collection title is empty");
  return t;
}

Collection& new_collection(SessionState& s, std::string title, CollectionSource source) {
  Collection c;
  c.id = fmt::format("col-{}", s.next_collection++);
  c.title = std::move(title);
  c.source = std::move(source);
  s.collections.push_back(std::move(c));
  return s.collections.back();
}

void note_collected(SessionState& s, const std::string& paper_id) {
  if (!s.collected.insert(paper_id).second) return;
  for (const auto& d : s.papers.at(paper_id).effective_disciplines()) {
    s.engagement.record({rank::EngagementKind::PaperCollected, d});
  }
}

void add_to(SessionState& s, Collection& c, const std::string& paper_id) {
  if (std::find(c.paper_ids.begin(), c.paper_ids.end(), paper_id) == c.paper_ids.end()) {
    c.paper_ids.push_back(paper_id);
  }
  note_collected(s, paper_id);
}

void require_paper(const SessionState& s, const std::string& paper_id) {
  if (!s.papers.count(paper_id)) throw Error(ErrorKind::UnknownEntity, "no paper " + paper_id);
}

// Target for a paper dropped on the collection view without naming a collection.
Collection& default_target(SessionState& s, const DropPaper& e) {
  if (e.source_eq_id && e.source_theme_id) {
    const auto* theme = s.find_theme(*e.source_eq_id, *e.source_theme_id);
    if (!theme) throw Error(ErrorKind::UnknownEntity, "no theme " + *e.source_theme_id);
    for (auto& c : s.collections) {
      if (c.source.kind == CollectionSourceKind::FromTheme && c.source.theme_id == theme->id) return c;
    }
    auto keyphrases = theme->keyphrases;
    auto& c = new_collection(s, theme->title, {CollectionSourceKind::FromTheme, theme->id});
    c.keyphrases = std::move(keyphrases);
    return c;
  }
  for (auto& c : s.collections) {
    if (c.source.kind == CollectionSourceKind::FromLinks) return c;
  }
  return new_collection(s, kLinksCollectionTitle, {CollectionSourceKind::FromLinks, std::nullopt});
}

std::string random_hex(std::size_t bytes) {
  static thread_local std::mt19937_64 rng{std::random_device{}()};
  std::string out;
  for (std::size_t i = 0; i < bytes; ++i) out += fmt::format("{:02x}", static_cast<unsigned>(rng() & 0xff));
  return out;
}

}  // namespace

const ExploratoryQuestion* SessionState::find_eq(std::string_view id) const {
  for (const auto& eq : eqs) {
    if (eq.id == id) return &eq;
  }
  return nullptr;
}

const Collection* SessionState::find_collection(std::string_view id) const {
  for (const auto& c : collections) {
    if (c.id == id) return &c;
  }
  return nullptr;
}

const theming::Theme* SessionState::find_theme(std::string_view eq_id, std::string_view theme_id) const {
  auto it = explorations.find(std::string(eq_id));
  if (it == explorations.end()) return nullptr;
  for (const auto& t : it->second.themes.themes) {
    if (t.id == theme_id) return &t;
  }
  return nullptr;
}

SessionState create_session(std::string_view topic_text, std::string session_id, std::int64_t now) {
  SessionState s;
  s.topic = normalize_topic(topic_text);
  s.session_id = std::move(session_id);
  s.created_ms = now;
  s.updated_ms = now;
  return s;
}

void apply_edit(SessionState& s, const CollectionEdit& edit) {
  struct Visitor {
    SessionState& s;
    void operator()(const DropTheme& e) const {
      const auto* theme = s.find_theme(e.eq_id, e.theme_id);
      if (!theme) throw Error(ErrorKind::UnknownEntity, fmt::format("no theme {} under {}", e.theme_id, e.eq_id));
      const auto ids = theme->paper_ids;
      auto keyphrases = theme->keyphrases;
      auto& c = new_collection(s, theme->title, {CollectionSourceKind::FromTheme, theme->id});
      c.keyphrases = std::move(keyphrases);
      const auto col_id = c.id;
      for (const auto& id : ids) add_to(s, collection_or_throw(s, col_id), id);
    }
    void operator()(const DropPaper& e) const {
      require_paper(s, e.paper_id);
      Collection& c = e.target_collection ? collection_or_throw(s, *e.target_collection) : default_target(s, e);
      add_to(s, c, e.paper_id);
    }
    void operator()(const MovePaper& e) const {
      auto& from = collection_or_throw(s, e.from_collection);
      collection_or_throw(s, e.to_collection);
      auto it = std::find(from.paper_ids.begin(), from.paper_ids.end(), e.paper_id);
      if (it == from.paper_ids.end()) {
        throw Error(ErrorKind::UnknownEntity, fmt::format("paper {} not in {}", e.paper_id, e.from_collection));
      }
      if (e.from_collection == e.to_collection) return;
      from.paper_ids.erase(it);
      add_to(s, collection_or_throw(s, e.to_collection), e.paper_id);
    }
    void operator()(const RemovePaper& e) const {
      auto& c = collection_or_throw(s, e.collection_id);
      auto it = std::find(c.paper_ids.begin(), c.paper_ids.end(), e.paper_id);
      if (it == c.paper_ids.end()) {
        throw Error(ErrorKind::UnknownEntity, fmt::format("paper {} not in {}", e.paper_id, e.collection_id));
      }
      c.paper_ids.erase(it);
    }
    void operator()(const CreateCollection& e) const {
      new_collection(s, checked_title(e.title), {CollectionSourceKind::Manual, std::nullopt});
    }
    void operator()(const RenameCollection& e) const {
      auto title = checked_title(e.title);
      collection_or_throw(s, e.collection_id).title = std::move(title);
    }
    void operator()(const DeleteCollection& e) const {
      collection_or_throw(s, e.collection_id);
      std::erase_if(s.collections, [&](const Collection& c) { return c.id == e.collection_id; });
    }
  };
  std::visit(Visitor{s}, edit);
}

std::vector<ExploratoryQuestion> add_eqs(SessionState& s, std::vector<ExploratoryQuestion> eqs) {
  for (auto& eq : eqs) {
    eq.id = fmt::format("eq-{}", s.next_eq++);
    s.eqs.push_back(eq);
  }
  return eqs;
}

const ExploratoryQuestion& update_eq(SessionState& s, std::string_view eq_id, const std::optional<std::string>& text,
                                     const std::optional<bool>& selected) {
  auto it = std::find_if(s.eqs.begin(), s.eqs.end(), [&](const ExploratoryQuestion& e) { return e.id == eq_id; });
  if (it == s.eqs.end()) throw Error(ErrorKind::UnknownEntity, fmt::format("no EQ {}", eq_id));
  if (text) {
    auto t = text::trim(*text);
    if (t.empty()) throw Error(ErrorKind::InvalidArgument, "EQ text is empty");
    if (t != it->text) {
      it->text = std::move(t);
      it->origin = EqOrigin::UserEdited;
      eq::validate_question(*it, eq::EqEngineConfig{}.max_words);
    }
  }
  if (selected) it->selected = *selected;
  return *it;
}

const ExploratoryQuestion& create_user_eq(SessionState& s, std::string text, const DisciplineName& discipline,
                                          const DisciplineRegistry& registry) {
  auto t = text::trim(text);
  if (t.empty()) throw Error(ErrorKind::InvalidArgument, "EQ text is empty");
  auto canonical = registry.canonical(discipline);
  if (!canonical) throw Error(ErrorKind::InvalidArgument, "unknown discipline " + discipline);
  ExploratoryQuestion eq;
  eq.text = std::move(t);
  eq.discipline = *canonical;
  eq.origin = EqOrigin::UserCreated;
  eq.selected = true;
  eq::validate_question(eq, eq::EqEngineConfig{}.max_words);
  add_eqs(s, {std::move(eq)});
  return s.eqs.back();
}

void add_papers(SessionState& s, const std::vector<PaperRecord>& papers) {
  for (const auto& p : papers) s.papers.insert_or_assign(p.paper_id, p);
}

std::vector<std::string> check_invariants(const SessionState& s) {
  std::vector<std::string> issues;
  auto known_paper = [&](const std::string& id, const std::string& where) {
    if (!s.papers.count(id)) issues.push_back(fmt::format("{} references unknown paper {}", where, id));
  };

  std::unordered_set<std::string> eq_ids;
  for (const auto& eq : s.eqs) {
    if (!eq_ids.insert(eq.id).second) issues.push_back("duplicate EQ id " + eq.id);
    if (!DisciplineRegistry::builtin().contains(eq.discipline)) {
      issues.push_back(fmt::format("EQ {} has unknown discipline {}", eq.id, eq.discipline));
    }
  }

  for (const auto& [eq_id, e] : s.explorations) {
    if (!eq_ids.count(eq_id)) issues.push_back("exploration for unknown EQ " + eq_id);
    const auto where = "exploration " + eq_id;
    for (const auto& id : e.retrieved_paper_ids) known_paper(id, where);
    std::multiset<std::string> placed;
    for (const auto& t : e.themes.themes) {
      for (const auto& id : t.paper_ids) placed.insert(id);
    }
    for (const auto& id : e.themes.possibly_relevant) placed.insert(id);
    std::multiset<std::string> retrieved(e.retrieved_paper_ids.begin(), e.retrieved_paper_ids.end());
    if (placed != retrieved) issues.push_back(where + " violates conservation");
  }

  std::unordered_set<std::string> col_ids;
  for (const auto& c : s.collections) {
    if (!col_ids.insert(c.id).second) issues.push_back("duplicate collection id " + c.id);
    if (text::trim(c.title).empty()) issues.push_back("collection " + c.id + " has an empty title");
    std::unordered_set<std::string> members;
    for (const auto& id : c.paper_ids) {
      known_paper(id, "collection " + c.id);
      if (!members.insert(id).second) issues.push_back(fmt::format("collection {} repeats {}", c.id, id));
      if (!s.collected.count(id)) issues.push_back(fmt::format("paper {} collected without engagement", id));
    }
  }
  for (const auto& id : s.collected) known_paper(id, "collected set");
  if (s.updated_ms < s.created_ms) issues.push_back("updated before created");
  return issues;
}

std::string serialize(const SessionState& state) {
  const json body = state;
  const json doc{{"schema_version", kSchemaVersion}, {"checksum", util::sha256_hex(body.dump())}, {"state", body}};
  return doc.dump(1);
}

SessionState deserialize(std::string_view document) {
  try {
    const auto doc = json::parse(document);
    if (doc.at("schema_version").get<int>() != kSchemaVersion) {
      throw Error(ErrorKind::CorruptState, "unsupported schema_version");
    }
    const auto& body = doc.at("state");
    if (util::sha256_hex(body.dump()) != doc.at("checksum").get<std::string>()) {
      throw Error(ErrorKind::CorruptState, "checksum mismatch");
    }
    return body.get<SessionState>();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::CorruptState, std::string("malformed session document: ") + e.what());
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::CorruptState) throw;
    throw Error(ErrorKind::CorruptState, e.what());
  }
}

SessionStore::SessionStore(std::filesystem::path data_dir) : data_dir_(std::move(data_dir)) {
  std::filesystem::create_directories(data_dir_);
}

SessionState SessionStore::create(std::string_view topic_text) {
  std::string id;
  do {
    id = random_hex(12);
  } while (exists(id));
  auto state = create_session(topic_text, id, now_ms());
  save(state);
  return state;
}

void SessionStore::save(const SessionState& state) {
  if (state.session_id.empty()) throw Error(ErrorKind::InvalidArgument, "session id is empty");
  util::atomic_write_file(path_for(state.session_id), serialize(state));
}

SessionState SessionStore::load(const std::string& session_id) const {
  const auto path = path_for(session_id);
  if (!std::filesystem::exists(path)) throw Error(ErrorKind::NotFound, "no session " + session_id);
  return deserialize(util::read_file(path));
}

bool SessionStore::exists(const std::string& session_id) const {
  return std::filesystem::exists(path_for(session_id));
}

SessionState SessionStore::mutate(const std::string& session_id, const std::function<void(SessionState&)>& edit) {
  auto lock_ptr = writer_lock(session_id);
  std::lock_guard lock(*lock_ptr);
  auto state = load(session_id);
  edit(state);
  state.updated_ms = std::max(now_ms(), state.updated_ms);
  save(state);
  return state;
}

std::filesystem::path SessionStore::path_for(const std::string& session_id) const {
  // Ids come from URLs; only accept the characters we generate plus a few safe ones.
  const bool ok = !session_id.empty() && session_id.size() <= 64 &&
                  std::all_of(session_id.begin(), session_id.end(), [](char c) {
                    return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_';
                  });
  if (!ok) throw Error(ErrorKind::NotFound, "no session " + session_id);
  return data_dir_ / (session_id + ".json");
}

std::shared_ptr<std::mutex> SessionStore::writer_lock(const std::string& session_id) {
  std::lock_guard lock(locks_mutex_);
  auto& m = locks_[session_id];
  if (!m) m = std::make_shared<std::mutex>();
  return m;
}

std::int64_t now_ms() {
  using namespace std::chrono;
  return duration_cast<milliseconds>(system_clock::now().time_since_epoch()).count();
}

}  // namespace coexplore::session
