#include "coexplore/serialization.hpp"

#include "coexplore/error.hpp"

namespace coexplore {
namespace {

using nlohmann::json;

template <typename T>
std::optional<T> optional_field(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

json optional_json(const std::optional<std::string>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

namespace query {

void to_json(json& j, const QueryExpansion& q) {
  json terms = json::array();
  for (const auto& bt : q.terms) terms.push_back({{"bullet", bt.bullet}, {"terms", bt.terms}});
  std::vector<std::string> queries;
  for (const auto& qs : q.queries) queries.push_back(qs.text());
  j = json{{"eq_id", q.eq_id},         {"pseudo_answers", q.pseudo_answers}, {"terms", terms},
           {"queries", queries},       {"reprompted", q.reprompted},         {"padded", q.padded}};
}

void from_json(const json& j, QueryExpansion& q) {
  q.eq_id = j.at("eq_id").get<std::string>();
  q.pseudo_answers = j.at("pseudo_answers").get<std::vector<std::string>>();
  q.terms.clear();
  for (const auto& bt : j.at("terms")) {
    q.terms.push_back({bt.at("bullet").get<std::string>(), bt.at("terms").get<std::vector<std::string>>()});
  }
  q.queries.clear();
  for (const auto& s : j.at("queries")) q.queries.emplace_back(s.get<std::string>());
  q.reprompted = j.value("reprompted", false);
  q.padded = j.value("padded", std::size_t{0});
}

}  // namespace query

namespace theming {

void to_json(json& j, const Theme& t) {
  j = json{{"id", t.id},
           {"title", t.title},
           {"paper_ids", t.paper_ids},
           {"discipline_histogram", t.discipline_histogram},
           {"keyphrases", t.keyphrases}};
}

void from_json(const json& j, Theme& t) {
  j.at("id").get_to(t.id);
  j.at("title").get_to(t.title);
  j.at("paper_ids").get_to(t.paper_ids);
  j.at("discipline_histogram").get_to(t.discipline_histogram);
  j.at("keyphrases").get_to(t.keyphrases);
}

void to_json(json& j, const ThemeSet& t) {
  j = json{{"eq_id", t.eq_id}, {"themes", t.themes}, {"possibly_relevant", t.possibly_relevant}};
}

void from_json(const json& j, ThemeSet& t) {
  j.at("eq_id").get_to(t.eq_id);
  j.at("themes").get_to(t.themes);
  j.at("possibly_relevant").get_to(t.possibly_relevant);
}

}  // namespace theming

namespace rank {

void to_json(json& j, const EngagementHistory& h) {
  j = json::object();
  for (const auto& [d, c] : h.all()) {
    j[d] = {{"papers_collected", c.papers_collected}, {"eqs_queried", c.eqs_queried}};
  }
}

void from_json(const json& j, EngagementHistory& h) {
  std::map<DisciplineName, EngagementCounters> counters;
  for (const auto& [d, c] : j.items()) {
    counters[d] = {c.at("papers_collected").get<std::uint64_t>(), c.at("eqs_queried").get<std::uint64_t>()};
  }
  h = EngagementHistory::from_counters(std::move(counters));
}

void to_json(json& j, const DisciplineScore& s) {
  j = json{{"discipline", s.discipline},   {"engagement", s.engagement}, {"exploration_score", s.exploration},
           {"relevance", s.relevance},     {"combined", s.combined},     {"beta", s.beta}};
}

}  // namespace rank

namespace session {

std::string_view to_string(CollectionSourceKind kind) {
  switch (kind) {
    case CollectionSourceKind::FromTheme: return "from_theme";
    case CollectionSourceKind::FromLinks: return "from_links";
    case CollectionSourceKind::Manual: return "manual";
  }
  return "manual";
}

namespace {
CollectionSourceKind source_kind_from_string(const std::string& s) {
  if (s == "from_theme") return CollectionSourceKind::FromTheme;
  if (s == "from_links") return CollectionSourceKind::FromLinks;
  if (s == "manual") return CollectionSourceKind::Manual;
  throw Error(ErrorKind::InvalidArgument, "unknown collection source " + s);
}
}  // namespace

void to_json(json& j, const Collection& c) {
  j = json{{"id", c.id},
           {"title", c.title},
           {"paper_ids", c.paper_ids},
           {"keyphrases", c.keyphrases},
           {"source", {{"kind", std::string(to_string(c.source.kind))}, {"theme_id", optional_json(c.source.theme_id)}}}};
}

void from_json(const json& j, Collection& c) {
  j.at("id").get_to(c.id);
  j.at("title").get_to(c.title);
  j.at("paper_ids").get_to(c.paper_ids);
  c.keyphrases = j.value("keyphrases", std::vector<std::string>{});
  const auto& src = j.at("source");
  c.source.kind = source_kind_from_string(src.at("kind").get<std::string>());
  c.source.theme_id = optional_field<std::string>(src, "theme_id");
}

void to_json(json& j, const Exploration& e) {
  j = json{{"expansion", e.expansion}, {"retrieved_paper_ids", e.retrieved_paper_ids}, {"themes", e.themes}};
}

void from_json(const json& j, Exploration& e) {
  j.at("expansion").get_to(e.expansion);
  j.at("retrieved_paper_ids").get_to(e.retrieved_paper_ids);
  j.at("themes").get_to(e.themes);
}

void to_json(json& j, const SessionState& s) {
  j = json{{"session_id", s.session_id},
           {"topic", s.topic},
           {"eqs", s.eqs},
           {"explorations", s.explorations},
           {"collections", s.collections},
           {"engagement", s.engagement},
           {"papers", s.papers},
           {"collected", s.collected},
           {"next_eq", s.next_eq},
           {"next_collection", s.next_collection},
           {"created_ms", s.created_ms},
           {"updated_ms", s.updated_ms}};
}

void from_json(const json& j, SessionState& s) {
  j.at("session_id").get_to(s.session_id);
  j.at("topic").get_to(s.topic);
  j.at("eqs").get_to(s.eqs);
  s.explorations.clear();
  for (const auto& [id, e] : j.at("explorations").items()) s.explorations[id] = e.get<Exploration>();
  j.at("collections").get_to(s.collections);
  j.at("engagement").get_to(s.engagement);
  s.papers.clear();
  for (const auto& [id, p] : j.at("papers").items()) s.papers[id] = p.get<PaperRecord>();
  j.at("collected").get_to(s.collected);
  j.at("next_eq").get_to(s.next_eq);
  j.at("next_collection").get_to(s.next_collection);
  j.at("created_ms").get_to(s.created_ms);
  j.at("updated_ms").get_to(s.updated_ms);
}

CollectionEdit collection_edit_from_json(const json& j) {
  try {
    const auto type = j.at("type").get<std::string>();
    if (type == "drop_theme") return DropTheme{j.at("eq_id").get<std::string>(), j.at("theme_id").get<std::string>()};
    if (type == "drop_paper") {
      return DropPaper{j.at("paper_id").get<std::string>(), optional_field<std::string>(j, "target_collection"),
                       optional_field<std::string>(j, "source_eq_id"),
                       optional_field<std::string>(j, "source_theme_id")};
    }
    if (type == "move_paper") {
      return MovePaper{j.at("paper_id").get<std::string>(), j.at("from_collection").get<std::string>(),
                       j.at("to_collection").get<std::string>()};
    }
    if (type == "remove_paper") {
      return RemovePaper{j.at("collection_id").get<std::string>(), j.at("paper_id").get<std::string>()};
    }
    if (type == "create_collection") return CreateCollection{j.at("title").get<std::string>()};
    if (type == "rename_collection") {
      return RenameCollection{j.at("collection_id").get<std::string>(), j.at("title").get<std::string>()};
    }
    if (type == "delete_collection") return DeleteCollection{j.at("collection_id").get<std::string>()};
    throw Error(ErrorKind::InvalidArgument, "unknown edit type " + type);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidArgument, std::string("malformed collection edit: ") + e.what());
  }
}

json to_json(const CollectionEdit& edit) {
  struct Visitor {
    json operator()(const DropTheme& e) const {
      return {{"type", "drop_theme"}, {"eq_id", e.eq_id}, {"theme_id", e.theme_id}};
    }
    json operator()(const DropPaper& e) const {
      json j{{"type", "drop_paper"}, {"paper_id", e.paper_id}};
      if (e.target_collection) j["target_collection"] = *e.target_collection;
      if (e.source_eq_id) j["source_eq_id"] = *e.source_eq_id;
      if (e.source_theme_id) j["source_theme_id"] = *e.source_theme_id;
      return j;
    }
    json operator()(const MovePaper& e) const {
      return {{"type", "move_paper"},
              {"paper_id", e.paper_id},
              {"from_collection", e.from_collection},
              {"to_collection", e.to_collection}};
    }
    json operator()(const RemovePaper& e) const {
      return {{"type", "remove_paper"}, {"collection_id", e.collection_id}, {"paper_id", e.paper_id}};
    }
    json operator()(const CreateCollection& e) const { return {{"type", "create_collection"}, {"title", e.title}}; }
    json operator()(const RenameCollection& e) const {
      return {{"type", "rename_collection"}, {"collection_id", e.collection_id}, {"title", e.title}};
    }
    json operator()(const DeleteCollection& e) const {
      return {{"type", "delete_collection"}, {"collection_id", e.collection_id}};
    }
  };
  return std::visit(Visitor{}, edit);
}

}  // namespace session
}  // namespace coexplore
