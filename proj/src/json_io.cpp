#include "coexplore/json_io.hpp"

namespace coexplore {

using nlohmann::json;

void to_json(json& j, const Vector& v) {
  j = std::vector<double>(v.components().begin(), v.components().end());
}
void from_json(const json& j, Vector& v) { v = Vector(j.get<std::vector<double>>()); }

void to_json(json& j, const ResearchTopic& t) { j = json{{"text", t.text}, {"concepts", t.concepts}}; }
void from_json(const json& j, ResearchTopic& t) {
  j.at("text").get_to(t.text);
  j.at("concepts").get_to(t.concepts);
}

void to_json(json& j, const ExploratoryQuestion& eq) {
  j = json{{"id", eq.id},
           {"text", eq.text},
           {"discipline", eq.discipline},
           {"subfield", eq.subfield ? json(*eq.subfield) : json(nullptr)},
           {"origin", std::string(to_string(eq.origin))},
           {"selected", eq.selected},
           {"warnings", eq.warnings}};
}
void from_json(const json& j, ExploratoryQuestion& eq) {
  j.at("id").get_to(eq.id);
  j.at("text").get_to(eq.text);
  j.at("discipline").get_to(eq.discipline);
  eq.subfield.reset();
  if (j.contains("subfield") && !j.at("subfield").is_null()) eq.subfield = j.at("subfield").get<std::string>();
  eq.origin = eq_origin_from_string(j.at("origin").get<std::string>());
  eq.selected = j.value("selected", false);
  eq.warnings = j.value("warnings", std::vector<std::string>{});
}

void to_json(json& j, const PaperRecord& p) {
  j = json{{"paper_id", p.paper_id},
           {"title", p.title},
           {"abstract", p.abstract},
           {"disciplines", p.disciplines},
           {"year", p.year ? json(*p.year) : json(nullptr)},
           {"venue", p.venue ? json(*p.venue) : json(nullptr)},
           {"authors", p.authors},
           {"citation_count", p.citation_count},
           {"url", p.url ? json(*p.url) : json(nullptr)}};
}
void from_json(const json& j, PaperRecord& p) {
  j.at("paper_id").get_to(p.paper_id);
  j.at("title").get_to(p.title);
  p.abstract = j.contains("abstract") && !j.at("abstract").is_null() ? j.at("abstract").get<std::string>() : "";
  p.disciplines = j.value("disciplines", std::vector<DisciplineName>{});
  p.year.reset();
  if (j.contains("year") && !j.at("year").is_null()) p.year = j.at("year").get<int>();
  p.venue.reset();
  if (j.contains("venue") && !j.at("venue").is_null()) p.venue = j.at("venue").get<std::string>();
  p.authors = j.value("authors", std::vector<std::string>{});
  p.citation_count = j.value("citation_count", std::int64_t{0});
  p.url.reset();
  if (j.contains("url") && !j.at("url").is_null()) p.url = j.at("url").get<std::string>();
}

}  // namespace coexplore
