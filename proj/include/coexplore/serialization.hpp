#pragma once

#include <nlohmann/json.hpp>

#include "coexplore/explore_rank.hpp"
#include "coexplore/json_io.hpp"
#include "coexplore/query_engine.hpp"
#include "coexplore/session.hpp"
#include "coexplore/theming.hpp"

namespace coexplore::query {
void to_json(nlohmann::json& j, const QueryExpansion& q);
void from_json(const nlohmann::json& j, QueryExpansion& q);
}  // namespace coexplore::query

namespace coexplore::theming {
void to_json(nlohmann::json& j, const Theme& t);
void from_json(const nlohmann::json& j, Theme& t);
void to_json(nlohmann::json& j, const ThemeSet& t);
void from_json(const nlohmann::json& j, ThemeSet& t);
}  // namespace coexplore::theming

namespace coexplore::rank {
void to_json(nlohmann::json& j, const EngagementHistory& h);
void from_json(const nlohmann::json& j, EngagementHistory& h);
void to_json(nlohmann::json& j, const DisciplineScore& s);
}  // namespace coexplore::rank

namespace coexplore::session {
void to_json(nlohmann::json& j, const Collection& c);
void from_json(const nlohmann::json& j, Collection& c);
void to_json(nlohmann::json& j, const Exploration& e);
void from_json(const nlohmann::json& j, Exploration& e);
void to_json(nlohmann::json& j, const SessionState& s);
void from_json(const nlohmann::json& j, SessionState& s);

// {"type": "drop_theme" | "drop_paper" | "move_paper" | "remove_paper" |
//  "create_collection" | "rename_collection" | "delete_collection", ...}
CollectionEdit collection_edit_from_json(const nlohmann::json& j);
nlohmann::json to_json(const CollectionEdit& edit);
}  // namespace coexplore::session
