#pragma once

#include <nlohmann/json.hpp>

#include "coexplore/types.hpp"

namespace coexplore {

void to_json(nlohmann::json& j, const Vector& v);
void from_json(const nlohmann::json& j, Vector& v);
void to_json(nlohmann::json& j, const ResearchTopic& t);
void from_json(const nlohmann::json& j, ResearchTopic& t);
void to_json(nlohmann::json& j, const ExploratoryQuestion& eq);
void from_json(const nlohmann::json& j, ExploratoryQuestion& eq);
void to_json(nlohmann::json& j, const PaperRecord& p);
void from_json(const nlohmann::json& j, PaperRecord& p);

}  // namespace coexplore
