#pragma once

#include <optional>
#include <string_view>
#include <vector>

namespace coexplore::assets {

// Files under assets/ compiled into the library, keyed by relative path
// (e.g. "prompts/eq_generation.txt").
std::optional<std::string_view> find(std::string_view relative_path);
std::string_view get(std::string_view relative_path);
std::vector<std::string_view> list();

// Non-empty lines of an asset.
std::vector<std::string_view> lines(std::string_view relative_path);

}  // namespace coexplore::assets
