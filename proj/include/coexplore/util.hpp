#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace coexplore::util {

std::string sha256_hex(std::string_view data);

std::optional<std::string> env(const char* name);
std::string env_or(const char* name, std::string fallback);

std::string read_file(const std::filesystem::path& path);
// Writes to a sibling temp file then renames over the target.
void atomic_write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace coexplore::util
