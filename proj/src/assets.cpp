#include "coexplore/assets.hpp"

#include <string>
#include <utility>

#include "coexplore/error.hpp"

namespace coexplore::assets {
namespace detail {
extern const std::pair<std::string_view, std::string_view> kEntries[];
extern const unsigned long kEntryCount;
}  // namespace detail

std::optional<std::string_view> find(std::string_view relative_path) {
  for (unsigned long i = 0; i < detail::kEntryCount; ++i) {
    if (detail::kEntries[i].first == relative_path) return detail::kEntries[i].second;
  }
  return std::nullopt;
}

std::string_view get(std::string_view relative_path) {
  auto found = find(relative_path);
  if (!found) throw Error(ErrorKind::NotFound, "asset " + std::string(relative_path));
  return *found;
}

std::vector<std::string_view> list() {
  std::vector<std::string_view> out;
  for (unsigned long i = 0; i < detail::kEntryCount; ++i) out.push_back(detail::kEntries[i].first);
  return out;
}

std::vector<std::string_view> lines(std::string_view relative_path) {
  std::string_view content = get(relative_path);
  std::vector<std::string_view> out;
  while (!content.empty()) {
    auto nl = content.find('\n');
    auto line = content.substr(0, nl);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) out.push_back(line);
    if (nl == std::string_view::npos) break;
    content.remove_prefix(nl + 1);
  }
  return out;
}

}  // namespace coexplore::assets
