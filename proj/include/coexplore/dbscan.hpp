#pragma once

#include <cstddef>
#include <deque>
#include <span>
#include <vector>

#include "coexplore/error.hpp"

namespace coexplore::theming {

struct ClusteringParams {
  double eps = 0.35;  // cosine-distance radius
  std::size_t min_pts = 3;

  void validate() const {
    if (!(eps > 0.0 && eps < 2.0)) throw Error(ErrorKind::InvalidArgument, "eps must be in (0, 2)");
    if (min_pts < 2) throw Error(ErrorKind::InvalidArgument, "min_pts must be at least 2");
  }
};

struct DbscanResult {
  std::vector<std::vector<std::size_t>> clusters;  // each ascending; ordered by first core point
  std::vector<std::size_t> noise;                  // ascending
};

// Density-based clustering. A point is core when at least min_pts points
// (itself included) lie within eps. Clusters are opened in index order and
// grown breadth-first, so a border point joins the first cluster reaching it.
template <typename Point, typename Distance>
DbscanResult dbscan(std::span<const Point> points, double eps, std::size_t min_pts, Distance&& distance) {
  constexpr int kUnvisited = -2;
  constexpr int kNoise = -1;
  const std::size_t n = points.size();

  std::vector<std::vector<std::size_t>> neighborhoods(n);
  for (std::size_t i = 0; i < n; ++i) {
    neighborhoods[i].push_back(i);
    for (std::size_t j = i + 1; j < n; ++j) {
      if (distance(points[i], points[j]) <= eps) {
        neighborhoods[i].push_back(j);
        neighborhoods[j].push_back(i);
      }
    }
  }
  auto is_core = [&](std::size_t i) { return neighborhoods[i].size() >= min_pts; };

  std::vector<int> label(n, kUnvisited);
  int next_cluster = 0;
  for (std::size_t p = 0; p < n; ++p) {
    if (label[p] != kUnvisited) continue;
    if (!is_core(p)) {
      label[p] = kNoise;
      continue;
    }
    const int cluster = next_cluster++;
    label[p] = cluster;
    std::deque<std::size_t> frontier(neighborhoods[p].begin(), neighborhoods[p].end());
    while (!frontier.empty()) {
      const std::size_t q = frontier.front();
      frontier.pop_front();
      if (label[q] == kNoise) label[q] = cluster;
      if (label[q] != kUnvisited) continue;
      label[q] = cluster;
      if (is_core(q)) frontier.insert(frontier.end(), neighborhoods[q].begin(), neighborhoods[q].end());
    }
  }

  DbscanResult out;
  out.clusters.resize(static_cast<std::size_t>(next_cluster));
  for (std::size_t i = 0; i < n; ++i) {
    if (label[i] >= 0) {
      out.clusters[static_cast<std::size_t>(label[i])].push_back(i);
    } else {
      out.noise.push_back(i);
    }
  }
  return out;
}

}  // namespace coexplore::theming
