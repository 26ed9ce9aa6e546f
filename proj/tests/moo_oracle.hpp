#pragma once

#include <vector>

#include "runo/moo.hpp"
#include "runo/rng.hpp"

namespace runo::testing {

/// Fronts by repeated peeling with an O(n^2 m) dominance scan; ids ascending.
inline std::vector<std::vector<std::size_t>> brute_force_fronts(const std::vector<moo::ObjectivePoint>& pts) {
  auto dom = [](const moo::ObjectivePoint& a, const moo::ObjectivePoint& b) {
    bool better = false;
    for (std::size_t k = 0; k < a.objectives.size(); ++k) {
      if (a.objectives[k] < b.objectives[k]) return false;
      if (a.objectives[k] > b.objectives[k]) better = true;
    }
    return better;
  };
  std::vector<bool> removed(pts.size(), false);
  std::vector<std::vector<std::size_t>> fronts;
  std::size_t left = pts.size();
  while (left > 0) {
    std::vector<std::size_t> front;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (removed[i]) continue;
      bool dominated = false;
      for (std::size_t j = 0; j < pts.size() && !dominated; ++j) {
        dominated = !removed[j] && dom(pts[j], pts[i]);
      }
      if (!dominated) front.push_back(i);
    }
    for (auto i : front) removed[i] = true;
    left -= front.size();
    std::vector<std::size_t> ids;
    for (auto i : front) ids.push_back(pts[i].id);
    fronts.push_back(ids);
  }
  return fronts;
}

inline std::vector<moo::ObjectivePoint> random_points(std::size_t n, std::size_t m, Rng& rng, bool coarse = false) {
  std::vector<moo::ObjectivePoint> pts;
  for (std::size_t i = 0; i < n; ++i) {
    moo::ObjectivePoint p{i, {}};
    for (std::size_t k = 0; k < m; ++k) {
      p.objectives.push_back(coarse ? static_cast<double>(rng.index(4)) : rng.uniform());
    }
    pts.push_back(p);
  }
  return pts;
}

}  // namespace runo::testing
