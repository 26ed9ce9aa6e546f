#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace runo::moo {

/// One candidate in objective space; every objective is maximized.
struct ObjectivePoint {
  std::size_t id = 0;
  std::vector<double> objectives;
};

bool dominates(std::span<const double> a, std::span<const double> b);
inline bool dominates(const ObjectivePoint& a, const ObjectivePoint& b) {
  return dominates(a.objectives, b.objectives);
}

/// Fronts of ids, best first. Ids inside a front keep input order.
std::vector<std::vector<std::size_t>> fast_nondominated_sort(std::span<const ObjectivePoint> points);

/// Crowding distance per point of `front`, aligned with its order.
std::vector<double> crowding_distance(std::span<const ObjectivePoint> front);

/// Front rank and crowding distance for every point, aligned with input order.
struct RankCrowding {
  std::vector<std::size_t> rank;
  std::vector<double> crowding;
};
RankCrowding rank_and_crowd(std::span<const ObjectivePoint> points);

/// True when point i wins the crowded comparison against point j.
bool crowded_less(const RankCrowding& rc, std::size_t i, std::size_t j);

/// Ids of the k survivors, in front order.
std::vector<std::size_t> select_survivors(std::span<const ObjectivePoint> points, std::size_t k);

}  // namespace runo::moo
