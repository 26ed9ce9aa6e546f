#include "runo/moo.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace runo::moo {

bool dominates(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("objective counts differ");
  bool strictly = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return false;
    if (a[i] > b[i]) strictly = true;
  }
  return strictly;
}

namespace {

// Fronts as indices into `points`.
std::vector<std::vector<std::size_t>> sort_indices(std::span<const ObjectivePoint> points) {
  const std::size_t n = points.size();
  std::vector<std::vector<std::size_t>> dominated(n);
  std::vector<std::size_t> counter(n, 0);
  std::vector<std::vector<std::size_t>> fronts;
  std::vector<std::size_t> current;
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) {
      if (p == q) continue;
      if (dominates(points[p], points[q])) {
        dominated[p].push_back(q);
      } else if (dominates(points[q], points[p])) {
        ++counter[p];
      }
    }
    if (counter[p] == 0) current.push_back(p);
  }
  while (!current.empty()) {
    std::vector<std::size_t> next;
    for (auto p : current) {
      for (auto q : dominated[p]) {
        if (--counter[q] == 0) next.push_back(q);
      }
    }
    std::sort(next.begin(), next.end());
    fronts.push_back(std::move(current));
    current = std::move(next);
  }
  return fronts;
}

std::vector<double> crowding_of(std::span<const ObjectivePoint> points, std::span<const std::size_t> front) {
  const std::size_t n = front.size();
  std::vector<double> dist(n, 0.0);
  if (n == 0) return dist;
  const double inf = std::numeric_limits<double>::infinity();
  if (n <= 2) {
    std::fill(dist.begin(), dist.end(), inf);
    return dist;
  }
  const std::size_t m = points[front[0]].objectives.size();
  std::vector<std::size_t> order(n);
  for (std::size_t k = 0; k < m; ++k) {
    std::iota(order.begin(), order.end(), 0);
    auto value = [&](std::size_t i) { return points[front[i]].objectives[k]; };
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return value(a) < value(b); });
    const double range = value(order.back()) - value(order.front());
    dist[order.front()] = inf;
    dist[order.back()] = inf;
    if (range <= 0.0) continue;
    for (std::size_t i = 1; i + 1 < n; ++i) {
      dist[order[i]] += (value(order[i + 1]) - value(order[i - 1])) / range;
    }
  }
  return dist;
}

}  // namespace

std::vector<std::vector<std::size_t>> fast_nondominated_sort(std::span<const ObjectivePoint> points) {
  auto fronts = sort_indices(points);
  for (auto& front : fronts) {
    for (auto& i : front) i = points[i].id;
  }
  return fronts;
}

std::vector<double> crowding_distance(std::span<const ObjectivePoint> front) {
  std::vector<std::size_t> all(front.size());
  std::iota(all.begin(), all.end(), 0);
  return crowding_of(front, all);
}

RankCrowding rank_and_crowd(std::span<const ObjectivePoint> points) {
  RankCrowding rc;
  rc.rank.assign(points.size(), 0);
  rc.crowding.assign(points.size(), 0.0);
  const auto fronts = sort_indices(points);
  for (std::size_t f = 0; f < fronts.size(); ++f) {
    const auto dist = crowding_of(points, fronts[f]);
    for (std::size_t i = 0; i < fronts[f].size(); ++i) {
      rc.rank[fronts[f][i]] = f;
      rc.crowding[fronts[f][i]] = dist[i];
    }
  }
  return rc;
}

bool crowded_less(const RankCrowding& rc, std::size_t i, std::size_t j) {
  if (rc.rank[i] != rc.rank[j]) return rc.rank[i] < rc.rank[j];
  return rc.crowding[i] > rc.crowding[j];
}

std::vector<std::size_t> select_survivors(std::span<const ObjectivePoint> points, std::size_t k) {
  if (k > points.size()) throw std::invalid_argument("cannot select more survivors than points");
  std::vector<std::size_t> out;
  out.reserve(k);
  for (const auto& front : sort_indices(points)) {
    if (out.size() == k) break;
    if (out.size() + front.size() <= k) {
      for (auto i : front) out.push_back(points[i].id);
      continue;
    }
    const auto dist = crowding_of(points, front);
    std::vector<std::size_t> order(front.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return dist[a] > dist[b]; });
    for (std::size_t i = 0; out.size() < k; ++i) out.push_back(points[front[order[i]]].id);
  }
  return out;
}

}  // namespace runo::moo
