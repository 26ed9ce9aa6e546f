#include "runo/forest.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "runo/rng.hpp"

namespace runo {

namespace {

double gini(double n0, double n1) {
  const double n = n0 + n1;
  if (n <= 0.0) return 0.0;
  const double p0 = n0 / n, p1 = n1 / n;
  return 1.0 - p0 * p0 - p1 * p1;
}

}  // namespace

class TreeBuilder {
 public:
  TreeBuilder(std::span<const std::vector<double>> rows, std::span<const int> labels,
              std::size_t max_features, std::size_t total, Rng& rng)
      : rows_(rows), labels_(labels), max_features_(max_features), total_(static_cast<double>(total)),
        rng_(rng), decrease_(rows.front().size(), 0.0) {}

  RandomForest::Tree build(std::vector<std::size_t> samples) {
    tree_.clear();
    tree_.push_back({});
    grow(0, samples);
    return std::move(tree_);
  }

  const std::vector<double>& decrease() const { return decrease_; }

 private:
  struct Split {
    std::size_t feature = 0;
    double threshold = 0.0;
    double improvement = -1.0;
  };

  void grow(std::size_t node, std::vector<std::size_t>& samples) {
    double n1 = 0.0;
    for (auto s : samples) n1 += labels_[s];
    const double n = static_cast<double>(samples.size());
    const double n0 = n - n1;
    tree_[node].label = n1 > n0 ? 1 : 0;
    if (n0 == 0.0 || n1 == 0.0 || samples.size() < 2) return;

    const auto split = best_split(samples, n0, n1);
    if (split.improvement < 0.0) return;

    decrease_[split.feature] += n / total_ * split.improvement;
    std::vector<std::size_t> left, right;
    for (auto s : samples) {
      (rows_[s][split.feature] <= split.threshold ? left : right).push_back(s);
    }
    samples.clear();
    samples.shrink_to_fit();

    tree_[node].feature = split.feature;
    tree_[node].threshold = split.threshold;
    const auto l = tree_.size();
    tree_.push_back({});
    const auto r = tree_.size();
    tree_.push_back({});
    tree_[node].left = l;
    tree_[node].right = r;
    grow(l, left);
    grow(r, right);
  }

  // Features are drawn in random order until max_features non-constant ones
  // have been examined (or all features are exhausted).
  Split best_split(const std::vector<std::size_t>& samples, double n0, double n1) {
    const auto f = rows_.front().size();
    std::vector<std::size_t> order(f);
    std::iota(order.begin(), order.end(), 0);
    rng_.shuffle(std::span<std::size_t>(order));

    const double parent = gini(n0, n1);
    const double n = n0 + n1;
    Split best;
    std::size_t examined = 0;
    std::vector<std::pair<double, int>> column(samples.size());
    for (auto feature : order) {
      if (examined >= max_features_) break;
      for (std::size_t i = 0; i < samples.size(); ++i) {
        column[i] = {rows_[samples[i]][feature], labels_[samples[i]]};
      }
      std::sort(column.begin(), column.end());
      if (column.front().first == column.back().first) continue;
      ++examined;
      double l0 = 0.0, l1 = 0.0;
      for (std::size_t i = 0; i + 1 < column.size(); ++i) {
        (column[i].second ? l1 : l0) += 1.0;
        if (column[i].first == column[i + 1].first) continue;
        const double nl = l0 + l1, nr = n - nl;
        const double child = nl / n * gini(l0, l1) + nr / n * gini(n0 - l0, n1 - l1);
        const double improvement = parent - child;
        if (improvement > best.improvement) {
          best.improvement = improvement;
          best.feature = feature;
          best.threshold = 0.5 * (column[i].first + column[i + 1].first);
          // Midpoint can round onto the upper value; keep the split proper.
          if (best.threshold >= column[i + 1].first) best.threshold = column[i].first;
        }
      }
    }
    return best;
  }

  std::span<const std::vector<double>> rows_;
  std::span<const int> labels_;
  std::size_t max_features_;
  double total_;
  Rng& rng_;
  std::vector<double> decrease_;
  RandomForest::Tree tree_;
};

RandomForest RandomForest::fit(std::span<const std::vector<double>> rows, std::span<const int> labels,
                               const ForestOptions& options) {
  if (rows.empty()) throw std::invalid_argument("random forest needs at least one sample");
  if (rows.size() != labels.size()) throw std::invalid_argument("rows and labels differ in length");
  const auto f = rows.front().size();
  if (f == 0) throw std::invalid_argument("random forest needs at least one feature");
  for (const auto& r : rows) {
    if (r.size() != f) throw std::invalid_argument("ragged feature rows");
  }
  const auto mtry = std::clamp<std::size_t>(
      options.max_features.value_or(static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(f))))),
      1, f);

  RandomForest forest;
  forest.importances_.assign(f, 0.0);
  Rng rng(options.seed);
  const auto n = rows.size();
  for (std::size_t t = 0; t < options.n_trees; ++t) {
    std::vector<std::size_t> samples(n);
    if (options.bootstrap) {
      for (auto& s : samples) s = rng.index(n);
    } else {
      std::iota(samples.begin(), samples.end(), 0);
    }
    TreeBuilder builder(rows, labels, mtry, n, rng);
    forest.trees_.push_back(builder.build(std::move(samples)));
    const auto& dec = builder.decrease();
    const double sum = std::accumulate(dec.begin(), dec.end(), 0.0);
    if (sum > 0.0) {
      for (std::size_t i = 0; i < f; ++i) forest.importances_[i] += dec[i] / sum;
    }
  }
  const double total = std::accumulate(forest.importances_.begin(), forest.importances_.end(), 0.0);
  if (total > 0.0) {
    for (auto& v : forest.importances_) v /= total;
  }
  return forest;
}

double RandomForest::predict_proba(std::span<const double> row) const {
  if (trees_.empty()) return 0.0;
  double votes = 0.0;
  for (const auto& tree : trees_) {
    std::size_t node = 0;
    while (tree[node].left != 0) {
      node = row[tree[node].feature] <= tree[node].threshold ? tree[node].left : tree[node].right;
    }
    votes += tree[node].label;
  }
  return votes / static_cast<double>(trees_.size());
}

}  // namespace runo
