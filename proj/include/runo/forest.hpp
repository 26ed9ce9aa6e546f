#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace runo {

struct ForestOptions {
  std::size_t n_trees = 100;
  /// Features examined per split; default ceil(sqrt(feature count)).
  std::optional<std::size_t> max_features;
  bool bootstrap = true;
  std::uint64_t seed = 1;
};

/// Binary-label random forest of unpruned Gini trees.
///
/// Only the mean impurity-decrease feature importances are used downstream;
/// predict() exists for sanity checks.
class RandomForest {
 public:
  /// rows[i] is the feature vector of sample i; labels are 0/1.
  static RandomForest fit(std::span<const std::vector<double>> rows, std::span<const int> labels,
                          const ForestOptions& options = {});

  /// Per-tree importances normalized to 1, averaged, renormalized to sum 1.
  /// All zeros when no tree found a useful split.
  const std::vector<double>& feature_importances() const { return importances_; }

  /// Fraction of trees voting for label 1.
  double predict_proba(std::span<const double> row) const;
  int predict(std::span<const double> row) const { return predict_proba(row) >= 0.5 ? 1 : 0; }
  std::size_t tree_count() const { return trees_.size(); }

 private:
  struct Node {
    std::size_t feature = 0;
    double threshold = 0.0;
    std::size_t left = 0;   // 0 marks a leaf
    std::size_t right = 0;
    int label = 0;
  };
  using Tree = std::vector<Node>;

  std::vector<Tree> trees_;
  std::vector<double> importances_;

  friend class TreeBuilder;
};

}  // namespace runo
