#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "runo/corpus.hpp"
#include "runo/lexres.hpp"

namespace runo {

/// Dense row-major square matrix.
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {}

  std::size_t size() const { return n_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

struct AffinityOptions {
  double damping = 0.9;
  std::size_t max_iter = 200;
  std::size_t convergence_iter = 15;
};

struct AffinityResult {
  /// Cluster label per item; labels are numbered by first appearance.
  std::vector<std::size_t> labels;
  /// Exemplar item per cluster label.
  std::vector<std::size_t> exemplars;
  bool converged = true;
  std::size_t iterations = 0;

  std::size_t cluster_count() const { return exemplars.size(); }
};

/// Affinity propagation (responsibility/availability message passing).
///
/// `similarity` holds the items' true self-similarities on its diagonal;
/// message passing replaces them with `preference`. When every off-diagonal
/// similarity is equal the messages carry no information and the result is
/// decided directly: one cluster if the items are as similar to each other as
/// to themselves, otherwise singletons when preference >= that similarity.
AffinityResult affinity_propagation(const SquareMatrix& similarity, double preference,
                                    const AffinityOptions& options = {});

/// Median of the off-diagonal entries (0 for n < 2).
double median_off_diagonal(const SquareMatrix& m);

struct SemanticFields {
  std::vector<std::vector<std::string>> clusters;  // lemmas, first-appearance order
  std::vector<std::vector<double>> centroids;
  std::vector<std::string> topics;
  SquareMatrix distances;                          // cosine distance between centroids
  std::vector<std::string> out_of_vocabulary;
  bool converged = true;

  /// Empty-fields signal: nothing in the poem could be embedded.
  bool empty() const { return clusters.empty(); }
  /// Index of the cluster holding `lemma`, or clusters.size().
  std::size_t cluster_of(std::string_view lemma) const;
};

SemanticFields cluster_poem(const Poem& poem, const EmbeddingStore& store,
                            const AffinityOptions& options = {});

struct SemanticAesthetics {
  std::size_t n_clusters = 0;
  double avg_distance = 0.0;
  double max_distance = 0.0;
};

SemanticAesthetics semantic_aesthetics(const SemanticFields& fields);

}  // namespace runo
