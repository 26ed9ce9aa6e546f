#include "runo/semfields.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

#include "runo/rng.hpp"

namespace runo {

double median_off_diagonal(const SquareMatrix& m) {
  const auto n = m.size();
  if (n < 2) return 0.0;
  std::vector<double> values;
  values.reserve(n * (n - 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) values.push_back(m(i, j));
    }
  }
  std::sort(values.begin(), values.end());
  const auto mid = values.size() / 2;
  return values.size() % 2 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

namespace {

constexpr double kTieTolerance = 1e-12;

AffinityResult single_cluster(std::size_t n, bool converged, std::size_t iterations) {
  AffinityResult r;
  r.labels.assign(n, 0);
  r.exemplars = {0};
  r.converged = converged;
  r.iterations = iterations;
  return r;
}

AffinityResult singletons(std::size_t n) {
  AffinityResult r;
  for (std::size_t i = 0; i < n; ++i) {
    r.labels.push_back(i);
    r.exemplars.push_back(i);
  }
  return r;
}

std::size_t argmax_over(const SquareMatrix& s, std::size_t row, const std::vector<std::size_t>& cols) {
  std::size_t best = 0;
  for (std::size_t c = 1; c < cols.size(); ++c) {
    if (s(row, cols[c]) > s(row, cols[best])) best = c;
  }
  return best;
}

}  // namespace

AffinityResult affinity_propagation(const SquareMatrix& similarity, double preference,
                                    const AffinityOptions& options) {
  const auto n = similarity.size();
  if (n == 0) return {};
  if (n == 1) return single_cluster(1, true, 0);

  bool uniform = true;
  const double common = similarity(0, 1);
  double min_self = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    min_self = std::min(min_self, similarity(i, i));
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && std::abs(similarity(i, j) - common) > kTieTolerance) uniform = false;
    }
  }
  if (uniform) {
    if (common >= min_self - kTieTolerance) return single_cluster(n, true, 0);
    return preference >= common ? singletons(n) : single_cluster(n, true, 0);
  }

  SquareMatrix s = similarity;
  for (std::size_t i = 0; i < n; ++i) s(i, i) = preference;

  // Tiny seeded noise breaks exact ties between symmetric items.
  Rng jitter(0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const double u1 = 1.0 - jitter.uniform(), u2 = jitter.uniform();
      const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
      s(i, k) += (std::numeric_limits<double>::epsilon() * s(i, k) + 100.0 * std::numeric_limits<double>::min()) * z;
    }
  }

  SquareMatrix r(n), a(n);
  const double damping = options.damping;
  const auto conv = std::max<std::size_t>(options.convergence_iter, 1);
  std::vector<std::vector<bool>> history(conv, std::vector<bool>(n, false));
  std::vector<bool> exemplar(n, false);
  bool converged = false;
  std::size_t it = 0;

  for (; it < options.max_iter; ++it) {
    // Responsibilities.
    for (std::size_t i = 0; i < n; ++i) {
      double first = -std::numeric_limits<double>::infinity();
      double second = first;
      std::size_t arg = 0;
      for (std::size_t k = 0; k < n; ++k) {
        const double v = a(i, k) + s(i, k);
        if (v > first) {
          second = first;
          first = v;
          arg = k;
        } else if (v > second) {
          second = v;
        }
      }
      for (std::size_t k = 0; k < n; ++k) {
        const double update = s(i, k) - (k == arg ? second : first);
        r(i, k) = damping * r(i, k) + (1.0 - damping) * update;
      }
    }
    // Availabilities.
    for (std::size_t k = 0; k < n; ++k) {
      double column = 0.0;
      for (std::size_t i = 0; i < n; ++i) column += i == k ? r(k, k) : std::max(0.0, r(i, k));
      for (std::size_t i = 0; i < n; ++i) {
        const double rp = i == k ? r(k, k) : std::max(0.0, r(i, k));
        double update = column - rp;  // self-availability
        if (i != k) update = std::min(0.0, update);
        a(i, k) = damping * a(i, k) + (1.0 - damping) * update;
      }
    }

    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i) {
      exemplar[i] = a(i, i) + r(i, i) > 0.0;
      count += exemplar[i];
    }
    history[it % conv] = exemplar;
    if (it + 1 >= conv) {
      bool stable = true;
      for (std::size_t i = 0; i < n && stable; ++i) {
        std::size_t on = 0;
        for (const auto& h : history) on += h[i];
        stable = on == 0 || on == conv;
      }
      if (stable && count > 0) {
        converged = true;
        ++it;
        break;
      }
    }
  }

  std::vector<std::size_t> centers;
  for (std::size_t i = 0; i < n; ++i) {
    if (exemplar[i]) centers.push_back(i);
  }
  if (centers.empty()) return single_cluster(n, false, it);

  // Assign, then move each exemplar to the member with the best total
  // within-cluster similarity, then reassign.
  auto assign = [&](const std::vector<std::size_t>& cs) {
    std::vector<std::size_t> c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = argmax_over(s, i, cs);
    for (std::size_t k = 0; k < cs.size(); ++k) c[cs[k]] = k;
    return c;
  };
  auto c = assign(centers);
  for (std::size_t k = 0; k < centers.size(); ++k) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < n; ++i) {
      if (c[i] == k) members.push_back(i);
    }
    std::size_t best = members.front();
    double best_sum = -std::numeric_limits<double>::infinity();
    for (auto j : members) {
      double sum = 0.0;
      for (auto i : members) sum += s(i, j);
      if (sum > best_sum) {
        best_sum = sum;
        best = j;
      }
    }
    centers[k] = best;
  }
  std::sort(centers.begin(), centers.end());
  centers.erase(std::unique(centers.begin(), centers.end()), centers.end());
  c = assign(centers);

  // Relabel by first appearance.
  AffinityResult result;
  result.converged = converged;
  result.iterations = it;
  std::map<std::size_t, std::size_t> relabel;
  for (std::size_t i = 0; i < n; ++i) {
    auto [pos, inserted] = relabel.emplace(c[i], result.exemplars.size());
    if (inserted) result.exemplars.push_back(centers[c[i]]);
    result.labels.push_back(pos->second);
  }
  return result;
}

std::size_t SemanticFields::cluster_of(std::string_view lemma) const {
  for (std::size_t k = 0; k < clusters.size(); ++k) {
    if (std::find(clusters[k].begin(), clusters[k].end(), lemma) != clusters[k].end()) return k;
  }
  return clusters.size();
}

SemanticFields cluster_poem(const Poem& poem, const EmbeddingStore& store,
                            const AffinityOptions& options) {
  SemanticFields fields;
  std::vector<std::string> items;
  std::vector<std::span<const double>> vectors;
  for (auto& lemma : content_lemmas(poem)) {
    if (auto v = store.vector(lemma)) {
      items.push_back(std::move(lemma));
      vectors.push_back(*v);
    } else {
      fields.out_of_vocabulary.push_back(std::move(lemma));
    }
  }
  if (items.empty()) return fields;

  const auto n = items.size();
  SquareMatrix sim(n);
  for (std::size_t i = 0; i < n; ++i) {
    sim(i, i) = cosine_similarity(vectors[i], vectors[i]);
    for (std::size_t j = i + 1; j < n; ++j) {
      sim(i, j) = sim(j, i) = cosine_similarity(vectors[i], vectors[j]);
    }
  }
  const auto ap = affinity_propagation(sim, median_off_diagonal(sim), options);
  fields.converged = ap.converged;

  const auto k = ap.cluster_count();
  fields.clusters.assign(k, {});
  fields.centroids.assign(k, std::vector<double>(store.dimension(), 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    const auto label = ap.labels[i];
    fields.clusters[label].push_back(items[i]);
    for (std::size_t d = 0; d < store.dimension(); ++d) fields.centroids[label][d] += vectors[i][d];
  }
  for (std::size_t c = 0; c < k; ++c) {
    const double size = static_cast<double>(fields.clusters[c].size());
    for (auto& x : fields.centroids[c]) x /= size;
    auto topic = store.nearest(fields.centroids[c]);
    fields.topics.push_back(topic ? topic->word : fields.clusters[c].front());
  }
  fields.distances = SquareMatrix(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      const double d = 1.0 - cosine_similarity(fields.centroids[i], fields.centroids[j]);
      fields.distances(i, j) = fields.distances(j, i) = std::clamp(d, 0.0, 2.0);
    }
  }
  return fields;
}

SemanticAesthetics semantic_aesthetics(const SemanticFields& fields) {
  SemanticAesthetics out;
  out.n_clusters = fields.clusters.size();
  const auto k = out.n_clusters;
  if (k < 2) return out;
  double sum = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      sum += fields.distances(i, j);
      out.max_distance = std::max(out.max_distance, fields.distances(i, j));
    }
  }
  out.avg_distance = sum / static_cast<double>(k * (k - 1) / 2);
  return out;
}

}  // namespace runo
