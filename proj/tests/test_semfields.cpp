#include <doctest.h>

#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "partition.hpp"
#include "runo/semfields.hpp"
#include "support.hpp"

using namespace runo;
using testing::Partition;

namespace {

EmbeddingStore store_from(const std::string& s) {
  std::istringstream in(s);
  return EmbeddingStore::read(in);
}

// Exhaustive exemplar search: maximize sum of similarities to assigned
// exemplars plus preference per exemplar.
Partition best_exemplar_partition(const SquareMatrix& s, double preference) {
  const std::size_t n = s.size();
  double best = -std::numeric_limits<double>::infinity();
  Partition best_p;
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    double score = 0.0;
    std::vector<std::size_t> label(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1) {
        score += preference;
        label[i] = i;
        continue;
      }
      double top = -std::numeric_limits<double>::infinity();
      for (std::size_t e = 0; e < n; ++e) {
        if ((mask >> e & 1) && s(i, e) > top) {
          top = s(i, e);
          label[i] = e;
        }
      }
      score += top;
    }
    if (score > best) {
      best = score;
      best_p = testing::partition_of(label);
      best_p.erase(std::set<std::size_t>{});
    }
  }
  return best_p;
}

std::string show(const Partition& p) {
  std::string out;
  for (const auto& g : p) {
    out += '{';
    for (auto i : g) out += std::to_string(i) + ' ';
    out += '}';
  }
  return out;
}

SquareMatrix grouped_similarity(const std::vector<std::size_t>& sizes, Rng& rng) {
  std::vector<std::array<double, 2>> pts;
  double cx = 0.0;
  for (auto size : sizes) {
    const double cy = 8.0 * rng.uniform();
    for (std::size_t i = 0; i < size; ++i) pts.push_back({cx + 0.6 * rng.uniform(), cy + 0.6 * rng.uniform()});
    cx += 12.0;
  }
  SquareMatrix s(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = 0; j < pts.size(); ++j) {
      const double dx = pts[i][0] - pts[j][0], dy = pts[i][1] - pts[j][1];
      s(i, j) = -(dx * dx + dy * dy);
    }
  }
  return s;
}

}  // namespace

TEST_CASE("affinity propagation degenerate inputs") {
  SquareMatrix one(1, 1.0);
  const auto r1 = affinity_propagation(one, 0.0);
  CHECK(r1.cluster_count() == 1);
  CHECK(r1.labels == std::vector<std::size_t>{0});

  SquareMatrix same(5, 1.0);
  CHECK(affinity_propagation(same, median_off_diagonal(same)).cluster_count() == 1);
}

TEST_CASE("affinity propagation separates two blobs") {
  Rng rng(11);
  const auto s = testing::blob_similarity(10, rng);
  const auto r = affinity_propagation(s, median_off_diagonal(s));
  CHECK(r.converged);
  REQUIRE(r.cluster_count() == 2);
  std::set<std::size_t> a, b;
  for (std::size_t i = 0; i < 10; ++i) a.insert(i);
  for (std::size_t i = 10; i < 20; ++i) b.insert(i);
  CHECK(testing::partition_of(r.labels) == Partition{a, b});
}

TEST_CASE("affinity propagation agrees with exhaustive exemplar search for small n") {
  Rng rng(5);
  const std::vector<std::vector<std::size_t>> layouts = {{2, 2}, {3, 3}, {4, 4}, {2, 3, 3}, {3, 2}, {1, 3, 4}};
  for (const auto& layout : layouts) {
    for (int trial = 0; trial < 5; ++trial) {
      const auto s = grouped_similarity(layout, rng);
      const double pref = median_off_diagonal(s);
      // A long stability window lets the messages settle before exemplars are read.
      const auto r = affinity_propagation(s, pref, AffinityOptions{0.9, 5000, 100});
      const auto got = testing::partition_of(r.labels);
      const auto want = best_exemplar_partition(s, pref);
      CHECK_MESSAGE(got == want, show(got) << " vs " << show(want) << " pref " << pref);
    }
  }
}

TEST_CASE("affinity propagation matches reference labels at the default settings") {
  struct Case {
    std::vector<std::array<double, 2>> points;
    std::vector<std::size_t> labels;
  };
  // Labels from an independent implementation with damping 0.9, max_iter 200,
  // a 15-iteration window and the median preference.
  const std::vector<Case> cases = {
    {{{0.66, 7.48}, {1.05, 6.33}, {13.14, 8.98}, {12.19, 8.48}},
     {0, 1, 2, 3}},
    {{{1.39, 3.94}, {1.23, 3.64}, {0.34, 3.8}, {13.24, 1.46}, {13.14, 1.04}, {13.46, 1.85}},
     {0, 0, 0, 1, 1, 1}},
    {{{0.29, 6.93}, {0.07, 6.46}, {1.02, 7.35}, {1.45, 6.72}, {12.7, 3.24}, {12.19, 3.67}, {12.34, 3.96}, {12.66, 4.21}},
     {0, 0, 0, 0, 1, 1, 1, 1}},
    {{{0.47, 6.85}, {1.21, 6.18}, {13.02, 2.52}, {12.3, 2.32}, {13.18, 3.31}, {25.17, 6.33}, {24.85, 5.85}, {24.17, 6.64}},
     {0, 0, 1, 1, 1, 1, 1, 1}},
    {{{0.85, 4.92}, {0.95, 4.6}, {0.84, 4.23}, {0.05, 4.43}, {0.32, 4.38}, {12.35, 6.92}, {12.42, 7.27}, {12.99, 7.67}, {13.18, 7.83}, {12.61, 8.05}},
     {0, 0, 0, 0, 0, 1, 1, 1, 1, 1}},
    {{{0.03, 1.48}, {1.08, 2.03}, {0.24, 2.09}, {13.04, 1.89}, {12.57, 1.67}, {12.95, 1.76}, {12.13, 1.4}, {25.36, 8.75}, {24.4, 9.15}, {25.17, 8.78}, {24.67, 8.11}, {24.14, 9.05}},
     {0, 0, 0, 1, 1, 1, 1, 2, 2, 2, 2, 2}},
    {{{0.3, 4.11}, {0.87, 3.92}, {1.28, 4.79}, {1.08, 4.3}, {0.94, 4.53}, {0.97, 3.78}},
     {0, 0, 1, 1, 1, 0}},
    {{{0.06, 4.07}, {0.49, 3.55}, {0.16, 4.21}, {0.26, 4.72}, {12.52, 5.54}, {12.03, 6.09}, {25.17, 3.98}, {24.73, 4.6}, {25.41, 4.72}},
     {0, 0, 0, 0, 0, 0, 1, 1, 1}}};
  for (const auto& c : cases) {
    const std::size_t n = c.points.size();
    SquareMatrix s(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const double dx = c.points[i][0] - c.points[j][0], dy = c.points[i][1] - c.points[j][1];
        s(i, j) = -(dx * dx + dy * dy);
      }
    }
    const auto r = affinity_propagation(s, median_off_diagonal(s));
    const auto got = testing::partition_of(r.labels);
    const auto want = testing::partition_of(c.labels);
    CHECK_MESSAGE(got == want, show(got) << " vs " << show(want));
  }
}

TEST_CASE("affinity propagation is permutation invariant") {
  Rng rng(21);
  const auto s = testing::blob_similarity(10, rng);
  const auto base = testing::partition_of(affinity_propagation(s, median_off_diagonal(s)).labels);
  std::vector<std::size_t> perm(s.size());
  std::iota(perm.begin(), perm.end(), 0);
  for (int k = 0; k < 20; ++k) {
    rng.shuffle(std::span<std::size_t>(perm));
    const auto ps = testing::permuted(s, perm);
    const auto r = affinity_propagation(ps, median_off_diagonal(ps));
    CHECK(testing::unpermute(testing::partition_of(r.labels), perm) == base);
  }
}

TEST_CASE("median of off-diagonal entries") {
  SquareMatrix m(3, 0.0);
  m(0, 1) = m(1, 0) = 1;
  m(0, 2) = m(2, 0) = 2;
  m(1, 2) = m(2, 1) = 4;
  CHECK(median_off_diagonal(m) == 2.0);
  CHECK(median_off_diagonal(SquareMatrix(1)) == 0.0);
}

TEST_CASE("cluster_poem") {
  const auto store = store_from("meri 1 0\nmetsä 0 1\nranta 0.2 0.9797958971132712\n");

  const auto single = cluster_poem(testing::poem({"meri/NOUN meri/NOUN"}), store);
  REQUIRE(single.clusters.size() == 1);
  CHECK(single.topics[0] == "meri");

  const auto ortho = cluster_poem(testing::poem({"meri/NOUN metsä/NOUN"}), store);
  REQUIRE(ortho.clusters.size() == 2);
  CHECK(ortho.distances(0, 1) == doctest::Approx(1.0));
  CHECK(ortho.distances(0, 0) == 0.0);

  const auto near = cluster_poem(testing::poem({"meri/NOUN ranta/NOUN"}), store);
  REQUIRE(near.clusters.size() == 2);
  const auto sa = semantic_aesthetics(near);
  CHECK(sa.n_clusters == 2);
  CHECK(sa.avg_distance == doctest::Approx(0.8));
  CHECK(sa.max_distance == doctest::Approx(0.8));

  const auto oov = cluster_poem(testing::poem({"meri/NOUN tuntematon/NOUN ja/CCONJ"}), store);
  CHECK(oov.out_of_vocabulary == std::vector<std::string>{"tuntematon"});
  CHECK(oov.clusters.size() == 1);

  CHECK(cluster_poem(testing::poem({"outo/ADJ"}), store).empty());
}

TEST_CASE("semantic aesthetics by hand") {
  SemanticFields f;
  f.clusters = {{"a"}};
  f.distances = SquareMatrix(1);
  const auto one = semantic_aesthetics(f);
  CHECK(one.n_clusters == 1);
  CHECK(one.avg_distance == 0.0);
  CHECK(one.max_distance == 0.0);

  f.clusters = {{"a"}, {"b"}, {"c"}};
  f.distances = SquareMatrix(3);
  f.distances(0, 1) = f.distances(1, 0) = 0.2;
  f.distances(0, 2) = f.distances(2, 0) = 0.5;
  f.distances(1, 2) = f.distances(2, 1) = 0.8;
  const auto three = semantic_aesthetics(f);
  CHECK(three.n_clusters == 3);
  CHECK(three.avg_distance == doctest::Approx(0.5));
  CHECK(three.max_distance == doctest::Approx(0.8));
}

TEST_CASE("toy poems: fields partition the embeddable lemmas, scale does not matter") {
  const auto& res = testing::toy_resources();
  EmbeddingStore doubled;
  for (const auto& w : res.embeddings.words()) {
    auto v = *res.embeddings.vector(w);
    std::vector<double> d(v.begin(), v.end());
    for (auto& x : d) x *= 2.0;
    doubled.add(w, d);
  }
  for (const auto& p : testing::toy_stanzas()) {
    const auto fields = cluster_poem(p, res.embeddings);
    std::multiset<std::string> clustered;
    for (const auto& c : fields.clusters) clustered.insert(c.begin(), c.end());
    std::multiset<std::string> expected;
    for (const auto& l : content_lemmas(p)) {
      if (res.embeddings.contains(l)) expected.insert(l);
    }
    CHECK(clustered == expected);
    CHECK(fields.topics.size() == fields.clusters.size());
    const auto sa = semantic_aesthetics(fields);
    CHECK(sa.avg_distance <= sa.max_distance + 1e-12);
    CHECK(sa.max_distance <= 2.0);
    CHECK(cluster_poem(p, doubled).clusters == fields.clusters);
  }
}
