#include "tada/rwr_sketch.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace tada {

RowMajorMatrix rwr_scores(const Graph& g, std::span<const Index> sources, Index steps,
                          double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("rwr_scores: alpha must lie in (0,1)");
  if (steps < 0) throw std::invalid_argument("rwr_scores: steps must be >= 0");
  const Index n = g.num_nodes();
  const Index c = static_cast<Index>(sources.size());

  RowMajorMatrix restart = RowMajorMatrix::Zero(n, c);
  for (Index j = 0; j < c; ++j) restart(sources[static_cast<std::size_t>(j)], j) = 1.0;

  RowMajorMatrix scores = (1.0 - alpha) * restart;
  RowMajorMatrix next(n, c);
  for (Index t = 0; t < steps; ++t) {
    // next = alpha * P * scores + (1 - alpha) * restart, with zero rows for
    // zero-degree nodes.
    for (Index i = 0; i < n; ++i) {
      auto row = next.row(i);
      row.setZero();
      const Index d = g.degree(i);
      if (d > 0) {
        for (Index nb : g.neighbors(i)) row += scores.row(nb);
        row *= alpha / static_cast<double>(d);
      }
    }
    next += (1.0 - alpha) * restart;
    scores.swap(next);
  }
  return scores;
}

RwrSketch build_rwr_sketch(const Graph& g, Index k, Index c_size, Index steps, double alpha,
                           std::uint64_t seed) {
  const Index n = g.num_nodes();
  if (k < 1) throw std::invalid_argument("build_rwr_sketch: k must be >= 1");
  if (k > c_size) throw std::invalid_argument("build_rwr_sketch: k exceeds candidate set size");
  if (c_size > n) throw std::invalid_argument("build_rwr_sketch: candidate set exceeds node count");

  // Candidates: top c_size by degree, ties toward the smaller id.
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Index a, Index b) { return g.degree(a) > g.degree(b); });
  std::vector<Index> candidates(order.begin(), order.begin() + c_size);

  const RowMajorMatrix scores = rwr_scores(g, candidates, steps, alpha);

  // Centroid centrality = total score mass per candidate column. The uniform
  // 1/n factor cannot change the ranking and is dropped.
  Vector mass = scores.colwise().sum();
  std::vector<Index> cols(static_cast<std::size_t>(c_size));
  std::iota(cols.begin(), cols.end(), Index{0});
  std::sort(cols.begin(), cols.end(), [&](Index a, Index b) {
    if (mass[a] != mass[b]) return mass[a] > mass[b];
    return candidates[static_cast<std::size_t>(a)] < candidates[static_cast<std::size_t>(b)];
  });

  RwrSketch s;
  s.k = k;
  s.candidate_set_size = c_size;
  s.alpha = alpha;
  s.walk_steps = steps;
  s.seed = seed;
  s.centroids.resize(static_cast<std::size_t>(k));
  for (Index r = 0; r < k; ++r)
    s.centroids[static_cast<std::size_t>(r)] =
        candidates[static_cast<std::size_t>(cols[static_cast<std::size_t>(r)])];

  s.assignment.resize(static_cast<std::size_t>(n));
  std::vector<Index> slot_count(static_cast<std::size_t>(k), 0);
  for (Index i = 0; i < n; ++i) {
    Index best = -1;
    double best_score = 0.0;
    for (Index r = 0; r < k; ++r) {
      const double v = scores(i, cols[static_cast<std::size_t>(r)]);
      if (v <= 0.0) continue;
      const bool wins =
          v > best_score ||
          (v == best_score && best >= 0 &&
           s.centroids[static_cast<std::size_t>(r)] < s.centroids[static_cast<std::size_t>(best)]);
      if (best < 0 || wins) {
        best = r;
        best_score = v;
      }
    }
    if (best < 0) {
      // No centroid is reachable; park the node in slot 0 so every column of
      // the operator keeps exactly one entry.
      best = 0;
      ++s.unreachable_nodes;
    }
    s.assignment[static_cast<std::size_t>(i)] = best;
    ++slot_count[static_cast<std::size_t>(best)];
  }

  s.row_norm.resize(k);
  for (Index r = 0; r < k; ++r)
    s.row_norm[r] = std::sqrt(static_cast<double>(slot_count[static_cast<std::size_t>(r)]));
  return s;
}

Matrix apply_rwr_sketch(const Graph& g, const RwrSketch& s) {
  if (static_cast<Index>(s.assignment.size()) != g.num_nodes())
    throw std::invalid_argument("apply_rwr_sketch: sketch built for different node count");
  Matrix out = Matrix::Zero(g.num_nodes(), s.k);
  for (Index i = 0; i < g.num_nodes(); ++i)
    for (Index j : g.neighbors(i)) out(i, s.assignment[static_cast<std::size_t>(j)]) += 1.0;
  for (Index r = 0; r < s.k; ++r)
    if (s.row_norm[r] > 0.0) out.col(r) /= s.row_norm[r];
  return out;
}

}  // namespace tada
