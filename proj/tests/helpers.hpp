#pragma once

#include "tada/count_sketch.hpp"
#include "tada/graph.hpp"
#include "tada/oracles.hpp"
#include "tada/rng.hpp"
#include "tada/sparsifier.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace testutil {

using tada::Graph;
using tada::Index;
using tada::Matrix;
using tada::Vector;

inline std::string write_temp(const std::string& name, const std::string& contents) {
  const auto path = (std::filesystem::temp_directory_path() / name).string();
  std::ofstream out(path);
  out << contents;
  return path;
}

/// G(n, p) with a dedicated edge stream per seed.
inline Graph gnp(Index n, double p, std::uint64_t seed) {
  tada::rng::SplitMix gen(tada::rng::mix64(seed ^ 0x746573745f676e70ULL));
  std::vector<std::pair<Index, Index>> edges;
  for (Index u = 0; u < n; ++u)
    for (Index v = u + 1; v < n; ++v)
      if (gen.next_unit() < p) edges.emplace_back(u, v);
  return Graph::from_edges(n, std::move(edges));
}

/// Retries seeds until the sample is connected and non-bipartite. A triangle
/// seeded on nodes {0,1,2} keeps the retry count low on sparse settings.
inline Graph random_connected_nonbipartite(Index n, double p, std::uint64_t seed) {
  for (std::uint64_t attempt = 0;; ++attempt) {
    Graph g = gnp(n, p, tada::rng::mix64(seed + attempt * 0x9e37ULL));
    if (tada::oracles::is_connected(g) && !tada::oracles::is_bipartite(g)) return g;
  }
}

/// Independent oracle: |N(i) ∩ N(j)| by sorted-list intersection.
inline Index common_neighbors(const Graph& g, Index i, Index j) {
  const auto a = g.neighbors(i);
  const auto b = g.neighbors(j);
  std::vector<Index> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return static_cast<Index>(out.size());
}

/// Dense k x n count-sketch operator (sign[i] at row hash[i] of column i).
inline Matrix dense_sketch_operator(const tada::CountSketch& cs) {
  const auto n = static_cast<Index>(cs.hash.size());
  Matrix r = Matrix::Zero(cs.k, n);
  for (Index i = 0; i < n; ++i)
    r(cs.hash[static_cast<std::size_t>(i)], i) = cs.sign[static_cast<std::size_t>(i)];
  return r;
}

/// Full stable sort by (centrality, edge id); the bottom slice is the
/// reference removal set.
inline std::set<std::pair<Index, Index>> full_sort_removal(const tada::WeightedGraph& wg,
                                                           double rho) {
  const auto cent = tada::edge_centralities(wg);
  std::vector<Index> ids(static_cast<std::size_t>(wg.base.num_edges()));
  std::iota(ids.begin(), ids.end(), Index{0});
  std::stable_sort(ids.begin(), ids.end(), [&](Index a, Index b) {
    if (cent.values[a] != cent.values[b]) return cent.values[a] < cent.values[b];
    return a < b;
  });
  const auto count = static_cast<std::size_t>(
      std::floor(static_cast<double>(wg.base.num_edges()) * rho));
  std::set<std::pair<Index, Index>> removed;
  for (std::size_t r = 0; r < count; ++r) removed.insert(wg.base.edge(ids[r]));
  return removed;
}

inline std::set<std::pair<Index, Index>> removal_set(const tada::SparsifiedGraph& sg) {
  std::set<std::pair<Index, Index>> out;
  for (const auto& e : sg.removed) out.insert({e.u, e.v});
  return out;
}

/// Random unit vector from the seeded gaussian stream.
inline Vector random_unit_vector(Index n, std::uint64_t seed) {
  tada::rng::SplitMix gen(tada::rng::mix64(seed ^ 0x746573745f756e69ULL));
  Vector w(n);
  for (Index i = 0; i < n; ++i) w[i] = gen.next_gaussian();
  return w / w.norm();
}

inline Matrix random_matrix(Index rows, Index cols, std::uint64_t seed) {
  tada::rng::SplitMix gen(tada::rng::mix64(seed ^ 0x746573745f6d6174ULL));
  Matrix m(rows, cols);
  for (Index r = 0; r < rows; ++r)
    for (Index c = 0; c < cols; ++c) m(r, c) = gen.next_gaussian();
  return m;
}

/// Random edge weights in [0.1, 1] keyed by seed.
inline tada::WeightedGraph random_weighted(const Graph& g, std::uint64_t seed) {
  tada::rng::SplitMix gen(tada::rng::mix64(seed ^ 0x746573745f776774ULL));
  tada::WeightedGraph wg;
  wg.base = g;
  wg.edge_weights.resize(g.num_edges());
  for (Index e = 0; e < g.num_edges(); ++e) wg.edge_weights[e] = 0.1 + 0.9 * gen.next_unit();
  wg.weighted_degrees = tada::weighted_degrees_of(g, wg.edge_weights);
  return wg;
}

inline tada::WeightedGraph unit_weighted(const Graph& g) {
  tada::WeightedGraph wg;
  wg.base = g;
  wg.edge_weights = Vector::Ones(g.num_edges());
  wg.weighted_degrees = tada::weighted_degrees_of(g, wg.edge_weights);
  return wg;
}

inline Graph triangle() { return Graph::from_edges(3, {{0, 1}, {1, 2}, {2, 0}}); }
inline Graph path3() { return Graph::from_edges(3, {{0, 1}, {1, 2}}); }
inline Graph star(Index leaves) {
  std::vector<std::pair<Index, Index>> e;
  for (Index i = 1; i <= leaves; ++i) e.emplace_back(0, i);
  return Graph::from_edges(leaves + 1, std::move(e));
}
inline Graph complete(Index n) {
  std::vector<std::pair<Index, Index>> e;
  for (Index u = 0; u < n; ++u)
    for (Index v = u + 1; v < n; ++v) e.emplace_back(u, v);
  return Graph::from_edges(n, std::move(e));
}

}  // namespace testutil
