#pragma once

#include "tada/count_sketch.hpp"
#include "tada/rwr_sketch.hpp"

#include <string>

namespace tada {

/// Hybrid sketched adjacency A' = A R^T + beta * A S^T (n x k, dense).
/// Deterministic given (graph, k, seed, beta, walk steps, alpha, |C|).
struct SketchedAdjacency {
  Matrix values;
  Index k = 0;
  double beta = 0.0;

  struct Provenance {
    std::uint64_t seed = 0;
    Index k = 0;
    double beta = 0.0;
    double alpha = 0.5;
    Index walk_steps = 0;
    Index candidate_set_size = 0;
  } provenance;
};

SketchedAdjacency hybrid_sketch(const Graph& g, const CountSketch& cs, const RwrSketch& rs,
                                double beta);

/// Sketch-space inner product A'_i . A'_j; with i == j this is the degree
/// estimate |A'_i|^2. Only meaningful for the pure count-sketch (beta == 0).
double estimate_common_neighbors(const SketchedAdjacency& a, Index i, Index j);

/// Binary matrix container plus a key=value sidecar recording
/// {k, beta, alpha, T, c_size, seed}.
void save_sketched_adjacency(const SketchedAdjacency& a, const std::string& matrix_path,
                             const std::string& sidecar_path);
SketchedAdjacency load_sketched_adjacency(const std::string& matrix_path,
                                          const std::string& sidecar_path);

}  // namespace tada
