#pragma once

#include "tada/graph.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace tada {

/// Structure-aware sketching operator built from truncated random-walk-with-
/// restart scores: each node is assigned to exactly one of k centroid rows,
/// and rows are L2-normalized (row_norm[r] = sqrt(#assigned) before
/// normalization, 0 for empty rows).
struct RwrSketch {
  Index k = 0;
  std::vector<Index> assignment;  // node -> centroid slot in [0,k)
  Vector row_norm;                // per slot, pre-normalization L2 norm
  std::vector<Index> centroids;   // node ids, descending centrality
  Index candidate_set_size = 0;
  Index unreachable_nodes = 0;  // zero score to every centroid; defaulted to slot 0
  double alpha = 0.5;
  Index walk_steps = 0;
  std::uint64_t seed = 0;  // provenance only; construction is deterministic
};

/// Truncated restart-walk score matrix (n x |sources|): entry (i, j) is the
/// score of sources[j] w.r.t. node i after `steps` applications of the
/// recurrence S <- alpha * P * S + (1 - alpha) * S0 starting from
/// S = (1 - alpha) * S0. Rows of nodes unreachable from every source are zero.
RowMajorMatrix rwr_scores(const Graph& g, std::span<const Index> sources, Index steps,
                          double alpha);

/// Candidate selection, centroid ranking, and node assignment. Candidates are
/// the c_size highest-degree nodes; centroids the k candidates with largest
/// total score mass; each node joins the centroid with its largest score. All
/// ties break toward the smaller node id.
RwrSketch build_rwr_sketch(const Graph& g, Index k, Index c_size, Index steps, double alpha,
                           std::uint64_t seed = 0);

/// Adjacency sketched through the operator: out[i][r] sums 1/row_norm[r] over
/// neighbors of i assigned to slot r. O(m + nk).
Matrix apply_rwr_sketch(const Graph& g, const RwrSketch& s);

}  // namespace tada
