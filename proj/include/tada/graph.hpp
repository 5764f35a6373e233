#pragma once

#include "tada/types.hpp"

#include <span>
#include <utility>
#include <vector>

namespace tada {

/// Undirected simple graph in compressed adjacency form. Neighbor lists are
/// sorted ascending, free of duplicates and self-loops, and stored in both
/// directions, so offsets[n] == 2m and degree(i) == offsets[i+1] - offsets[i].
///
/// Immutable after construction; concurrent reads are safe.
class Graph {
 public:
  Graph() = default;

  Index num_nodes() const { return n_; }
  Index num_edges() const { return m_; }
  Index degree(Index v) const { return degrees_[static_cast<std::size_t>(v)]; }

  std::span<const Index> neighbors(Index v) const {
    const auto b = static_cast<std::size_t>(offsets_[static_cast<std::size_t>(v)]);
    const auto e = static_cast<std::size_t>(offsets_[static_cast<std::size_t>(v) + 1]);
    return {neighbors_.data() + b, e - b};
  }

  /// Undirected edge ids parallel to neighbors(v).
  std::span<const Index> incident_edges(Index v) const {
    const auto b = static_cast<std::size_t>(offsets_[static_cast<std::size_t>(v)]);
    const auto e = static_cast<std::size_t>(offsets_[static_cast<std::size_t>(v) + 1]);
    return {slot_edge_.data() + b, e - b};
  }

  /// Endpoints of edge `e`. Edges are numbered in lexicographic
  /// (min endpoint, max endpoint) order; that position is the edge id used
  /// everywhere (centrality ranking, weights, removal manifests).
  std::pair<Index, Index> edge(Index e) const {
    return {edge_u_[static_cast<std::size_t>(e)], edge_v_[static_cast<std::size_t>(e)]};
  }

  const std::vector<Index>& offsets() const { return offsets_; }
  const std::vector<Index>& neighbor_array() const { return neighbors_; }
  const std::vector<Index>& degrees() const { return degrees_; }

  struct BuildStats {
    std::size_t self_loops_dropped = 0;
    std::size_t duplicates_dropped = 0;
  };

  /// Builds the compressed form from an arbitrary list of endpoint pairs.
  /// Self-loops and duplicate edges (in either orientation) are dropped and
  /// counted in `stats`. Endpoints must lie in [0, n).
  static Graph from_edges(Index n, std::vector<std::pair<Index, Index>> edges,
                          BuildStats* stats = nullptr);

 private:
  Index n_ = 0;
  Index m_ = 0;
  std::vector<Index> offsets_;    // n+1
  std::vector<Index> neighbors_;  // 2m
  std::vector<Index> slot_edge_;  // 2m, undirected edge id per adjacency slot
  std::vector<Index> degrees_;    // n
  std::vector<Index> edge_u_;     // m
  std::vector<Index> edge_v_;     // m
};

/// Edge-reweighted graph: per-edge weights in [eps, 1] indexed by edge id,
/// plus per-node weighted degrees d_w(v) = sum of incident edge weights.
struct WeightedGraph {
  Graph base;
  Vector edge_weights;
  Vector weighted_degrees;
};

/// Recomputes weighted degrees from base + edge_weights.
Vector weighted_degrees_of(const Graph& g, const Vector& edge_weights);

}  // namespace tada
