#pragma once

#include "tada/graph.hpp"

#include <string>
#include <vector>

namespace tada {

/// Lower clamp for cosine edge weights. Non-positive similarities would break
/// the weighted degrees and centralities downstream, so weights live in
/// [kWeightFloor, 1].
inline constexpr double kWeightFloor = 1e-8;

/// w(e_ij) = clamp(cos(H0_i, H0_j), floor, 1); zero-norm rows get the floor.
/// O(m * h).
WeightedGraph reweight_edges(const Graph& g, const Matrix& h0);

/// C_w(e_ij) = w(e_ij) * (1/d_w(i) + 1/d_w(j)), plus the ascending
/// (value, edge id) ranking.
struct EdgeCentrality {
  Vector values;               // per edge id
  std::vector<Index> ranking;  // edge ids, ascending by (value, id)
};

EdgeCentrality edge_centralities(const WeightedGraph& wg);

struct RemovedEdge {
  Index u, v;
  double weight;
  double centrality;
};

/// Survivors keep their cosine weights; exactly floor(m * rho) edges go.
struct SparsifiedGraph {
  WeightedGraph graph;              // surviving edges only, weighted degrees recomputed
  std::vector<RemovedEdge> removed; // ascending (centrality, edge id)
  double rho = 0.0;
  Index edges_before = 0;
  Index isolated_nodes = 0;
};

/// Removes the floor(m * rho) edges lowest in the (C_w, edge id) order via a
/// partial selection; never rebuilds weights. rho must lie in [0, 1).
SparsifiedGraph sparsify(const WeightedGraph& wg, double rho);

/// "u\tv\tw" text (17 significant digits) plus a JSON stats block.
void save_sparsified(const SparsifiedGraph& sg, const std::string& edges_path,
                     const std::string& stats_path);
std::string sparsified_stats_json(const SparsifiedGraph& sg);

}  // namespace tada
