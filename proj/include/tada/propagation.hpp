#pragma once

#include "tada/graph.hpp"

#include <cmath>
#include <stdexcept>

namespace tada {

/// result = D^{-1} A * M, computed in O(m * cols). Rows of zero-degree nodes
/// are all-zero by convention, so an isolated node's features stay zero under
/// propagation.
template <typename Derived>
Matrix transition_multiply(const Graph& g, const Eigen::MatrixBase<Derived>& m_in) {
  if (m_in.rows() != g.num_nodes())
    throw std::invalid_argument("transition_multiply: matrix has wrong row count");
  const auto& m = m_in.derived();
  Matrix out = Matrix::Zero(g.num_nodes(), m.cols());
  for (Index i = 0; i < g.num_nodes(); ++i) {
    const Index d = g.degree(i);
    if (d == 0) continue;
    auto row = out.row(i);
    for (Index j : g.neighbors(i)) row += m.row(j);
    row /= static_cast<double>(d);
  }
  return out;
}

/// result = D^{-1/2} A D^{-1/2} * M; zero-degree rows stay zero.
template <typename Derived>
Matrix norm_adj_multiply(const Graph& g, const Eigen::MatrixBase<Derived>& m_in) {
  if (m_in.rows() != g.num_nodes())
    throw std::invalid_argument("norm_adj_multiply: matrix has wrong row count");
  const auto& m = m_in.derived();
  Vector inv_sqrt(g.num_nodes());
  for (Index i = 0; i < g.num_nodes(); ++i) {
    const Index d = g.degree(i);
    inv_sqrt[i] = d > 0 ? 1.0 / std::sqrt(static_cast<double>(d)) : 0.0;
  }
  Matrix out = Matrix::Zero(g.num_nodes(), m.cols());
  for (Index i = 0; i < g.num_nodes(); ++i) {
    if (g.degree(i) == 0) continue;
    auto row = out.row(i);
    for (Index j : g.neighbors(i)) row += inv_sqrt[j] * m.row(j);
    row *= inv_sqrt[i];
  }
  return out;
}

/// Weighted variant: D_w^{-1/2} A_w D_w^{-1/2} * M with cosine edge weights
/// and weighted degrees.
template <typename Derived>
Matrix norm_adj_multiply(const WeightedGraph& wg, const Eigen::MatrixBase<Derived>& m_in) {
  const Graph& g = wg.base;
  if (m_in.rows() != g.num_nodes())
    throw std::invalid_argument("norm_adj_multiply: matrix has wrong row count");
  const auto& m = m_in.derived();
  Vector inv_sqrt(g.num_nodes());
  for (Index i = 0; i < g.num_nodes(); ++i) {
    const double d = wg.weighted_degrees[i];
    inv_sqrt[i] = d > 0.0 ? 1.0 / std::sqrt(d) : 0.0;
  }
  Matrix out = Matrix::Zero(g.num_nodes(), m.cols());
  for (Index i = 0; i < g.num_nodes(); ++i) {
    if (g.degree(i) == 0) continue;
    auto row = out.row(i);
    const auto nbrs = g.neighbors(i);
    const auto eids = g.incident_edges(i);
    for (std::size_t s = 0; s < nbrs.size(); ++s)
      row += wg.edge_weights[eids[s]] * inv_sqrt[nbrs[s]] * m.row(nbrs[s]);
    row *= inv_sqrt[i];
  }
  return out;
}

/// M propagated `layers` times through the symmetric-normalized adjacency.
template <typename G>
Matrix norm_adj_power_multiply(const G& g, Matrix m, Index layers) {
  for (Index l = 0; l < layers; ++l) m = norm_adj_multiply(g, m);
  return m;
}

}  // namespace tada
