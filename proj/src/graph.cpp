#include "tada/graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace tada {

Graph Graph::from_edges(Index n, std::vector<std::pair<Index, Index>> edges,
                        BuildStats* stats) {
  if (n < 0) throw std::invalid_argument("from_edges: negative node count");
  BuildStats local;

  std::vector<std::pair<Index, Index>> canon;
  canon.reserve(edges.size());
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw std::invalid_argument("from_edges: endpoint out of range");
    if (u == v) {
      ++local.self_loops_dropped;
      continue;
    }
    canon.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(canon.begin(), canon.end());
  const auto last = std::unique(canon.begin(), canon.end());
  local.duplicates_dropped = static_cast<std::size_t>(canon.end() - last);
  canon.erase(last, canon.end());

  Graph g;
  g.n_ = n;
  g.m_ = static_cast<Index>(canon.size());
  g.degrees_.assign(static_cast<std::size_t>(n), 0);
  g.edge_u_.resize(canon.size());
  g.edge_v_.resize(canon.size());
  for (std::size_t e = 0; e < canon.size(); ++e) {
    g.edge_u_[e] = canon[e].first;
    g.edge_v_[e] = canon[e].second;
    ++g.degrees_[static_cast<std::size_t>(canon[e].first)];
    ++g.degrees_[static_cast<std::size_t>(canon[e].second)];
  }

  g.offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
  for (Index v = 0; v < n; ++v)
    g.offsets_[static_cast<std::size_t>(v) + 1] =
        g.offsets_[static_cast<std::size_t>(v)] + g.degrees_[static_cast<std::size_t>(v)];

  // Scatter (neighbor, edge id) into the two endpoint lists, then sort each
  // list by neighbor to restore ascending order.
  g.neighbors_.resize(static_cast<std::size_t>(2 * g.m_));
  g.slot_edge_.resize(static_cast<std::size_t>(2 * g.m_));
  std::vector<Index> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  auto place = [&](Index at, Index nb, Index e) {
    const auto slot = static_cast<std::size_t>(cursor[static_cast<std::size_t>(at)]++);
    g.neighbors_[slot] = nb;
    g.slot_edge_[slot] = e;
  };
  for (std::size_t e = 0; e < canon.size(); ++e) {
    place(canon[e].first, canon[e].second, static_cast<Index>(e));
    place(canon[e].second, canon[e].first, static_cast<Index>(e));
  }
  for (Index v = 0; v < n; ++v) {
    const auto b = static_cast<std::size_t>(g.offsets_[static_cast<std::size_t>(v)]);
    const auto e = static_cast<std::size_t>(g.offsets_[static_cast<std::size_t>(v) + 1]);
    std::vector<std::pair<Index, Index>> tmp;
    tmp.reserve(e - b);
    for (std::size_t s = b; s < e; ++s) tmp.emplace_back(g.neighbors_[s], g.slot_edge_[s]);
    std::sort(tmp.begin(), tmp.end());
    for (std::size_t s = b; s < e; ++s) {
      g.neighbors_[s] = tmp[s - b].first;
      g.slot_edge_[s] = tmp[s - b].second;
    }
  }

  if (stats) *stats = local;
  return g;
}

Vector weighted_degrees_of(const Graph& g, const Vector& edge_weights) {
  if (edge_weights.size() != g.num_edges())
    throw std::invalid_argument("weighted_degrees_of: weight count != edge count");
  Vector d = Vector::Zero(g.num_nodes());
  for (Index e = 0; e < g.num_edges(); ++e) {
    const auto [u, v] = g.edge(e);
    d[u] += edge_weights[e];
    d[v] += edge_weights[e];
  }
  return d;
}

}  // namespace tada
