#include "tada/sparsifier.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <numeric>
#include <stdexcept>

namespace tada {

WeightedGraph reweight_edges(const Graph& g, const Matrix& h0) {
  if (h0.rows() != g.num_nodes())
    throw std::invalid_argument("reweight_edges: feature rows != node count");
  if (!h0.allFinite()) throw std::invalid_argument("reweight_edges: non-finite features");

  Vector norms(g.num_nodes());
  for (Index i = 0; i < g.num_nodes(); ++i) norms[i] = h0.row(i).norm();

  WeightedGraph wg;
  wg.base = g;
  wg.edge_weights.resize(g.num_edges());
  for (Index e = 0; e < g.num_edges(); ++e) {
    const auto [u, v] = g.edge(e);
    double cosine = 0.0;
    if (norms[u] > 0.0 && norms[v] > 0.0)
      cosine = h0.row(u).dot(h0.row(v)) / (norms[u] * norms[v]);
    wg.edge_weights[e] = std::clamp(cosine, kWeightFloor, 1.0);
  }
  wg.weighted_degrees = weighted_degrees_of(wg.base, wg.edge_weights);
  return wg;
}

EdgeCentrality edge_centralities(const WeightedGraph& wg) {
  const Graph& g = wg.base;
  EdgeCentrality c;
  c.values.resize(g.num_edges());
  for (Index e = 0; e < g.num_edges(); ++e) {
    const auto [u, v] = g.edge(e);
    c.values[e] =
        wg.edge_weights[e] * (1.0 / wg.weighted_degrees[u] + 1.0 / wg.weighted_degrees[v]);
  }
  c.ranking.resize(static_cast<std::size_t>(g.num_edges()));
  std::iota(c.ranking.begin(), c.ranking.end(), Index{0});
  std::sort(c.ranking.begin(), c.ranking.end(), [&](Index a, Index b) {
    if (c.values[a] != c.values[b]) return c.values[a] < c.values[b];
    return a < b;
  });
  return c;
}

SparsifiedGraph sparsify(const WeightedGraph& wg, double rho) {
  if (!(rho >= 0.0 && rho < 1.0)) throw std::invalid_argument("sparsify: rho outside [0,1)");
  const Graph& g = wg.base;
  const Index m = g.num_edges();
  const Index remove_count = static_cast<Index>(std::floor(static_cast<double>(m) * rho));

  const EdgeCentrality cent = edge_centralities(wg);

  // Partial selection of the bottom remove_count edges; O(m + remove_count
  // log remove_count) instead of a full sort.
  std::vector<Index> ids(static_cast<std::size_t>(m));
  std::iota(ids.begin(), ids.end(), Index{0});
  auto lower = [&](Index a, Index b) {
    if (cent.values[a] != cent.values[b]) return cent.values[a] < cent.values[b];
    return a < b;
  };
  if (remove_count > 0 && remove_count < m)
    std::nth_element(ids.begin(), ids.begin() + remove_count, ids.end(), lower);
  std::sort(ids.begin(), ids.begin() + std::min(remove_count, m), lower);

  std::vector<bool> removed_mask(static_cast<std::size_t>(m), false);
  SparsifiedGraph sg;
  sg.rho = rho;
  sg.edges_before = m;
  sg.removed.reserve(static_cast<std::size_t>(remove_count));
  for (Index r = 0; r < remove_count; ++r) {
    const Index e = ids[static_cast<std::size_t>(r)];
    removed_mask[static_cast<std::size_t>(e)] = true;
    const auto [u, v] = g.edge(e);
    sg.removed.push_back({u, v, wg.edge_weights[e], cent.values[e]});
  }

  std::vector<std::pair<Index, Index>> survivors;
  std::vector<double> weights;
  survivors.reserve(static_cast<std::size_t>(m - remove_count));
  weights.reserve(static_cast<std::size_t>(m - remove_count));
  for (Index e = 0; e < m; ++e) {
    if (removed_mask[static_cast<std::size_t>(e)]) continue;
    survivors.push_back(g.edge(e));
    weights.push_back(wg.edge_weights[e]);
  }

  // Surviving edges are already in (u,v) order, so their new edge ids follow
  // the same sequence and the weight vector carries over directly.
  sg.graph.base = Graph::from_edges(g.num_nodes(), survivors);
  sg.graph.edge_weights =
      Eigen::Map<const Vector>(weights.data(), static_cast<Index>(weights.size()));
  sg.graph.weighted_degrees = weighted_degrees_of(sg.graph.base, sg.graph.edge_weights);

  for (Index v = 0; v < sg.graph.base.num_nodes(); ++v)
    if (sg.graph.base.degree(v) == 0) ++sg.isolated_nodes;
  return sg;
}

std::string sparsified_stats_json(const SparsifiedGraph& sg) {
  nlohmann::json j;
  j["m_before"] = sg.edges_before;
  j["m_removed"] = static_cast<Index>(sg.removed.size());
  j["rho"] = sg.rho;
  j["isolated_nodes"] = sg.isolated_nodes;
  std::array<Index, 10> hist{};
  for (Index e = 0; e < sg.graph.base.num_edges(); ++e) {
    const double w = sg.graph.edge_weights[e];
    const auto bin = std::min<std::size_t>(9, static_cast<std::size_t>(w * 10.0));
    ++hist[bin];
  }
  j["weight_histogram"] = hist;
  return j.dump(2);
}

void save_sparsified(const SparsifiedGraph& sg, const std::string& edges_path,
                     const std::string& stats_path) {
  std::ofstream out(edges_path);
  if (!out) throw DataError("cannot write file: " + edges_path);
  out.precision(17);
  const Graph& g = sg.graph.base;
  for (Index e = 0; e < g.num_edges(); ++e) {
    const auto [u, v] = g.edge(e);
    out << u << '\t' << v << '\t' << sg.graph.edge_weights[e] << '\n';
  }
  std::ofstream stats(stats_path);
  if (!stats) throw DataError("cannot write file: " + stats_path);
  stats << sparsified_stats_json(sg) << '\n';
}

}  // namespace tada
