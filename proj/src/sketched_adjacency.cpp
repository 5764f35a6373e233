#include "tada/sketched_adjacency.hpp"

#include "tada/matrix_io.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <stdexcept>

namespace tada {

SketchedAdjacency hybrid_sketch(const Graph& g, const CountSketch& cs, const RwrSketch& rs,
                                double beta) {
  if (cs.k != rs.k) throw std::invalid_argument("hybrid_sketch: sketch dimensions differ");
  if (beta < 0.0) throw std::invalid_argument("hybrid_sketch: beta must be >= 0");
  SketchedAdjacency a;
  a.k = cs.k;
  a.beta = beta;
  a.values = apply_count_sketch(g, cs);
  if (beta != 0.0) a.values.noalias() += beta * apply_rwr_sketch(g, rs);
  a.provenance = {cs.seed, cs.k, beta, rs.alpha, rs.walk_steps, rs.candidate_set_size};
  return a;
}

double estimate_common_neighbors(const SketchedAdjacency& a, Index i, Index j) {
  if (a.beta != 0.0)
    throw std::invalid_argument(
        "estimate_common_neighbors: requires a pure count-sketch (beta == 0)");
  if (i < 0 || j < 0 || i >= a.values.rows() || j >= a.values.rows())
    throw std::invalid_argument("estimate_common_neighbors: node id out of range");
  return a.values.row(i).dot(a.values.row(j));
}

void save_sketched_adjacency(const SketchedAdjacency& a, const std::string& matrix_path,
                             const std::string& sidecar_path) {
  save_dense_matrix(a.values, matrix_path);
  std::ofstream meta(sidecar_path);
  if (!meta) throw DataError("cannot write file: " + sidecar_path);
  meta.precision(17);
  meta << "k=" << a.provenance.k << '\n'
       << "beta=" << a.provenance.beta << '\n'
       << "alpha=" << a.provenance.alpha << '\n'
       << "T=" << a.provenance.walk_steps << '\n'
       << "c_size=" << a.provenance.candidate_set_size << '\n'
       << "seed=" << a.provenance.seed << '\n';
}

SketchedAdjacency load_sketched_adjacency(const std::string& matrix_path,
                                          const std::string& sidecar_path) {
  SketchedAdjacency a;
  a.values = load_dense_matrix(matrix_path);
  std::ifstream meta(sidecar_path);
  if (!meta) throw DataError("cannot open file: " + sidecar_path);
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(meta, line)) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  for (const char* key : {"k", "beta", "alpha", "T", "c_size", "seed"})
    if (!kv.count(key)) throw DataError("sidecar missing key '" + std::string(key) + "'");
  a.provenance.k = std::stoll(kv["k"]);
  a.provenance.beta = std::stod(kv["beta"]);
  a.provenance.alpha = std::stod(kv["alpha"]);
  a.provenance.walk_steps = std::stoll(kv["T"]);
  a.provenance.candidate_set_size = std::stoll(kv["c_size"]);
  a.provenance.seed = std::stoull(kv["seed"]);
  a.k = a.provenance.k;
  a.beta = a.provenance.beta;
  if (a.values.cols() != a.k) throw DataError("sidecar k disagrees with matrix shape");
  return a;
}

}  // namespace tada
