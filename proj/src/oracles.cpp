#include "tada/oracles.hpp"

#include "tada/count_sketch.hpp"
#include "tada/rng.hpp"

#include <Eigen/Cholesky>

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <stdexcept>
#include <vector>

namespace tada::oracles {

namespace {

void require_dense_scale(Index n) {
  if (n > kMaxDenseNodes)
    throw std::invalid_argument("oracle restricted to n <= " + std::to_string(kMaxDenseNodes));
}

}  // namespace

Matrix dense_adjacency(const Graph& g) {
  require_dense_scale(g.num_nodes());
  Matrix a = Matrix::Zero(g.num_nodes(), g.num_nodes());
  for (Index e = 0; e < g.num_edges(); ++e) {
    const auto [u, v] = g.edge(e);
    a(u, v) = 1.0;
    a(v, u) = 1.0;
  }
  return a;
}

Matrix dense_adjacency(const WeightedGraph& wg) {
  require_dense_scale(wg.base.num_nodes());
  Matrix a = Matrix::Zero(wg.base.num_nodes(), wg.base.num_nodes());
  for (Index e = 0; e < wg.base.num_edges(); ++e) {
    const auto [u, v] = wg.base.edge(e);
    a(u, v) = wg.edge_weights[e];
    a(v, u) = wg.edge_weights[e];
  }
  return a;
}

Matrix dense_transition(const Graph& g) {
  Matrix p = dense_adjacency(g);
  for (Index i = 0; i < g.num_nodes(); ++i) {
    const Index d = g.degree(i);
    if (d > 0) p.row(i) /= static_cast<double>(d);
  }
  return p;
}

Matrix dense_norm_adjacency(const Graph& g) {
  Matrix a = dense_adjacency(g);
  Vector inv_sqrt(g.num_nodes());
  for (Index i = 0; i < g.num_nodes(); ++i)
    inv_sqrt[i] = g.degree(i) > 0 ? 1.0 / std::sqrt(static_cast<double>(g.degree(i))) : 0.0;
  return inv_sqrt.asDiagonal() * a * inv_sqrt.asDiagonal();
}

Matrix dense_norm_adjacency(const WeightedGraph& wg) {
  Matrix a = dense_adjacency(wg);
  Vector inv_sqrt(wg.base.num_nodes());
  for (Index i = 0; i < wg.base.num_nodes(); ++i)
    inv_sqrt[i] = wg.weighted_degrees[i] > 0.0 ? 1.0 / std::sqrt(wg.weighted_degrees[i]) : 0.0;
  return inv_sqrt.asDiagonal() * a * inv_sqrt.asDiagonal();
}

Matrix dense_laplacian(const WeightedGraph& wg) {
  Matrix a = dense_adjacency(wg);
  Matrix l = Matrix::Zero(a.rows(), a.cols());
  l.diagonal() = wg.weighted_degrees;
  l -= a;
  return l;
}

bool is_connected(const Graph& g) {
  const Index n = g.num_nodes();
  if (n == 0) return false;
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  std::deque<Index> queue{0};
  seen[0] = true;
  Index visited = 1;
  while (!queue.empty()) {
    const Index u = queue.front();
    queue.pop_front();
    for (Index v : g.neighbors(u))
      if (!seen[static_cast<std::size_t>(v)]) {
        seen[static_cast<std::size_t>(v)] = true;
        ++visited;
        queue.push_back(v);
      }
  }
  return visited == n;
}

bool is_bipartite(const Graph& g) {
  const Index n = g.num_nodes();
  std::vector<int> color(static_cast<std::size_t>(n), -1);
  for (Index start = 0; start < n; ++start) {
    if (color[static_cast<std::size_t>(start)] != -1) continue;
    color[static_cast<std::size_t>(start)] = 0;
    std::deque<Index> queue{start};
    while (!queue.empty()) {
      const Index u = queue.front();
      queue.pop_front();
      for (Index v : g.neighbors(u)) {
        auto& cv = color[static_cast<std::size_t>(v)];
        if (cv == -1) {
          cv = 1 - color[static_cast<std::size_t>(u)];
          queue.push_back(v);
        } else if (cv == color[static_cast<std::size_t>(u)]) {
          return false;
        }
      }
    }
  }
  return true;
}

EigenDecomposition jacobi_eigs(const Matrix& sym) {
  const Index n = sym.rows();
  require_dense_scale(n);
  if (sym.cols() != n) throw std::invalid_argument("jacobi_eigs: matrix not square");
  if ((sym - sym.transpose()).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("jacobi_eigs: matrix not symmetric");

  Matrix a = sym;
  Matrix v = Matrix::Identity(n, n);
  const double scale = std::max(1.0, sym.norm());
  const double tol = 1e-12 * scale;  // comfortably under the 1e-10 contract

  auto off_norm = [&]() {
    double s = 0.0;
    for (Index p = 0; p < n; ++p)
      for (Index q = p + 1; q < n; ++q) s += a(p, q) * a(p, q);
    return std::sqrt(2.0 * s);
  };

  int sweeps = 0;
  while (off_norm() > tol) {
    if (++sweeps > 100) throw std::runtime_error("jacobi_eigs: no convergence after 100 sweeps");
    for (Index p = 0; p < n; ++p) {
      for (Index q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::abs(apq) <= tol / static_cast<double>(n * n)) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // Rotate rows/columns p and q.
        for (Index i = 0; i < n; ++i) {
          const double aip = a(i, p);
          const double aiq = a(i, q);
          a(i, p) = c * aip - s * aiq;
          a(i, q) = s * aip + c * aiq;
        }
        for (Index i = 0; i < n; ++i) {
          const double api = a(p, i);
          const double aqi = a(q, i);
          a(p, i) = c * api - s * aqi;
          a(q, i) = s * api + c * aqi;
        }
        for (Index i = 0; i < n; ++i) {
          const double vip = v(i, p);
          const double viq = v(i, q);
          v(i, p) = c * vip - s * viq;
          v(i, q) = s * vip + c * viq;
        }
      }
    }
  }

  std::vector<Index> order(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  std::sort(order.begin(), order.end(), [&](Index x, Index y) { return a(x, x) > a(y, y); });

  EigenDecomposition d;
  d.eigenvalues.resize(n);
  d.eigenvectors.resize(n, n);
  for (Index i = 0; i < n; ++i) {
    d.eigenvalues[i] = a(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(i)]);
    d.eigenvectors.col(i) = v.col(order[static_cast<std::size_t>(i)]);
  }
  return d;
}

SpectralSummary dense_eigs(const Matrix& sym) {
  const EigenDecomposition d = jacobi_eigs(sym);
  SpectralSummary s;
  s.eigenvalues = d.eigenvalues;
  const Index n = d.eigenvalues.size();
  if (n >= 2) {
    s.lambda2 = d.eigenvalues[1];
    s.spectral_gap = 1.0 - std::max(std::abs(d.eigenvalues[1]), std::abs(d.eigenvalues[n - 1]));
  } else {
    s.lambda2 = std::numeric_limits<double>::quiet_NaN();
    s.spectral_gap = std::numeric_limits<double>::quiet_NaN();
  }
  return s;
}

Matrix laplacian_pseudoinverse(const WeightedGraph& wg) {
  if (!is_connected(wg.base))
    throw std::invalid_argument("laplacian_pseudoinverse: graph must be connected");
  const EigenDecomposition d = jacobi_eigs(dense_laplacian(wg));
  const double cutoff = 1e-9 * std::max(1e-300, d.eigenvalues.cwiseAbs().maxCoeff());
  Matrix pinv = Matrix::Zero(d.eigenvectors.rows(), d.eigenvectors.rows());
  for (Index i = 0; i < d.eigenvalues.size(); ++i) {
    if (std::abs(d.eigenvalues[i]) <= cutoff) continue;
    pinv.noalias() +=
        (1.0 / d.eigenvalues[i]) * d.eigenvectors.col(i) * d.eigenvectors.col(i).transpose();
  }
  return pinv;
}

double exact_effective_resistance(const WeightedGraph& wg, Index i, Index j) {
  const Index n = wg.base.num_nodes();
  if (i < 0 || j < 0 || i >= n || j >= n)
    throw std::invalid_argument("exact_effective_resistance: node id out of range");
  const Matrix pinv = laplacian_pseudoinverse(wg);
  return pinv(i, i) + pinv(j, j) - 2.0 * pinv(i, j);
}

ErBoundsReport check_er_bounds(const WeightedGraph& wg) {
  const Graph& g = wg.base;
  if (g.num_nodes() > 200)
    throw std::invalid_argument("check_er_bounds: restricted to n <= 200");
  if (!is_connected(g)) throw std::invalid_argument("check_er_bounds: graph must be connected");

  ErBoundsReport rep;
  rep.lambda2 = dense_eigs(dense_norm_adjacency(wg)).lambda2;
  // The upper bound needs every non-principal eigenvalue strictly inside the
  // unit circle; bipartite graphs and vanishing gaps only get reported.
  rep.asserted = !is_bipartite(g) && (1.0 - rep.lambda2) >= 1e-6;

  const Matrix pinv = laplacian_pseudoinverse(wg);
  constexpr double kSlack = 1e-9;
  rep.min_tightness = std::numeric_limits<double>::infinity();
  rep.max_tightness = 0.0;
  for (Index e = 0; e < g.num_edges(); ++e) {
    const auto [u, v] = g.edge(e);
    const double r = pinv(u, u) + pinv(v, v) - 2.0 * pinv(u, v);
    const double s = 1.0 / wg.weighted_degrees[u] + 1.0 / wg.weighted_degrees[v];
    const double lower = 0.5 * s;
    const double upper = s / (1.0 - rep.lambda2);
    ++rep.edges;
    if (r < lower - kSlack || r > upper + kSlack) ++rep.violations;
    rep.min_tightness = std::min(rep.min_tightness, r / upper);
    rep.max_tightness = std::max(rep.max_tightness, r / upper);
  }
  rep.passed = !rep.asserted || rep.violations == 0;
  return rep;
}

MixingBoundReport check_mixing_bound(const Graph& g, Index t_max) {
  if (g.num_nodes() > 200)
    throw std::invalid_argument("check_mixing_bound: restricted to n <= 200");
  if (!is_connected(g)) throw std::invalid_argument("check_mixing_bound: graph must be connected");
  if (is_bipartite(g)) throw std::invalid_argument("check_mixing_bound: bipartite graph rejected");

  const Index n = g.num_nodes();
  const double two_m = 2.0 * static_cast<double>(g.num_edges());
  MixingBoundReport rep;
  rep.t_max = t_max;
  rep.spectral_gap = dense_eigs(dense_norm_adjacency(g)).spectral_gap;

  const Matrix p1 = dense_transition(g);
  const Matrix a1 = dense_norm_adjacency(g);
  Matrix pt = Matrix::Identity(n, n);
  Matrix at = Matrix::Identity(n, n);
  constexpr double kSlack = 1e-9;
  rep.worst_margin_transition = -std::numeric_limits<double>::infinity();
  rep.worst_margin_normalized = -std::numeric_limits<double>::infinity();
  double envelope = 1.0;
  for (Index t = 1; t <= t_max; ++t) {
    pt = pt * p1;
    at = at * a1;
    envelope *= 1.0 - rep.spectral_gap;
    for (Index i = 0; i < n; ++i) {
      const double di = static_cast<double>(g.degree(i));
      for (Index j = 0; j < n; ++j) {
        const double dj = static_cast<double>(g.degree(j));
        const double dev_p = std::abs(pt(i, j) - dj / two_m);
        const double bound_p = std::sqrt(dj / di) * envelope;
        rep.worst_margin_transition = std::max(rep.worst_margin_transition, dev_p - bound_p);
        const double dev_a = std::abs(at(i, j) - std::sqrt(di * dj) / two_m);
        rep.worst_margin_normalized = std::max(rep.worst_margin_normalized, dev_a - envelope);
      }
    }
  }
  rep.passed = rep.worst_margin_transition <= kSlack && rep.worst_margin_normalized <= kSlack;
  return rep;
}

CountSketchMoments count_sketch_moments(const Graph& g, const Vector& w, Index k, Index trials,
                                        std::uint64_t seed, bool force_injective) {
  if (trials < 1000) throw std::invalid_argument("count_sketch_moments: needs trials >= 1000");
  if (w.size() != g.num_nodes())
    throw std::invalid_argument("count_sketch_moments: vector length != node count");
  const Index n = g.num_nodes();

  CountSketchMoments mo;
  mo.trials = trials;
  mo.exact = dense_adjacency(g) * w;
  mo.variance_bound.resize(n);
  for (Index i = 0; i < n; ++i)
    mo.variance_bound[i] =
        2.0 * static_cast<double>(g.degree(i)) * w.squaredNorm() / static_cast<double>(k);

  Vector sum = Vector::Zero(n);
  Vector sum_sq = Vector::Zero(n);
  for (Index t = 0; t < trials; ++t) {
    const std::uint64_t trial_seed = rng::at(seed, static_cast<std::uint64_t>(t));
    const CountSketch cs = force_injective ? build_injective_count_sketch(n, k, trial_seed)
                                           : build_count_sketch(n, k, trial_seed);
    // R w in sketch space, then one pass over edges for (A R^T)(R w).
    Vector rw = Vector::Zero(k);
    for (Index i = 0; i < n; ++i)
      rw[cs.hash[static_cast<std::size_t>(i)]] += cs.sign[static_cast<std::size_t>(i)] * w[i];
    const Matrix art = apply_count_sketch(g, cs);
    const Vector est = art * rw;
    sum += est - mo.exact;
    sum_sq += (est - mo.exact).cwiseProduct(est - mo.exact);
  }
  mo.mean_err = sum / static_cast<double>(trials);
  mo.variance = sum_sq / static_cast<double>(trials) - mo.mean_err.cwiseProduct(mo.mean_err);
  mo.stderr_mean = (mo.variance / static_cast<double>(trials)).cwiseSqrt();
  return mo;
}

ResidualComparison residual_comparison(const Matrix& x, const Matrix& a, const Matrix& c) {
  const Index n = x.rows();
  require_dense_scale(n);
  if (a.rows() != n || a.cols() != n || c.rows() != n)
    throw std::invalid_argument("residual_comparison: shape mismatch");

  constexpr double kRidge = 1e-10;
  auto fit_residual = [&](const Matrix& phi) {
    const Matrix gram =
        phi.transpose() * phi + kRidge * Matrix::Identity(phi.cols(), phi.cols());
    const Matrix coef = gram.ldlt().solve(phi.transpose() * c);
    return (phi * coef - c).norm();
  };

  Matrix xa(n, x.cols() + a.cols());
  xa << x, a;
  return {fit_residual(x), fit_residual(xa)};
}

Matrix exact_rwr_scores(const Graph& g, std::span<const Index> sources, Index steps,
                        double alpha) {
  require_dense_scale(g.num_nodes());
  const Index n = g.num_nodes();
  const Index c = static_cast<Index>(sources.size());
  Matrix restart = Matrix::Zero(n, c);
  for (Index j = 0; j < c; ++j) restart(sources[static_cast<std::size_t>(j)], j) = 1.0;

  const Matrix p = dense_transition(g);
  Matrix term = restart;  // P^t * restart
  Matrix acc = (1.0 - alpha) * restart;
  double decay = 1.0 - alpha;
  for (Index t = 1; t <= steps; ++t) {
    term = p * term;
    decay *= alpha;
    acc += decay * term;
  }
  return acc;
}

}  // namespace tada::oracles
