#pragma once

#include "tada/graph.hpp"

#include <cstdint>
#include <span>

namespace tada::oracles {

/// Everything here is dense and O(n^3) or worse; the cap keeps the oracles off
/// real datasets.
inline constexpr Index kMaxDenseNodes = 500;

Matrix dense_adjacency(const Graph& g);
Matrix dense_adjacency(const WeightedGraph& wg);
Matrix dense_transition(const Graph& g);
Matrix dense_norm_adjacency(const Graph& g);
Matrix dense_norm_adjacency(const WeightedGraph& wg);
Matrix dense_laplacian(const WeightedGraph& wg);

bool is_connected(const Graph& g);
bool is_bipartite(const Graph& g);

/// Full spectrum of a symmetric matrix via cyclic Jacobi rotations.
/// Eigenvalues descending, columns of `eigenvectors` matching. Throws after
/// 100 sweeps without convergence.
struct EigenDecomposition {
  Vector eigenvalues;
  Matrix eigenvectors;
};
EigenDecomposition jacobi_eigs(const Matrix& sym);

struct SpectralSummary {
  Vector eigenvalues;       // descending
  double lambda2;           // second largest
  double spectral_gap;      // 1 - max(|sigma_2|, |sigma_n|)
};
SpectralSummary dense_eigs(const Matrix& sym);

/// Moore-Penrose pseudoinverse of the weighted Laplacian via the Jacobi
/// decomposition; eigenvalues below 1e-9 * lambda_max count as zero.
Matrix laplacian_pseudoinverse(const WeightedGraph& wg);

/// L+_ii + L+_jj - 2 L+_ij on a connected weighted graph.
double exact_effective_resistance(const WeightedGraph& wg, Index i, Index j);

/// Sandwich check: 0.5 * s <= r_w(e) <= s / (1 - lambda2) with
/// s = 1/d_w(i) + 1/d_w(j), slack 1e-9 per side. Bipartite inputs and
/// near-degenerate gaps (1 - lambda2 < 1e-6) are reported, not asserted.
struct ErBoundsReport {
  Index edges = 0;
  Index violations = 0;
  bool asserted = true;
  bool passed = true;
  double lambda2 = 0.0;
  double min_tightness = 0.0;  // r / upper over edges
  double max_tightness = 0.0;
};
ErBoundsReport check_er_bounds(const WeightedGraph& wg);

/// Checks both mixing inequalities for t = 1..t_max against the exact dense
/// powers, slack 1e-9. Rejects bipartite or disconnected inputs.
struct MixingBoundReport {
  Index t_max = 0;
  double spectral_gap = 0.0;
  double worst_margin_transition = 0.0;  // max over (t,i,j) of |deviation| - bound
  double worst_margin_normalized = 0.0;
  bool passed = true;
};
MixingBoundReport check_mixing_bound(const Graph& g, Index t_max);

/// Monte-Carlo moments of the sketch estimator (A_i R^T)(R w) across
/// independently seeded sketches, against the exact A_i . w.
struct CountSketchMoments {
  Vector exact;           // A_i . w
  Vector mean_err;        // mean of estimate - exact per row
  Vector variance;        // empirical variance per row
  Vector variance_bound;  // 2 d(v_i) |w|^2 / k
  Vector stderr_mean;     // sqrt(variance / trials)
  Index trials = 0;
};
CountSketchMoments count_sketch_moments(const Graph& g, const Vector& w, Index k, Index trials,
                                        std::uint64_t seed, bool force_injective = false);

/// Frobenius residuals of the least-squares fits X -> C and [X||A] -> C via
/// normal equations with ridge 1e-10. The wider model can never fit worse.
struct ResidualComparison {
  double res_x = 0.0;
  double res_xa = 0.0;
};
ResidualComparison residual_comparison(const Matrix& x, const Matrix& a, const Matrix& c);

/// Dense evaluation of the truncated restart-walk score matrix as an explicit
/// power sum (independent of the sparse recurrence).
Matrix exact_rwr_scores(const Graph& g, std::span<const Index> sources, Index steps, double alpha);

}  // namespace tada::oracles
