#pragma once

#include "tada/graph.hpp"

#include <cstdint>
#include <vector>

namespace tada {

/// Count-sketch operator in its natural sparse form: one bucket and one sign
/// per node. Fully determined by (n, k, seed); the dense k x n operator has
/// sign[i] at row hash[i] of column i.
struct CountSketch {
  Index k = 0;
  std::vector<Index> hash;
  std::vector<std::int8_t> sign;
  std::uint64_t seed = 0;
};

/// Buckets and signs drawn from a counter-based 64-bit mix on (seed, i), so
/// the arrays are identical on every platform.
CountSketch build_count_sketch(Index n, Index k, std::uint64_t seed);

/// Collision-free variant (requires k >= n): buckets are the first n entries
/// of a seeded permutation of [0,k). Restricted to the used buckets the
/// operator is orthogonal up to signs.
CountSketch build_injective_count_sketch(Index n, Index k, std::uint64_t seed);

/// Sketches the adjacency matrix: out[i][hash[j]] += sign[j] for every
/// neighbor j of i (2m additions total, O(m + nk) with the zero-init).
Matrix apply_count_sketch(const Graph& g, const CountSketch& cs);

}  // namespace tada
