#include "tada/count_sketch.hpp"

#include "tada/rng.hpp"

#include <stdexcept>

namespace tada {

namespace {
// Distinct stream keys so bucket and sign draws never reuse the same counter.
constexpr std::uint64_t kBucketStream = 0x636f756e745f6873ULL;
constexpr std::uint64_t kSignStream = 0x7369676e5f626974ULL;
constexpr std::uint64_t kPermStream = 0x696e6a5f7065726dULL;
}  // namespace

CountSketch build_count_sketch(Index n, Index k, std::uint64_t seed) {
  if (k < 1) throw std::invalid_argument("build_count_sketch: k must be >= 1");
  if (n < 1) throw std::invalid_argument("build_count_sketch: n must be >= 1");
  CountSketch cs;
  cs.k = k;
  cs.seed = seed;
  cs.hash.resize(static_cast<std::size_t>(n));
  cs.sign.resize(static_cast<std::size_t>(n));
  const std::uint64_t hkey = rng::mix64(seed ^ kBucketStream);
  const std::uint64_t skey = rng::mix64(seed ^ kSignStream);
  for (Index i = 0; i < n; ++i) {
    const auto ui = static_cast<std::uint64_t>(i);
    cs.hash[static_cast<std::size_t>(i)] =
        static_cast<Index>(rng::bounded(rng::at(hkey, ui), static_cast<std::uint64_t>(k)));
    cs.sign[static_cast<std::size_t>(i)] = (rng::at(skey, ui) >> 63) ? 1 : -1;
  }
  return cs;
}

CountSketch build_injective_count_sketch(Index n, Index k, std::uint64_t seed) {
  if (k < n)
    throw std::invalid_argument("build_injective_count_sketch: needs k >= n");
  CountSketch cs;
  cs.k = k;
  cs.seed = seed;
  cs.hash.resize(static_cast<std::size_t>(n));
  cs.sign.resize(static_cast<std::size_t>(n));
  rng::SplitMix gen(rng::mix64(seed ^ kPermStream));
  const auto perm = gen.permutation(k);
  const std::uint64_t skey = rng::mix64(seed ^ kSignStream);
  for (Index i = 0; i < n; ++i) {
    cs.hash[static_cast<std::size_t>(i)] = perm[static_cast<std::size_t>(i)];
    cs.sign[static_cast<std::size_t>(i)] =
        (rng::at(skey, static_cast<std::uint64_t>(i)) >> 63) ? 1 : -1;
  }
  return cs;
}

Matrix apply_count_sketch(const Graph& g, const CountSketch& cs) {
  if (static_cast<Index>(cs.hash.size()) != g.num_nodes())
    throw std::invalid_argument("apply_count_sketch: sketch built for different node count");
  Matrix out = Matrix::Zero(g.num_nodes(), cs.k);
  for (Index i = 0; i < g.num_nodes(); ++i)
    for (Index j : g.neighbors(i))
      out(i, cs.hash[static_cast<std::size_t>(j)]) += cs.sign[static_cast<std::size_t>(j)];
  return out;
}

}  // namespace tada
