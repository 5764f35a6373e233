#include "tada/sbm.hpp"

#include "tada/rng.hpp"

#include <stdexcept>
#include <utility>
#include <vector>

namespace tada {

SbmData generate_sbm(const SbmConfig& cfg) {
  if (cfg.n < 1 || cfg.blocks < 1 || cfg.n % cfg.blocks != 0)
    throw std::invalid_argument("generate_sbm: n must be a positive multiple of blocks");
  if (!(cfg.p_in > cfg.p_out))
    throw std::invalid_argument("generate_sbm: requires p_in > p_out");
  if (cfg.p_in < 0.0 || cfg.p_in > 1.0 || cfg.p_out < 0.0)
    throw std::invalid_argument("generate_sbm: probabilities outside [0,1]");
  if (cfg.attr_dim < cfg.blocks)
    throw std::invalid_argument("generate_sbm: attr_dim must cover one dimension per block");
  if (cfg.noise < 0.0) throw std::invalid_argument("generate_sbm: negative noise scale");

  const Index per_block = cfg.n / cfg.blocks;
  auto block_of = [&](Index v) { return v / per_block; };

  rng::SplitMix edge_gen(rng::mix64(cfg.seed ^ 0x73626d5f65646765ULL));
  std::vector<std::pair<Index, Index>> edges;
  for (Index u = 0; u < cfg.n; ++u)
    for (Index v = u + 1; v < cfg.n; ++v) {
      const double p = block_of(u) == block_of(v) ? cfg.p_in : cfg.p_out;
      if (edge_gen.next_unit() < p) edges.emplace_back(u, v);
    }
  SbmData data;
  data.graph = Graph::from_edges(cfg.n, std::move(edges));

  rng::SplitMix attr_gen(rng::mix64(cfg.seed ^ 0x73626d5f61747472ULL));
  data.attributes = Matrix::Zero(cfg.n, cfg.attr_dim);
  for (Index v = 0; v < cfg.n; ++v) {
    data.attributes(v, block_of(v)) = 1.0;
    if (cfg.noise > 0.0)
      for (Index c = 0; c < cfg.attr_dim; ++c)
        data.attributes(v, c) += cfg.noise * attr_gen.next_gaussian();
  }

  data.labels.labels.resize(static_cast<std::size_t>(cfg.n));
  for (Index v = 0; v < cfg.n; ++v) data.labels.labels[static_cast<std::size_t>(v)] = block_of(v);
  data.labels.num_classes = cfg.blocks;

  // 60/20/20 split over a seeded shuffle.
  rng::SplitMix split_gen(rng::mix64(cfg.seed ^ 0x73626d5f73706c74ULL));
  const auto order = split_gen.permutation(cfg.n);
  data.labels.mask.assign(static_cast<std::size_t>(cfg.n), Split::none);
  const Index n_train = (cfg.n * 6) / 10;
  const Index n_val = (cfg.n * 2) / 10;
  for (Index r = 0; r < cfg.n; ++r) {
    const auto v = static_cast<std::size_t>(order[static_cast<std::size_t>(r)]);
    data.labels.mask[v] = r < n_train ? Split::train : (r < n_train + n_val ? Split::val : Split::test);
  }
  return data;
}

}  // namespace tada
