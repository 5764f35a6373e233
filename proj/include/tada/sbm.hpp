#pragma once

#include "tada/graph.hpp"
#include "tada/labels.hpp"

#include <cstdint>

namespace tada {

/// Stochastic block model with the block as the class label. Attributes are a
/// one-hot block indicator plus Gaussian noise of the given scale; splits are
/// a seeded 60/20/20 shuffle.
struct SbmConfig {
  Index n = 500;
  Index blocks = 2;
  double p_in = 0.16;
  double p_out = 0.01;
  Index attr_dim = 8;
  double noise = 0.0;
  std::uint64_t seed = 0;
};

struct SbmData {
  Graph graph;
  Matrix attributes;
  LabelVector labels;
};

SbmData generate_sbm(const SbmConfig& cfg);

}  // namespace tada
