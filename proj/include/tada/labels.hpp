#pragma once

#include "tada/types.hpp"

#include <cstdint>
#include <vector>

namespace tada {

enum class Split : std::uint8_t { train, val, test, none };

/// Per-node class labels with an optional train/val/test split mask.
struct LabelVector {
  std::vector<Index> labels;
  std::vector<Split> mask;
  Index num_classes = 0;

  Index size() const { return static_cast<Index>(labels.size()); }

  Index count_split(Split s) const {
    Index c = 0;
    for (auto m : mask)
      if (m == s) ++c;
    return c;
  }

  /// Every class in [0, num_classes) must occur at least once.
  void require_contiguous_classes() const;
};

}  // namespace tada
