// Small tiling fixtures shared by several suites.
#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "twistkit/tiling.hpp"

namespace testutil {

inline twistkit::Tiling make_tiling(
    std::vector<twistkit::Cell> cells,
    const std::vector<std::pair<twistkit::Cell, twistkit::Cell>>& pairs) {
  auto region = std::make_shared<twistkit::Region>(std::move(cells));
  std::vector<int> partner(region->size(), -1);
  for (auto& [a, b] : pairs) {
    partner[(size_t)region->index_of(a)] = region->index_of(b);
    partner[(size_t)region->index_of(b)] = region->index_of(a);
  }
  return twistkit::Tiling(std::move(region), std::move(partner));
}

// Hand-audited fixture: one floor holds a pinwheel of four dominoes around
// the center column, the other floor the quarter-turned pinwheel.  The four
// interacting pairs each contribute +1/4 along e_z, so every pretwist is +1.
inline twistkit::Tiling pinwheel_332() {
  std::vector<twistkit::Cell> cells;
  for (int z = 0; z < 2; ++z)
    for (int y = 0; y < 3; ++y)
      for (int x = 0; x < 3; ++x) cells.push_back({x, y, z});
  return make_tiling(cells, {
                                {{0, 0, 0}, {1, 0, 0}},
                                {{2, 0, 0}, {2, 1, 0}},
                                {{1, 2, 0}, {2, 2, 0}},
                                {{0, 1, 0}, {0, 2, 0}},
                                {{1, 1, 0}, {1, 1, 1}},
                                {{1, 0, 1}, {2, 0, 1}},
                                {{2, 1, 1}, {2, 2, 1}},
                                {{0, 2, 1}, {1, 2, 1}},
                                {{0, 0, 1}, {0, 1, 1}},
                            });
}

}  // namespace testutil
