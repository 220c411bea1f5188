// Copyright (c) 2026 The voxelvist authors
// SPDX-License-Identifier: Apache-2.0
#include "voxelvist/reachability.hpp"

#include <algorithm>
#include <deque>

namespace voxelvist {

ReachSet floodfill_reach(const WorldView& view, const BlockPos& start_support, int steps,
                         const ReachRules& rules) {
  if (steps < 0) throw std::invalid_argument("floodfill_reach: steps must be >= 0");
  if (!view.is_headspace(start_support + BlockPos(0, 2, 0)))
    throw std::invalid_argument("floodfill_reach: start is not the support of a headspace");

  ReachSet reach;
  reach.start_support = start_support;
  reach.steps = steps;
  reach.step_of.emplace(pos_key(start_support), 0);
  reach.cells.push_back(start_support);

  const int world_bottom = view.world().origin().y();
  const int world_top = world_bottom + view.world().dims().y() - 1;

  std::deque<std::pair<BlockPos, int>> frontier;
  frontier.emplace_back(start_support, 0);
  static constexpr int kLateral4[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  static constexpr int kLateral8[8][2] = {{1, 0},  {-1, 0}, {0, 1},  {0, -1},
                                          {1, 1},  {1, -1}, {-1, 1}, {-1, -1}};
  const auto* lateral = rules.diagonals ? &kLateral8[0] : &kLateral4[0];
  const int lateral_count = rules.diagonals ? 8 : 4;

  while (!frontier.empty()) {
    const auto [support, step] = frontier.front();
    frontier.pop_front();
    if (step == steps) continue;
    const bool headroom = view.is_empty(support + BlockPos(0, 3, 0));
    for (int dir = 0; dir < lateral_count; ++dir) {
      const int nx = support.x() + lateral[dir][0];
      const int nz = support.z() + lateral[dir][1];
      // candidate landings: supports in the neighbor column from one block up
      // (a climb, needing headroom above the current head) down to the drop
      // limit; a landing is valid iff it supports a headspace
      const int y_top = std::min(support.y() + 1, world_top);
      const int y_bottom =
          rules.max_drop ? std::max(world_bottom, support.y() - *rules.max_drop) : world_bottom;
      for (int ny = y_top; ny >= y_bottom; --ny) {
        if (ny == support.y() + 1 && !headroom) continue;
        const BlockPos landing(nx, ny, nz);
        if (!view.is_headspace(landing + BlockPos(0, 2, 0))) continue;
        if (reach.step_of.emplace(pos_key(landing), step + 1).second) {
          reach.cells.push_back(landing);
          frontier.emplace_back(landing, step + 1);
        }
      }
    }
  }

  std::sort(reach.cells.begin(), reach.cells.end(), PosLessYXZ{});
  return reach;
}

}  // namespace voxelvist
