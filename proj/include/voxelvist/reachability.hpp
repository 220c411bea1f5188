// Copyright (c) 2026 The voxelvist authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "voxelvist/world.hpp"

#include <optional>
#include <unordered_map>
#include <vector>

namespace voxelvist {

/// Support blocks an avatar can walk to from a start support within a step
/// budget. Every cell supports a headspace; step_of holds the minimal number
/// of lateral moves.
struct ReachSet {
  BlockPos start_support = BlockPos::Zero();
  int steps = 0;
  std::vector<BlockPos> cells;  // sorted (y,x,z)
  std::unordered_map<std::uint64_t, int> step_of;  // pos_key(cell) -> step

  bool contains(const BlockPos& p) const { return step_of.count(pos_key(p)) != 0; }
};

/// Movement rules. Defaults mirror plain walking: step onto the four lateral
/// neighbor columns, climb at most one block, drop any distance.
struct ReachRules {
  std::optional<int> max_drop;  // nullopt = unlimited
  bool diagonals = false;
};

/// Breadth-first expansion over support blocks. From a support, each lateral
/// neighbor column is scanned for landing supports no higher than one block
/// up; climbs additionally need the cell above the avatar's head clear so the
/// body can rise. Every lateral move costs one step regardless of vertical
/// change, and every valid landing in a column is taken, not just the
/// highest (overhangs can stack several).
ReachSet floodfill_reach(const WorldView& view, const BlockPos& start_support, int steps,
                         const ReachRules& rules = {});

}  // namespace voxelvist
