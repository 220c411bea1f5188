// Copyright (c) 2026 The voxelvist authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "voxelvist/common.hpp"

#include <span>
#include <vector>

namespace voxelvist {

/// Cell sequence of a discrete line, source and target inclusive.
using CellPath = std::vector<BlockPos>;

/// Allocation-free 3D Bresenham traversal from a to b.
///
/// The cell at dominant-axis step i is a + round(i * delta / L) per axis,
/// where L = max(|dx|,|dy|,|dz|) and rounding is half away from zero. Kept
/// in integer arithmetic so paths are deterministic and exactly reproduce
/// that rounding rule.
class LineWalker {
 public:
  LineWalker(const BlockPos& a, const BlockPos& b);

  const BlockPos& pos() const { return pos_; }
  int step() const { return step_; }
  int length() const { return length_; }  // number of advances until b
  bool done() const { return step_ >= length_; }

  void advance() {
    ++step_;
    for (int axis = 0; axis < 3; ++axis) {
      rem_[axis] += twice_delta_[axis];
      if (rem_[axis] >= twice_length_) {
        rem_[axis] -= twice_length_;
        pos_[axis] += sign_[axis];
      }
    }
  }

 private:
  BlockPos pos_;
  int step_ = 0;
  int length_;
  int twice_length_;
  int sign_[3];
  int twice_delta_[3];
  int rem_[3];
};

/// Standard 3D integer Bresenham cell sequence from a to b;
/// length is max(|dx|,|dy|,|dz|) + 1.
CellPath bresenham3d(const BlockPos& a, const BlockPos& b);

/// Ray targets approximating a sphere surface of the given radius.
///
/// Offsets are relative to the centroid, deduplicated, sorted (y,x,z), and
/// closed under the 48 signed axis permutations. Every offset norm lies in
/// [radius-1, radius+1]. Rays cast with bresenham3d from the center to every
/// offset jointly visit every cell of the Euclidean ball of the radius (the
/// construction completes the base rasterization until that holds; see
/// sphere_shell).
struct SphereShell {
  int radius = 0;
  std::vector<BlockPos> offsets;
};

/// Builds the shell: all integer offsets v with round(|v|) == radius, then a
/// coverage-completion pass (radii up to kShellCompletionMaxRadius) that adds
/// ray targets until the ball-coverage property above holds. Completion is
/// exhaustive and cheap at survey-scale radii; at larger radii the base
/// rasterization is dense enough that the pass is skipped.
SphereShell sphere_shell(int radius);

/// Process-wide per-radius cache; shells are immutable once built.
const SphereShell& shared_sphere_shell(int radius);

inline constexpr int kShellCompletionMaxRadius = 64;

struct RadialStats {
  double mean = 0;
  double variance = 0;  // population variance: radials are the full cast set
  double max = 0;       // vista length
};

RadialStats radial_stats(std::span<const double> lengths);

}  // namespace voxelvist
