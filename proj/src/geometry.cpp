// Copyright (c) 2026 The voxelvist authors
// SPDX-License-Identifier: Apache-2.0
#include "voxelvist/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>
#include <optional>

namespace voxelvist {
namespace {

// round(num / den) half away from zero, den > 0
std::int64_t round_div_half_away(std::int64_t num, std::int64_t den) {
  return num >= 0 ? (2 * num + den) / (2 * den) : -((-2 * num + den) / (2 * den));
}

std::int64_t isqrt_floor(std::int64_t v) {
  if (v <= 0) return 0;
  auto s = static_cast<std::int64_t>(std::sqrt(static_cast<double>(v)));
  while ((s + 1) * (s + 1) <= v) ++s;
  while (s * s > v) --s;
  return s;
}

}  // namespace

LineWalker::LineWalker(const BlockPos& a, const BlockPos& b) : pos_(a) {
  int max_abs = 0;
  for (int axis = 0; axis < 3; ++axis) {
    const int d = b[axis] - a[axis];
    sign_[axis] = d > 0 ? 1 : (d < 0 ? -1 : 0);
    twice_delta_[axis] = 2 * std::abs(d);
    max_abs = std::max(max_abs, std::abs(d));
  }
  length_ = max_abs;
  twice_length_ = 2 * std::max(max_abs, 1);
  // remainder starts at L so accumulated error matches round-half-away of
  // i*delta/L at every step
  for (int axis = 0; axis < 3; ++axis) rem_[axis] = twice_length_ / 2;
}

CellPath bresenham3d(const BlockPos& a, const BlockPos& b) {
  LineWalker walker(a, b);
  CellPath path;
  path.reserve(static_cast<std::size_t>(walker.length()) + 1);
  path.push_back(walker.pos());
  while (!walker.done()) {
    walker.advance();
    path.push_back(walker.pos());
  }
  return path;
}

RadialStats radial_stats(std::span<const double> lengths) {
  if (lengths.empty()) throw std::invalid_argument("radial_stats: empty length list");
  const Eigen::Map<const Eigen::ArrayXd> arr(lengths.data(),
                                             static_cast<Eigen::Index>(lengths.size()));
  RadialStats stats;
  stats.mean = arr.mean();
  stats.variance = std::max(0.0, (arr - stats.mean).square().mean());
  stats.max = arr.maxCoeff();
  return stats;
}

namespace {

// Visited-cell bitmap over the cube [-(r+1), r+1]^3.
class CoverageGrid {
 public:
  explicit CoverageGrid(int radius) : half_(radius + 1), side_(2 * half_ + 1) {
    bits_.assign((static_cast<std::size_t>(side_) * side_ * side_ + 63) / 64, 0);
  }

  std::size_t index(const BlockPos& p) const {
    return static_cast<std::size_t>(p.x() + half_) +
           static_cast<std::size_t>(side_) *
               (static_cast<std::size_t>(p.y() + half_) +
                static_cast<std::size_t>(side_) * static_cast<std::size_t>(p.z() + half_));
  }

  void mark(const BlockPos& p) {
    const std::size_t i = index(p);
    bits_[i >> 6] |= 1ull << (i & 63);
  }

  bool marked(const BlockPos& p) const {
    const std::size_t i = index(p);
    return (bits_[i >> 6] >> (i & 63)) & 1u;
  }

  void mark_ray(const BlockPos& target) {
    LineWalker walker(BlockPos::Zero(), target);
    mark(walker.pos());
    while (!walker.done()) {
      walker.advance();
      mark(walker.pos());
    }
  }

 private:
  int half_;
  int side_;
  std::vector<std::uint64_t> bits_;
};

bool ray_visits(const BlockPos& target, const BlockPos& cell) {
  LineWalker walker(BlockPos::Zero(), target);
  if (walker.pos() == cell) return true;
  while (!walker.done()) {
    walker.advance();
    if (walker.pos() == cell) return true;
  }
  return false;
}

void append_signed_permutations(const BlockPos& v, std::vector<BlockPos>& out) {
  static constexpr int kPerms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                       {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  for (const auto& perm : kPerms)
    for (int signs = 0; signs < 8; ++signs) {
      BlockPos w(v[perm[0]], v[perm[1]], v[perm[2]]);
      for (int axis = 0; axis < 3; ++axis)
        if (signs & (1 << axis)) w[axis] = -w[axis];
      out.push_back(w);
    }
}

// Searches for a shell-compatible ray target whose walk visits `cell`.
// Candidate targets sit along the direction of `cell` scaled out to the
// sphere; validity is confirmed with the exact walk.
std::optional<BlockPos> find_cover_target(const BlockPos& cell, int radius) {
  int dominant = 0;
  for (int axis = 1; axis < 3; ++axis)
    if (std::abs(cell[axis]) > std::abs(cell[dominant])) dominant = axis;
  const int a = std::abs(cell[dominant]);
  if (a == 0) return std::nullopt;
  const double rho = cell.cast<double>().norm();
  const int other[2] = {dominant == 0 ? 1 : 0, dominant == 2 ? 1 : 2};

  const auto lo2 = static_cast<std::int64_t>(radius - 1) * (radius - 1);
  const auto hi2 = static_cast<std::int64_t>(radius + 1) * (radius + 1);
  const int n_lo = std::max(a, static_cast<int>(std::floor(a * (radius - 1) / rho)) - 1);
  const int n_hi = static_cast<int>(std::ceil(a * (radius + 1) / rho)) + 1;
  for (int n = n_lo; n <= n_hi; ++n) {
    int m_candidates[2][3];
    for (int k = 0; k < 2; ++k) {
      const auto center = round_div_half_away(static_cast<std::int64_t>(n) * cell[other[k]], a);
      m_candidates[k][0] = static_cast<int>(center);
      m_candidates[k][1] = static_cast<int>(center) - 1;
      m_candidates[k][2] = static_cast<int>(center) + 1;
    }
    for (int i = 0; i < 3; ++i) {
      if (round_div_half_away(static_cast<std::int64_t>(a) * m_candidates[0][i], n) !=
          cell[other[0]])
        continue;
      for (int j = 0; j < 3; ++j) {
        if (round_div_half_away(static_cast<std::int64_t>(a) * m_candidates[1][j], n) !=
            cell[other[1]])
          continue;
        BlockPos target;
        target[dominant] = cell[dominant] > 0 ? n : -n;
        target[other[0]] = m_candidates[0][i];
        target[other[1]] = m_candidates[1][j];
        const std::int64_t norm2 = target.cast<std::int64_t>().squaredNorm();
        if (norm2 < lo2 || norm2 > hi2) continue;
        if (ray_visits(target, cell)) return target;
      }
    }
  }
  return std::nullopt;
}

}  // namespace

SphereShell sphere_shell(int radius) {
  if (radius < 1) throw std::invalid_argument("sphere_shell: radius must be >= 1");

  // Base rasterization: all offsets v with round(|v|) == radius, i.e.
  // |v|^2 in [r^2 - r + 1, r^2 + r].
  const auto lo = static_cast<std::int64_t>(radius) * radius - radius + 1;
  const auto hi = static_cast<std::int64_t>(radius) * radius + radius;
  std::vector<BlockPos> offsets;
  offsets.reserve(static_cast<std::size_t>(14.0 * radius * radius) + 32);
  for (int y = -radius; y <= radius; ++y) {
    for (int x = -radius; x <= radius; ++x) {
      const std::int64_t xy2 =
          static_cast<std::int64_t>(x) * x + static_cast<std::int64_t>(y) * y;
      if (xy2 > hi) continue;
      const std::int64_t z2_hi = hi - xy2;
      const std::int64_t z2_lo = lo - xy2;
      const std::int64_t z_max = isqrt_floor(z2_hi);
      std::int64_t z_min = 0;
      if (z2_lo > 0) {
        z_min = isqrt_floor(z2_lo);
        if (z_min * z_min < z2_lo) ++z_min;
      }
      for (std::int64_t z = z_min; z <= z_max; ++z) {
        offsets.emplace_back(x, y, static_cast<int>(z));
        if (z != 0) offsets.emplace_back(x, y, static_cast<int>(-z));
      }
    }
  }

  if (radius <= kShellCompletionMaxRadius) {
    CoverageGrid covered(radius);
    for (const auto& v : offsets) covered.mark_ray(v);
    const auto r2 = static_cast<std::int64_t>(radius) * radius;
    std::vector<BlockPos> additions;
    auto ensure_covered = [&](const BlockPos& cell) {
      if (covered.marked(cell)) return;
      auto target = find_cover_target(cell, radius);
      if (!target) {
        // cells on the outermost band are valid targets themselves
        const std::int64_t n2 = cell.cast<std::int64_t>().squaredNorm();
        if (n2 < static_cast<std::int64_t>(radius - 1) * (radius - 1))
          throw std::logic_error("sphere_shell: no coverage target found for interior cell");
        target = cell;
      }
      additions.clear();
      append_signed_permutations(*target, additions);
      for (const auto& v : additions) covered.mark_ray(v);
      offsets.insert(offsets.end(), additions.begin(), additions.end());
    };
    // full Euclidean ball, plus the 26-neighborhood so even radius 1 sees
    // every adjacent cell
    for (int y = -radius; y <= radius; ++y)
      for (int x = -radius; x <= radius; ++x)
        for (int z = -radius; z <= radius; ++z) {
          const BlockPos cell(x, y, z);
          if (cell == BlockPos::Zero()) continue;
          if (cell.cast<std::int64_t>().squaredNorm() > r2 &&
              (std::abs(x) > 1 || std::abs(y) > 1 || std::abs(z) > 1))
            continue;
          ensure_covered(cell);
        }
  }

  std::sort(offsets.begin(), offsets.end(), PosLessYXZ{});
  offsets.erase(std::unique(offsets.begin(), offsets.end()), offsets.end());

  SphereShell shell;
  shell.radius = radius;
  shell.offsets = std::move(offsets);
  return shell;
}

const SphereShell& shared_sphere_shell(int radius) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<SphereShell>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[radius];
  if (!slot) slot = std::make_unique<SphereShell>(sphere_shell(radius));
  return *slot;
}

}  // namespace voxelvist
