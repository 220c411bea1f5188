// Copyright (c) 2026 The voxelvist authors
// SPDX-License-Identifier: Apache-2.0
#include "test_support.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace voxelvist::testing {

const BlockClasses& default_classes() {
  static const BlockClasses classes =
      load_block_classes(std::filesystem::path(VOXELVIST_DATA_DIR) / "default_classes.txt");
  return classes;
}

WorldBuilder::WorldBuilder(const BlockPos& dims, const BlockPos& origin)
    : dims_(dims), origin_(origin) {
  cells_.assign(static_cast<std::size_t>(dims.x()) * dims.y() * dims.z(), 0);
}

WorldBuilder& WorldBuilder::set(const BlockPos& p, const std::string& name) {
  const BlockPos local = p - origin_;
  if (local.x() < 0 || local.x() >= dims_.x() || local.y() < 0 || local.y() >= dims_.y() ||
      local.z() < 0 || local.z() >= dims_.z())
    throw std::out_of_range("WorldBuilder::set outside dims");
  const std::size_t i = static_cast<std::size_t>(local.x()) +
                        static_cast<std::size_t>(dims_.x()) *
                            (static_cast<std::size_t>(local.z()) +
                             static_cast<std::size_t>(dims_.z()) * local.y());
  cells_[i] = palette_.add(name);
  return *this;
}

WorldBuilder& WorldBuilder::fill(const BlockPos& lo, const BlockPos& hi, const std::string& name) {
  for (int y = lo.y(); y <= hi.y(); ++y)
    for (int x = lo.x(); x <= hi.x(); ++x)
      for (int z = lo.z(); z <= hi.z(); ++z) set(BlockPos(x, y, z), name);
  return *this;
}

VoxelWorld WorldBuilder::build() const { return VoxelWorld::create(dims_, origin_, palette_, cells_); }

VoxelWorld make_flat_world(int sx, int sy, int sz, const std::string& floor_block) {
  WorldBuilder b(BlockPos(sx, sy, sz));
  b.fill(BlockPos(0, 0, 0), BlockPos(sx - 1, 0, sz - 1), floor_block);
  return b.build();
}

VoxelWorld make_sealed_box_world() {
  WorldBuilder b(BlockPos(3, 4, 3));
  b.fill(BlockPos(0, 0, 0), BlockPos(2, 3, 2), "stone");
  b.set(BlockPos(1, 1, 1), "air").set(BlockPos(1, 2, 1), "air");
  return b.build();
}

namespace {

double lattice_noise(std::uint64_t seed, int x, int z, int scale, std::uint64_t lane) {
  auto corner = [&](int cx, int cz) {
    std::uint64_t s = seed ^ lane;
    s ^= static_cast<std::uint64_t>(cx) * 0x9E3779B97F4A7C15ull;
    s ^= static_cast<std::uint64_t>(cz) * 0xC2B2AE3D27D4EB4Full;
    std::uint64_t state = s;
    return static_cast<double>(splitmix64(state) >> 11) / static_cast<double>(1ull << 53);
  };
  const int cx = x >= 0 ? x / scale : (x - scale + 1) / scale;
  const int cz = z >= 0 ? z / scale : (z - scale + 1) / scale;
  const double fx = static_cast<double>(x - cx * scale) / scale;
  const double fz = static_cast<double>(z - cz * scale) / scale;
  const double v00 = corner(cx, cz), v10 = corner(cx + 1, cz);
  const double v01 = corner(cx, cz + 1), v11 = corner(cx + 1, cz + 1);
  return (v00 * (1 - fx) + v10 * fx) * (1 - fz) + (v01 * (1 - fx) + v11 * fx) * fz;
}

}  // namespace

VoxelWorld make_terrain_world(std::uint64_t seed, int sx, int sy, int sz, int clutter) {
  WorldBuilder b(BlockPos(sx, sy, sz));
  const int base = std::max(2, sy / 4);
  const int relief = std::max(2, sy / 3);
  std::vector<int> height(static_cast<std::size_t>(sx) * sz);
  for (int x = 0; x < sx; ++x)
    for (int z = 0; z < sz; ++z) {
      const double n = 0.7 * lattice_noise(seed, x, z, 9, 1) + 0.3 * lattice_noise(seed, x, z, 4, 2);
      int h = base + static_cast<int>(std::floor(n * relief));
      h = std::min(h, sy - 4);
      height[static_cast<std::size_t>(x) * sz + z] = h;
      b.fill(BlockPos(x, 0, z), BlockPos(x, h - 1, z), "stone");
      b.set(BlockPos(x, h - 1, z), n > 0.55 ? "grass_block" : "dirt");
    }

  std::uint64_t rng = split_seed(seed, 777);
  // a shallow water pool
  {
    const int px = 2 + static_cast<int>(bounded_rand(rng, std::max(1, sx - 8)));
    const int pz = 2 + static_cast<int>(bounded_rand(rng, std::max(1, sz - 8)));
    const int pr = 2 + static_cast<int>(bounded_rand(rng, 3));
    for (int x = std::max(0, px - pr); x <= std::min(sx - 1, px + pr); ++x)
      for (int z = std::max(0, pz - pr); z <= std::min(sz - 1, pz + pr); ++z) {
        const int h = height[static_cast<std::size_t>(x) * sz + z];
        b.fill(BlockPos(x, std::max(0, h - 2), z), BlockPos(x, h - 1, z), "water");
      }
  }
  if (clutter >= 1) {
    // a hut: walls two high with a door gap, flat roof
    const int hx = 3 + static_cast<int>(bounded_rand(rng, std::max(1, sx - 12)));
    const int hz = 3 + static_cast<int>(bounded_rand(rng, std::max(1, sz - 12)));
    const int w = 4 + static_cast<int>(bounded_rand(rng, 3));
    const int d = 4 + static_cast<int>(bounded_rand(rng, 3));
    const int floor_y = height[static_cast<std::size_t>(hx) * sz + hz];
    if (floor_y + 4 < sy) {
      for (int x = hx; x < std::min(sx, hx + w); ++x)
        for (int z = hz; z < std::min(sz, hz + d); ++z) {
          const bool wall = x == hx || z == hz || x == std::min(sx, hx + w) - 1 ||
                            z == std::min(sz, hz + d) - 1;
          b.fill(BlockPos(x, 0, z), BlockPos(x, floor_y - 1, z), "stone");
          b.set(BlockPos(x, floor_y - 1, z), "oak_planks");
          if (wall) {
            b.set(BlockPos(x, floor_y, z), "oak_planks");
            b.set(BlockPos(x, floor_y + 1, z), "oak_planks");
          } else {
            b.set(BlockPos(x, floor_y, z), "air");
            b.set(BlockPos(x, floor_y + 1, z), "air");
          }
          b.set(BlockPos(x, floor_y + 2, z), "oak_planks");  // roof
        }
      b.set(BlockPos(hx, floor_y, hz + 1), "oak_door");  // doorway
      b.set(BlockPos(hx, floor_y + 1, hz + 1), "oak_door");
      if (hx + 2 < sx) b.set(BlockPos(hx + 2, floor_y + 1, hz), "glass");  // window
    }
  }
  if (clutter >= 2) {
    // free-standing wall segment and pillars
    for (int i = 0; i < 2 + clutter; ++i) {
      const int x = static_cast<int>(bounded_rand(rng, sx));
      const int z = static_cast<int>(bounded_rand(rng, sz));
      const int h = height[static_cast<std::size_t>(x) * sz + z];
      const int len = 2 + static_cast<int>(bounded_rand(rng, 5));
      const bool along_x = bounded_rand(rng, 2) == 0;
      for (int k = 0; k < len; ++k) {
        const int wx = along_x ? std::min(sx - 1, x + k) : x;
        const int wz = along_x ? z : std::min(sz - 1, z + k);
        if (h + 2 < sy) b.fill(BlockPos(wx, h, wz), BlockPos(wx, h + 1, wz), "stone_bricks");
      }
    }
  }
  if (clutter >= 3) {
    // stray floating blocks to exercise odd sight lines
    for (int i = 0; i < 10; ++i) {
      const int x = static_cast<int>(bounded_rand(rng, sx));
      const int z = static_cast<int>(bounded_rand(rng, sz));
      const int h = height[static_cast<std::size_t>(x) * sz + z];
      const int y = std::min(sy - 1, h + 2 + static_cast<int>(bounded_rand(rng, 4)));
      b.set(BlockPos(x, y, z), bounded_rand(rng, 3) == 0 ? "glass" : "oak_log");
    }
  }
  return b.build();
}

std::vector<BlockPos> pick_headspaces(const WorldView& view, std::size_t count,
                                      std::uint64_t seed) {
  std::vector<BlockPos> all = enumerate_headspaces(view);
  std::uint64_t rng = split_seed(seed, 31337);
  const std::size_t take = std::min(count, all.size());
  for (std::size_t i = 0; i < take; ++i) {
    const std::size_t j = i + bounded_rand(rng, all.size() - i);
    std::swap(all[i], all[j]);
  }
  all.resize(take);
  return all;
}

std::vector<BlockPos> dda_line_oracle(const BlockPos& a, const BlockPos& b) {
  const BlockPos delta = b - a;
  const int steps = delta.cwiseAbs().maxCoeff();
  std::vector<BlockPos> cells;
  cells.reserve(static_cast<std::size_t>(steps) + 1);
  cells.push_back(a);
  for (int i = 1; i <= steps; ++i) {
    BlockPos p;
    for (int axis = 0; axis < 3; ++axis) {
      const long long num = static_cast<long long>(i) * delta[axis];
      const long long twice = 2 * num;
      long long rounded;
      if (twice % (2LL * steps) == (num >= 0 ? 1LL : -1LL) * steps) {
        // exact half step: away from zero
        rounded = num >= 0 ? (twice + steps) / (2 * steps) : (twice - steps) / (2 * steps);
      } else {
        rounded = std::llround(static_cast<double>(num) / steps);
      }
      p[axis] = a[axis] + static_cast<int>(rounded);
    }
    cells.push_back(p);
  }
  return cells;
}

bool visible_oracle(const WorldView& view, const BlockPos& a, const BlockPos& b) {
  const auto cells = dda_line_oracle(a, b);
  for (std::size_t i = 1; i + 1 < cells.size(); ++i)
    if (!view.is_transparent(cells[i])) return false;
  return true;
}

PosSet oracle_visible_headspaces(const WorldView& view, const BlockPos& centroid, int radius) {
  PosSet out;
  const auto r2 = static_cast<std::int64_t>(radius) * radius;
  for (const BlockPos& h : enumerate_headspaces(view)) {
    if ((h - centroid).cast<std::int64_t>().squaredNorm() > r2) continue;
    if (visible_oracle(view, centroid, h)) out.insert(h);
  }
  return out;
}

std::vector<BlockPos> ball_cells(int radius) {
  std::vector<BlockPos> cells;
  const auto r2 = static_cast<std::int64_t>(radius) * radius;
  for (int y = -radius; y <= radius; ++y)
    for (int x = -radius; x <= radius; ++x)
      for (int z = -radius; z <= radius; ++z)
        if (static_cast<std::int64_t>(x) * x + static_cast<std::int64_t>(y) * y +
                static_cast<std::int64_t>(z) * z <=
            r2)
          cells.emplace_back(x, y, z);
  return cells;
}

double jaccard(const PosSet& a, const PosSet& b) {
  std::size_t inter = 0;
  for (const auto& p : a) inter += b.count(p);
  const std::size_t uni = a.size() + b.size() - inter;
  return uni == 0 ? 1.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

std::map<std::uint64_t, int> reach_oracle(const WorldView& view, const BlockPos& start_support,
                                          int steps) {
  // gather every support-of-a-headspace in and just outside the bounds, then
  // relax lateral moves until nothing improves
  const VoxelWorld& w = view.world();
  std::vector<BlockPos> supports;
  for (int y = w.origin().y() - 2; y < w.origin().y() + w.dims().y(); ++y)
    for (int x = w.origin().x(); x < w.origin().x() + w.dims().x(); ++x)
      for (int z = w.origin().z(); z < w.origin().z() + w.dims().z(); ++z)
        if (view.is_headspace(BlockPos(x, y + 2, z))) supports.push_back(BlockPos(x, y, z));

  std::map<std::uint64_t, int> best;
  for (const auto& s : supports) best[pos_key(s)] = steps + 1;  // sentinel: unreached
  best[pos_key(start_support)] = 0;

  auto move_allowed = [&](const BlockPos& from, const BlockPos& to) {
    const int dx = std::abs(to.x() - from.x());
    const int dz = std::abs(to.z() - from.z());
    if (dx + dz != 1) return false;                      // one lateral step
    if (to.y() > from.y() + 1) return false;             // climb at most one
    if (to.y() == from.y() + 1 && !view.is_empty(from + BlockPos(0, 3, 0)))
      return false;                                       // body sweep above the head
    return true;
  };

  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& from : supports) {
      const int d = best[pos_key(from)];
      if (d > steps - 1) continue;
      for (const auto& to : supports) {
        if (!move_allowed(from, to)) continue;
        auto& slot = best[pos_key(to)];
        if (d + 1 < slot) {
          slot = d + 1;
          changed = true;
        }
      }
    }
  }
  std::map<std::uint64_t, int> out;
  for (const auto& [key, d] : best)
    if (d <= steps) out[key] = d;
  return out;
}

namespace {

std::vector<double> brute_ranks(const std::vector<double>& values) {
  const std::size_t n = values.size();
  std::vector<double> ranks(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t below = 0, equal = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (values[j] < values[i]) ++below;
      if (values[j] == values[i]) ++equal;
    }
    // average rank of the tie run containing i
    ranks[i] = static_cast<double>(below) + (static_cast<double>(equal) + 1.0) / 2.0;
  }
  return ranks;
}

double pearson_brute(const std::vector<double>& xs, const std::vector<double>& ys) {
  const auto n = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace

double spearman_brute(const std::vector<double>& xs, const std::vector<double>& ys) {
  return pearson_brute(brute_ranks(xs), brute_ranks(ys));
}

double permutation_pvalue(const std::vector<double>& xs, const std::vector<double>& ys,
                          int resamples, std::uint64_t seed) {
  std::vector<double> rx = brute_ranks(xs);
  const std::vector<double> ry = brute_ranks(ys);
  const double observed = std::fabs(pearson_brute(rx, ry));
  std::uint64_t rng = split_seed(seed, 4242);
  int at_least = 0;
  for (int r = 0; r < resamples; ++r) {
    for (std::size_t i = rx.size() - 1; i > 0; --i) {
      const std::size_t j = bounded_rand(rng, i + 1);
      std::swap(rx[i], rx[j]);
    }
    if (std::fabs(pearson_brute(rx, ry)) >= observed - 1e-12) ++at_least;
  }
  return (static_cast<double>(at_least) + 1.0) / (static_cast<double>(resamples) + 1.0);
}

}  // namespace voxelvist::testing
