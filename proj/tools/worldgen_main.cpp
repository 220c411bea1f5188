// Copyright (c) 2026 The voxelvist authors
// SPDX-License-Identifier: Apache-2.0
//
// Deterministic demo-world generator: an island with a village, a tower,
// caves and a shoreline, written as voxel-json. Regenerates
// data/demo_world.json byte-for-byte for a fixed seed.

#include "voxelvist/world.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <iostream>
#include <vector>

namespace {

using namespace voxelvist;

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

class Canvas {
 public:
  Canvas(const BlockPos& dims, const BlockPos& origin) : dims_(dims), origin_(origin) {
    cells_.assign(static_cast<std::size_t>(dims.x()) * dims.y() * dims.z(), 0);
  }

  void set(int x, int y, int z, const std::string& name) {
    if (x < 0 || x >= dims_.x() || y < 0 || y >= dims_.y() || z < 0 || z >= dims_.z()) return;
    cells_[static_cast<std::size_t>(x) +
           static_cast<std::size_t>(dims_.x()) *
               (static_cast<std::size_t>(z) + static_cast<std::size_t>(dims_.z()) * y)] =
        palette_.add(name);
  }

  void fill(int x0, int y0, int z0, int x1, int y1, int z1, const std::string& name) {
    for (int y = y0; y <= y1; ++y)
      for (int x = x0; x <= x1; ++x)
        for (int z = z0; z <= z1; ++z) set(x, y, z, name);
  }

  VoxelWorld build() const { return VoxelWorld::create(dims_, origin_, palette_, cells_); }

 private:
  BlockPos dims_, origin_;
  Palette palette_;
  std::vector<std::uint16_t> cells_;
};

VoxelWorld generate(std::uint64_t seed, int sx, int sy, int sz, int origin_y) {
  Canvas canvas(BlockPos(sx, sy, sz), BlockPos(0, origin_y, 0));
  const int sea = sy * 9 / 16;           // local sea level
  const double cx = (sx - 1) / 2.0, cz = (sz - 1) / 2.0;
  const double island = std::min(sx, sz) * 0.40;

  std::vector<int> height(static_cast<std::size_t>(sx) * sz);
  for (int x = 0; x < sx; ++x)
    for (int z = 0; z < sz; ++z) {
      const double dist = std::hypot(x - cx, z - cz);
      const double falloff = std::max(0.0, 1.0 - dist / island);
      const double n = 0.65 * lattice_noise(seed, x, z, 16, 1) +
                       0.35 * lattice_noise(seed, x, z, 5, 2);
      int h = static_cast<int>(sea - 5 + falloff * (sy * 0.45) + (n - 0.5) * 7.0);
      h = std::clamp(h, 3, sy - 6);
      height[static_cast<std::size_t>(x) * sz + z] = h;

      canvas.fill(x, 0, z, x, h - 1, z, "stone");
      if (h > sea) {
        canvas.set(x, h - 1, z, h - 1 <= sea + 1 ? "sand" : "grass_block");
        if (h - 2 >= 0) canvas.set(x, h - 2, z, "dirt");
      } else {
        canvas.set(x, h - 1, z, "gravel");
        canvas.fill(x, h, z, x, sea - 1, z, "water");
      }
    }

  std::uint64_t rng = split_seed(seed, 99);
  auto ground = [&](int x, int z) { return height[static_cast<std::size_t>(x) * sz + z]; };

  // village: huts on land, flattened floors, doors and windows
  int huts_placed = 0;
  for (int attempt = 0; attempt < 64 && huts_placed < 5; ++attempt) {
    const int w = 5 + static_cast<int>(bounded_rand(rng, 3));
    const int d = 5 + static_cast<int>(bounded_rand(rng, 3));
    const int hx = 2 + static_cast<int>(bounded_rand(rng, std::max(1, sx - w - 4)));
    const int hz = 2 + static_cast<int>(bounded_rand(rng, std::max(1, sz - d - 4)));
    const int floor_y = ground(hx + w / 2, hz + d / 2);
    if (floor_y <= sea + 1 || floor_y + 5 >= sy) continue;
    bool on_land = true;
    for (int x = hx; x < hx + w && on_land; ++x)
      for (int z = hz; z < hz + d && on_land; ++z)
        if (ground(x, z) <= sea) on_land = false;
    if (!on_land) continue;

    for (int x = hx; x < hx + w; ++x)
      for (int z = hz; z < hz + d; ++z) {
        canvas.fill(x, std::min(floor_y, ground(x, z)) - 1, z, x, sy - 1, z, "air");
        canvas.fill(x, ground(x, z) - 1, z, x, floor_y - 1, z, "stone");
        canvas.set(x, floor_y - 1, z, "oak_planks");
        const bool wall = x == hx || z == hz || x == hx + w - 1 || z == hz + d - 1;
        if (wall) canvas.fill(x, floor_y, z, x, floor_y + 2, z, "oak_planks");
        canvas.set(x, floor_y + 3, z, "oak_planks");  // roof
      }
    canvas.set(hx + w / 2, floor_y, hz, "oak_door");
    canvas.set(hx + w / 2, floor_y + 1, hz, "oak_door");
    canvas.set(hx, floor_y + 1, hz + d / 2, "glass");
    canvas.set(hx + w - 1, floor_y + 1, hz + d / 2, "glass");
    ++huts_placed;
  }

  // lookout tower with internal floors
  {
    const int tx = sx / 2 + 4, tz = sz / 2 - 6;
    const int base_y = ground(tx + 2, tz + 2);
    if (base_y > sea && base_y + 14 < sy) {
      for (int level = 0; level < 3; ++level) {
        const int fy = base_y + level * 4;
        canvas.fill(tx, fy, tz, tx + 4, fy + 3, tz + 4, "air");
        for (int x = tx; x <= tx + 4; ++x)
          for (int z = tz; z <= tz + 4; ++z) {
            const bool wall = x == tx || z == tz || x == tx + 4 || z == tz + 4;
            canvas.set(x, fy - 1, z, "stone_bricks");
            if (wall) canvas.fill(x, fy, z, x, fy + 3, z, "stone_bricks");
          }
        canvas.set(tx + 2, fy, tz, level == 0 ? "oak_door" : "glass");
        canvas.set(tx + 2, fy + 1, tz, level == 0 ? "oak_door" : "glass");
      }
      canvas.fill(tx, base_y + 12, tz, tx + 4, base_y + 12, tz + 4, "stone_bricks");
    }
  }

  // scattered trees
  for (int i = 0; i < 24; ++i) {
    const int x = 2 + static_cast<int>(bounded_rand(rng, sx - 4));
    const int z = 2 + static_cast<int>(bounded_rand(rng, sz - 4));
    const int h = ground(x, z);
    if (h <= sea + 1 || h + 6 >= sy) continue;
    const int trunk = 3 + static_cast<int>(bounded_rand(rng, 3));
    canvas.fill(x, h, z, x, h + trunk - 1, z, "oak_log");
    canvas.fill(x - 1, h + trunk, z - 1, x + 1, h + trunk + 1, z + 1, "oak_leaves");
  }

  // caves: air pockets in the stone body (below the surface, often below the
  // heatmap's default height filter)
  for (int i = 0; i < 10; ++i) {
    const int x = 6 + static_cast<int>(bounded_rand(rng, std::max(1, sx - 12)));
    const int z = 6 + static_cast<int>(bounded_rand(rng, std::max(1, sz - 12)));
    const int h = ground(x, z);
    if (h < 10) continue;
    const int cy = 3 + static_cast<int>(bounded_rand(rng, std::max(1, h - 8)));
    const int r = 2 + static_cast<int>(bounded_rand(rng, 2));
    for (int dx = -r; dx <= r; ++dx)
      for (int dy = -r / 2; dy <= (r + 2) / 2 + 1; ++dy)
        for (int dz = -r; dz <= r; ++dz)
          if (dx * dx + dy * dy + dz * dz <= r * r + 1) canvas.set(x + dx, cy + dy, z + dz, "air");
  }

  return canvas.build();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"deterministic demo world generator"};
  std::string out_path = "demo_world.json";
  std::uint64_t seed = 7;
  int sx = 64, sy = 32, sz = 64, origin_y = 40;
  app.add_option("--out", out_path, "output voxel-json path")->capture_default_str();
  app.add_option("--seed", seed, "generation seed")->capture_default_str();
  app.add_option("--size-x", sx)->capture_default_str();
  app.add_option("--size-y", sy)->capture_default_str();
  app.add_option("--size-z", sz)->capture_default_str();
  app.add_option("--origin-y", origin_y, "world y of the lowest layer")->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  try {
    const auto world = generate(seed, sx, sy, sz, origin_y);
    save_world(world, out_path, WorldFormat::kVoxelJson);

    BlockClasses classes;
    classes.empty = {"air", "oak_door"};
    classes.standable = {"stone",      "dirt",     "grass_block", "sand",       "gravel",
                         "oak_planks", "oak_log",  "oak_leaves",  "stone_bricks", "glass"};
    classes.transparent = {"air", "water", "glass", "oak_door"};
    classes.doors = {"oak_door"};
    const auto heads = enumerate_headspaces(world, classes);
    std::cout << "wrote " << out_path << "\n"
              << "dims: " << sx << ' ' << sy << ' ' << sz << " origin_y: " << origin_y << "\n"
              << "headspaces: " << heads.size() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "voxelvist-worldgen: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
