// Copyright (c) 2026 The voxelvist authors
// SPDX-License-Identifier: Apache-2.0
#include "voxelvist/world.hpp"

#include <algorithm>
#include <cstdio>

namespace voxelvist {

std::string format_real(double v) {
  if (v == 0.0) v = 0.0;  // normalize -0
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::uint16_t Palette::add(const std::string& name) {
  if (auto it = index_.find(name); it != index_.end()) return it->second;
  if (names_.size() >= 0xFFFF) throw ParseError("palette overflow: more than 65534 block types");
  const auto id = static_cast<std::uint16_t>(names_.size());
  names_.push_back(name);
  index_.emplace(name, id);
  return id;
}

std::uint16_t Palette::id_of(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw ParseError("unknown block type: " + name);
  return it->second;
}

VoxelWorld VoxelWorld::create(const BlockPos& dims, const BlockPos& origin, Palette palette,
                              std::vector<std::uint16_t> cells) {
  if (dims.x() <= 0 || dims.y() <= 0 || dims.z() <= 0)
    throw ParseError("world dimensions must be positive");
  const auto expected = static_cast<std::size_t>(dims.x()) * static_cast<std::size_t>(dims.y()) *
                        static_cast<std::size_t>(dims.z());
  if (cells.size() != expected)
    throw ParseError("cell count " + std::to_string(cells.size()) + " does not match dims product " +
                     std::to_string(expected));
  for (std::uint16_t id : cells)
    if (id >= palette.size())
      throw ParseError("cell id " + std::to_string(id) + " outside palette of size " +
                       std::to_string(palette.size()));
  VoxelWorld w;
  w.dims_ = dims;
  w.origin_ = origin;
  w.palette_ = std::move(palette);
  w.cells_ = std::move(cells);
  return w;
}

const std::string& block_at(const VoxelWorld& world, const BlockPos& p) {
  return world.palette().name(world.id_at(p));
}

void BlockClasses::validate() const {
  if (!empty.count("air")) throw ParseError("block classes: \"air\" must be in [empty]");
  if (!transparent.count("air")) throw ParseError("block classes: \"air\" must be in [transparent]");
  for (const auto& d : doors)
    if (!transparent.count(d))
      throw ParseError("block classes: door \"" + d + "\" must also be in [transparent]");
  for (const auto& e : empty)
    if (standable.count(e))
      throw ParseError("block classes: \"" + e + "\" cannot be both empty and standable");
}

WorldView::WorldView(const VoxelWorld& world, const BlockClasses& classes) : world_(&world) {
  classes.validate();
  auto flags_for = [&](const std::string& name) {
    std::uint8_t f = 0;
    if (classes.empty.count(name)) f |= static_cast<std::uint8_t>(ClassFlags::kEmpty);
    if (classes.standable.count(name)) f |= static_cast<std::uint8_t>(ClassFlags::kStandable);
    if (classes.transparent.count(name)) f |= static_cast<std::uint8_t>(ClassFlags::kTransparent);
    if (classes.doors.count(name)) f |= static_cast<std::uint8_t>(ClassFlags::kDoor);
    return f;
  };
  id_flags_.reserve(world.palette().size());
  for (const auto& name : world.palette().names()) id_flags_.push_back(flags_for(name));
  air_flags_ = flags_for("air");

  const BlockPos d = world.dims();
  const std::size_t n = world.cells().size();
  headspace_bits_.assign((n + 63) / 64, 0);
  const auto em = static_cast<std::uint8_t>(ClassFlags::kEmpty);
  const auto st = static_cast<std::uint8_t>(ClassFlags::kStandable);
  for (int y = 0; y < d.y(); ++y) {
    for (int z = 0; z < d.z(); ++z) {
      for (int x = 0; x < d.x(); ++x) {
        const BlockPos local(x, y, z);
        const std::size_t i = world.cell_index(local);
        if (!(id_flags_[world.cells()[i]] & em)) continue;
        // feet and support read through flags_at so the open-boundary policy
        // applies below the world floor
        const BlockPos p = local + world.origin();
        if (!(flags_at(p - BlockPos(0, 1, 0)) & em)) continue;
        if (!(flags_at(p - BlockPos(0, 2, 0)) & st)) continue;
        headspace_bits_[i >> 6] |= 1ull << (i & 63);
      }
    }
  }
}

std::vector<BlockPos> enumerate_headspaces(const WorldView& view) {
  std::vector<BlockPos> out;
  const VoxelWorld& w = view.world();
  const BlockPos d = w.dims();
  for (int y = 0; y < d.y(); ++y)
    for (int x = 0; x < d.x(); ++x)
      for (int z = 0; z < d.z(); ++z) {
        const BlockPos p = BlockPos(x, y, z) + w.origin();
        if (view.is_headspace(p)) out.push_back(p);
      }
  return out;  // loop order already yields (y,x,z) sorted output
}

std::vector<BlockPos> enumerate_headspaces(const VoxelWorld& world, const BlockClasses& classes) {
  return enumerate_headspaces(WorldView(world, classes));
}

}  // namespace voxelvist
