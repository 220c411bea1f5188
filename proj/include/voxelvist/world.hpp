// Copyright (c) 2026 The voxelvist authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "voxelvist/common.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace voxelvist {

/// Ordered list of block-type names. Ids are assigned by position and
/// id 0 is always the canonical "air" type.
class Palette {
 public:
  Palette() { add("air"); }

  std::uint16_t add(const std::string& name);      // returns existing id if known
  std::uint16_t id_of(const std::string& name) const;  // throws if unknown
  bool contains(const std::string& name) const { return index_.count(name) != 0; }
  const std::string& name(std::uint16_t id) const { return names_.at(id); }
  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::uint16_t> index_;
};

/// Immutable dense 3D grid of block-type ids. Cells are stored x-fastest,
/// then z, then y. `origin` is the world coordinate of local cell (0,0,0);
/// all public queries take world coordinates.
///
/// Positions outside the loaded bounds read as "air": the boundary of a
/// blockworld is open, so map edges must not behave like walls.
class VoxelWorld {
 public:
  static VoxelWorld create(const BlockPos& dims, const BlockPos& origin,
                           Palette palette, std::vector<std::uint16_t> cells);

  const BlockPos& dims() const { return dims_; }
  const BlockPos& origin() const { return origin_; }
  const Palette& palette() const { return palette_; }
  const std::vector<std::uint16_t>& cells() const { return cells_; }

  bool in_bounds(const BlockPos& p) const {
    const BlockPos q = p - origin_;
    return q.x() >= 0 && q.x() < dims_.x() && q.y() >= 0 && q.y() < dims_.y() &&
           q.z() >= 0 && q.z() < dims_.z();
  }

  /// Palette id at p; 0 ("air") outside the bounds.
  std::uint16_t id_at(const BlockPos& p) const {
    return in_bounds(p) ? cells_[cell_index(p - origin_)] : 0;
  }

  std::size_t cell_index(const BlockPos& local) const {
    return static_cast<std::size_t>(local.x()) +
           static_cast<std::size_t>(dims_.x()) *
               (static_cast<std::size_t>(local.z()) +
                static_cast<std::size_t>(dims_.z()) * static_cast<std::size_t>(local.y()));
  }

 private:
  VoxelWorld() = default;
  BlockPos dims_ = BlockPos::Zero();
  BlockPos origin_ = BlockPos::Zero();
  Palette palette_;
  std::vector<std::uint16_t> cells_;
};

/// Block-type name at p ("air" outside the bounds).
const std::string& block_at(const VoxelWorld& world, const BlockPos& p);

/// Classification sets defining embodiment and vision rules. Configurable:
/// one classes file serves every world because membership is by name.
struct BlockClasses {
  std::unordered_set<std::string> empty;        // an avatar body fits inside
  std::unordered_set<std::string> standable;    // supports an avatar's feet
  std::unordered_set<std::string> transparent;  // vision passes through
  std::unordered_set<std::string> doors;        // see-through because openable

  /// Checks: "air" is empty+transparent, doors are transparent, and no name
  /// is both empty and standable. Throws ParseError on violation.
  void validate() const;
};

enum class ClassFlags : std::uint8_t {
  kNone = 0,
  kEmpty = 1,
  kStandable = 2,
  kTransparent = 4,
  kDoor = 8,
};

inline std::uint8_t operator&(std::uint8_t a, ClassFlags b) {
  return a & static_cast<std::uint8_t>(b);
}

/// Read-only view binding a world to a class configuration. Resolves the
/// per-name sets down to a per-palette-id flag table and a headspace bitmap
/// so ray marching never touches strings. Safe to share across threads.
class WorldView {
 public:
  WorldView(const VoxelWorld& world, const BlockClasses& classes);

  const VoxelWorld& world() const { return *world_; }

  std::uint8_t flags_at(const BlockPos& p) const {
    return world_->in_bounds(p) ? id_flags_[world_->cells()[world_->cell_index(p - world_->origin())]]
                                : air_flags_;
  }

  bool is_empty(const BlockPos& p) const { return flags_at(p) & ClassFlags::kEmpty; }
  bool is_standable(const BlockPos& p) const { return flags_at(p) & ClassFlags::kStandable; }
  bool is_transparent(const BlockPos& p) const { return flags_at(p) & ClassFlags::kTransparent; }

  /// True iff p is inside the loaded bounds and a standing avatar's head
  /// fits at p: empty cell, empty cell below, standable block two below.
  bool is_headspace(const BlockPos& p) const {
    if (!world_->in_bounds(p)) return false;
    const std::size_t i = world_->cell_index(p - world_->origin());
    return (headspace_bits_[i >> 6] >> (i & 63)) & 1u;
  }

  /// The standable block two cells beneath a headspace.
  static BlockPos support_of(const BlockPos& head) { return head - BlockPos(0, 2, 0); }

 private:
  const VoxelWorld* world_;
  std::vector<std::uint8_t> id_flags_;
  std::uint8_t air_flags_ = 0;
  std::vector<std::uint64_t> headspace_bits_;
};

/// All valid avatar head positions inside the loaded bounds, sorted (y,x,z).
std::vector<BlockPos> enumerate_headspaces(const VoxelWorld& world, const BlockClasses& classes);
std::vector<BlockPos> enumerate_headspaces(const WorldView& view);

// ---------------------------------------------------------------------------
// File formats
// ---------------------------------------------------------------------------

enum class WorldFormat { kLayeredText, kVoxelJson };

/// Loads a world file. Throws ParseError with file/line context on malformed
/// input and on dimension mismatches.
VoxelWorld load_world(const std::filesystem::path& path, WorldFormat format);
VoxelWorld load_world_stream(std::istream& in, WorldFormat format, const std::string& origin_name);

void save_world(const VoxelWorld& world, const std::filesystem::path& path, WorldFormat format);
void save_world_stream(const VoxelWorld& world, std::ostream& out, WorldFormat format);

/// Loads a sectioned block-classes file ([empty]/[standable]/[transparent]/
/// [doors], one name per line, '#' comments) and validates it.
BlockClasses load_block_classes(const std::filesystem::path& path);
BlockClasses load_block_classes_stream(std::istream& in, const std::string& origin_name);

}  // namespace voxelvist
