// Copyright (c) 2026 The voxelvist authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "voxelvist/geometry.hpp"
#include "voxelvist/reachability.hpp"
#include "voxelvist/world.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace voxelvist {

struct PerimeterCell {
  BlockPos pos;
  std::string name;  // block type at pos ("air" beyond the world bounds)
};

/// The base visibility sets for one centroid, produced by sweeping rays to
/// every shell offset.
///
/// Each ray marches from the centroid outward and stops at the first
/// non-transparent cell, which becomes its endpoint and joins `perimeter`;
/// endpoints also join `real_perimeter` iff they are opaque, so rays that
/// reach the shell contribute their transparent end cell (usually air) to
/// the perimeter only. Headspace cells are collected along unobstructed ray
/// prefixes, limited to Euclidean distance <= radius from the centroid so
/// the set matches the per-pair `visible` definition.
struct IsovistSets {
  BlockPos centroid = BlockPos::Zero();
  int radius = 0;
  std::vector<BlockPos> visible_headspaces;   // sorted (y,x,z); contains centroid
  std::vector<BlockPos> supports;             // blocks two below each visible headspace
  std::vector<PerimeterCell> perimeter;       // sorted by position
  std::vector<PerimeterCell> real_perimeter;  // opaque subset of perimeter
  std::vector<double> radial_lengths;         // one per shell offset, offset order
  std::vector<BlockPos> radial_endpoints;     // aligned with radial_lengths
};

/// Sweeps the isovist for one centroid. The centroid must be a headspace.
IsovistSets compute_isovist(const WorldView& view, const BlockPos& centroid,
                            const SphereShell& shell);
IsovistSets compute_isovist(const VoxelWorld& world, const BlockClasses& classes,
                            const BlockPos& centroid, const SphereShell& shell);

/// Reference pairwise visibility: true iff every interior cell of
/// bresenham3d(a, b), endpoints excluded, is transparent.
bool visible(const WorldView& view, const BlockPos& a, const BlockPos& b);

/// Distance between the centroid and the component-wise mean of the radial
/// endpoints. Zero when obstructions are symmetric, large near walls.
double drift(std::span<const BlockPos> endpoints, const BlockPos& centroid);

/// Which ratio the clutter field reports.
///  kPerimeterSupports:       |supports ∩ perimeter| / area (default)
///  kReachableVisibleSupports: |reach ∩ supports ∩ perimeter| / area
enum class ClutterMode { kPerimeterSupports, kReachableVisibleSupports };

/// The derived scalar metrics for one centroid. openness and occlusivity are
/// absent (not zero, not infinity) when their denominator is zero.
struct IsovistMetrics {
  std::int64_t area = 0;            // |visible_headspaces|
  std::int64_t perimeter = 0;       // |P|
  std::int64_t real_perimeter = 0;  // |Pr|
  std::int64_t diversity = 0;       // distinct block-type names in P
  double mean_radial = 0;
  double var_radial = 0;
  double vista = 0;                 // max radial length
  double drift = 0;
  double roundness = 0;             // area / perimeter
  std::optional<double> openness;   // area / real_perimeter
  std::int64_t reachability = 0;    // |R|
  std::optional<double> occlusivity;  // |R ∩ supports| / reachability
  double clutter = 0;               // see ClutterMode
};

IsovistMetrics derive_metrics(const IsovistSets& sets, const ReachSet& reach,
                              ClutterMode clutter_mode = ClutterMode::kPerimeterSupports);

}  // namespace voxelvist
