// Copyright (c) 2026 The voxelvist authors
// SPDX-License-Identifier: Apache-2.0
#include "voxelvist/isovist.hpp"

#include <algorithm>
#include <unordered_set>

namespace voxelvist {

namespace {
constexpr std::uint8_t kHeadspaceSeen = 1;
constexpr std::uint8_t kPerimeterSeen = 2;
}  // namespace

IsovistSets compute_isovist(const WorldView& view, const BlockPos& centroid,
                            const SphereShell& shell) {
  if (!view.is_headspace(centroid))
    throw std::invalid_argument("compute_isovist: centroid is not a headspace");

  const VoxelWorld& world = view.world();
  const auto transparent = static_cast<std::uint8_t>(ClassFlags::kTransparent);
  const auto radius2 = static_cast<std::int64_t>(shell.radius) * shell.radius;

  IsovistSets sets;
  sets.centroid = centroid;
  sets.radius = shell.radius;
  sets.radial_lengths.reserve(shell.offsets.size());
  sets.radial_endpoints.reserve(shell.offsets.size());

  // in-world dedupe by cell stamp; ray ends beyond the bounds dedupe by key
  std::vector<std::uint8_t> stamps(world.cells().size(), 0);
  std::vector<BlockPos> perimeter_positions;
  std::unordered_set<std::uint64_t> outside_perimeter;

  sets.visible_headspaces.push_back(centroid);  // self-visible at distance 0
  stamps[world.cell_index(centroid - world.origin())] |= kHeadspaceSeen;

  const Eigen::Vector3d centroid_center = centroid.cast<double>();
  for (const BlockPos& offset : shell.offsets) {
    const BlockPos target = centroid + offset;
    LineWalker walker(centroid, target);
    BlockPos terminal = target;
    while (!walker.done()) {
      walker.advance();
      const BlockPos& p = walker.pos();
      if (!(view.flags_at(p) & transparent)) {
        terminal = p;
        break;
      }
      if (view.is_headspace(p) && (p - centroid).cast<std::int64_t>().squaredNorm() <= radius2) {
        auto& stamp = stamps[world.cell_index(p - world.origin())];
        if (!(stamp & kHeadspaceSeen)) {
          stamp |= kHeadspaceSeen;
          sets.visible_headspaces.push_back(p);
        }
      }
    }
    sets.radial_lengths.push_back((terminal.cast<double>() - centroid_center).norm());
    sets.radial_endpoints.push_back(terminal);
    if (world.in_bounds(terminal)) {
      auto& stamp = stamps[world.cell_index(terminal - world.origin())];
      if (!(stamp & kPerimeterSeen)) {
        stamp |= kPerimeterSeen;
        perimeter_positions.push_back(terminal);
      }
    } else if (outside_perimeter.insert(pos_key(terminal)).second) {
      perimeter_positions.push_back(terminal);
    }
  }

  std::sort(sets.visible_headspaces.begin(), sets.visible_headspaces.end(), PosLessYXZ{});
  sets.supports.reserve(sets.visible_headspaces.size());
  for (const BlockPos& head : sets.visible_headspaces)
    sets.supports.push_back(WorldView::support_of(head));

  std::sort(perimeter_positions.begin(), perimeter_positions.end(), PosLessYXZ{});
  sets.perimeter.reserve(perimeter_positions.size());
  for (const BlockPos& p : perimeter_positions) {
    sets.perimeter.push_back({p, block_at(world, p)});
    if (!(view.flags_at(p) & transparent)) sets.real_perimeter.push_back(sets.perimeter.back());
  }
  return sets;
}

IsovistSets compute_isovist(const VoxelWorld& world, const BlockClasses& classes,
                            const BlockPos& centroid, const SphereShell& shell) {
  return compute_isovist(WorldView(world, classes), centroid, shell);
}

bool visible(const WorldView& view, const BlockPos& a, const BlockPos& b) {
  LineWalker walker(a, b);
  const int length = walker.length();
  for (int i = 1; i < length; ++i) {
    walker.advance();
    if (!view.is_transparent(walker.pos())) return false;
  }
  return true;
}

double drift(std::span<const BlockPos> endpoints, const BlockPos& centroid) {
  if (endpoints.empty()) throw std::invalid_argument("drift: empty endpoint list");
  Eigen::Vector3d mean = Eigen::Vector3d::Zero();
  for (const BlockPos& e : endpoints) mean += e.cast<double>();
  mean /= static_cast<double>(endpoints.size());
  return (mean - centroid.cast<double>()).norm();
}

IsovistMetrics derive_metrics(const IsovistSets& sets, const ReachSet& reach,
                              ClutterMode clutter_mode) {
  IsovistMetrics m;
  m.area = static_cast<std::int64_t>(sets.visible_headspaces.size());
  m.perimeter = static_cast<std::int64_t>(sets.perimeter.size());
  m.real_perimeter = static_cast<std::int64_t>(sets.real_perimeter.size());

  std::unordered_set<std::string_view> names;
  for (const auto& cell : sets.perimeter) names.insert(cell.name);
  m.diversity = static_cast<std::int64_t>(names.size());

  const RadialStats stats = radial_stats(sets.radial_lengths);
  m.mean_radial = stats.mean;
  m.var_radial = stats.variance;
  m.vista = stats.max;
  m.drift = drift(sets.radial_endpoints, sets.centroid);

  m.roundness = static_cast<double>(m.area) / static_cast<double>(m.perimeter);
  if (m.real_perimeter > 0)
    m.openness = static_cast<double>(m.area) / static_cast<double>(m.real_perimeter);

  m.reachability = static_cast<std::int64_t>(reach.cells.size());
  std::unordered_set<std::uint64_t> support_keys;
  support_keys.reserve(sets.supports.size() * 2);
  for (const BlockPos& s : sets.supports) support_keys.insert(pos_key(s));
  std::int64_t reach_in_supports = 0;
  for (const BlockPos& cell : reach.cells)
    if (support_keys.count(pos_key(cell))) ++reach_in_supports;
  if (m.reachability > 0)
    m.occlusivity = static_cast<double>(reach_in_supports) / static_cast<double>(m.reachability);

  std::unordered_set<std::uint64_t> perimeter_keys;
  perimeter_keys.reserve(sets.perimeter.size() * 2);
  for (const auto& cell : sets.perimeter) perimeter_keys.insert(pos_key(cell.pos));
  std::int64_t clutter_count = 0;
  for (const BlockPos& s : sets.supports) {
    if (!perimeter_keys.count(pos_key(s))) continue;
    if (clutter_mode == ClutterMode::kReachableVisibleSupports && !reach.contains(s)) continue;
    ++clutter_count;
  }
  m.clutter = static_cast<double>(clutter_count) / static_cast<double>(m.area);
  return m;
}

}  // namespace voxelvist
