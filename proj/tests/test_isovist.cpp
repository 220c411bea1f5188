// Copyright (c) 2026 The voxelvist authors
// SPDX-License-Identifier: Apache-2.0
#include "test_support.hpp"

#include "voxelvist/geometry.hpp"

#include <doctest.h>

#include <cmath>

using namespace voxelvist;
using namespace voxelvist::testing;

namespace {

PosSet to_set(const std::vector<BlockPos>& v) { return PosSet(v.begin(), v.end()); }

PosSet perimeter_positions(const std::vector<PerimeterCell>& cells) {
  PosSet out;
  for (const auto& c : cells) out.insert(c.pos);
  return out;
}

bool subset_of(const PosSet& a, const PosSet& b) {
  for (const auto& p : a)
    if (!b.count(p)) return false;
  return true;
}

void check_set_invariants(const IsovistSets& sets) {
  CHECK(to_set(sets.visible_headspaces).count(sets.centroid));
  CHECK(sets.supports.size() == sets.visible_headspaces.size());
  CHECK(subset_of(perimeter_positions(sets.real_perimeter), perimeter_positions(sets.perimeter)));
  for (const double len : sets.radial_lengths) CHECK(len <= sets.radius + 1.0 + 1e-9);
  CHECK(sets.radial_lengths.size() == sets.radial_endpoints.size());
}

}  // namespace

TEST_CASE("sealed box: the hand-derived ground truth") {
  const auto world = make_sealed_box_world();
  const WorldView view(world, default_classes());
  const BlockPos centroid(1, 2, 1);
  REQUIRE(view.is_headspace(centroid));

  const auto sets = compute_isovist(view, centroid, shared_sphere_shell(8));
  check_set_invariants(sets);
  CHECK(sets.visible_headspaces == std::vector<BlockPos>{centroid});
  CHECK(sets.supports == std::vector<BlockPos>{BlockPos(1, 0, 1)});
  CHECK(sets.perimeter.size() == sets.real_perimeter.size());
  CHECK(!sets.perimeter.empty());
  for (const auto& cell : sets.perimeter) CHECK(cell.name == "stone");
  for (const double len : sets.radial_lengths) CHECK(len <= std::sqrt(6.0) + 1e-9);

  // brute-force pairwise oracle agrees: only the centroid is visible
  const auto oracle = oracle_visible_headspaces(view, centroid, 8);
  CHECK(oracle == to_set(sets.visible_headspaces));

  const auto reach = floodfill_reach(view, WorldView::support_of(centroid), 10);
  const auto metrics = derive_metrics(sets, reach);
  CHECK(metrics.area == 1);
  CHECK(metrics.perimeter == metrics.real_perimeter);
  CHECK(metrics.clutter == doctest::Approx(1.0));  // the support block is visible below
  REQUIRE(metrics.occlusivity.has_value());
  CHECK(*metrics.occlusivity == doctest::Approx(1.0));
  CHECK(metrics.diversity == 1);
  CHECK(metrics.roundness > 0);
}

TEST_CASE("flat plane r=8: sweep equals the pairwise oracle exactly") {
  const auto world = make_flat_world(40, 5, 40);
  const WorldView view(world, default_classes());
  const BlockPos centroid(20, 2, 20);
  const auto sets = compute_isovist(view, centroid, shared_sphere_shell(8));
  check_set_invariants(sets);

  const auto oracle = oracle_visible_headspaces(view, centroid, 8);
  CHECK(to_set(sets.visible_headspaces) == oracle);

  // perimeter mixes floor hits and sky-end air; the real perimeter is floor only
  bool saw_air_end = false;
  for (const auto& cell : sets.perimeter) saw_air_end |= cell.name == "air";
  CHECK(saw_air_end);
  REQUIRE(!sets.real_perimeter.empty());
  for (const auto& cell : sets.real_perimeter) CHECK(cell.name == "stone");
}

TEST_CASE("flat plane metrics: analytic reach diamond and oracle occlusivity") {
  const auto world = make_flat_world(41, 5, 41);
  const WorldView view(world, default_classes());
  const BlockPos centroid(20, 2, 20);
  const auto sets = compute_isovist(view, centroid, shared_sphere_shell(8));
  const auto reach = floodfill_reach(view, WorldView::support_of(centroid), 10);
  const auto metrics = derive_metrics(sets, reach);

  CHECK(metrics.reachability == 221);  // 1 + 4 * (1 + 2 + ... + 10)

  // occlusivity oracle: reach is the Manhattan diamond on the floor, supports
  // are the floor cells under oracle-visible heads
  const auto oracle_heads = oracle_visible_headspaces(view, centroid, 8);
  std::size_t inter = 0;
  for (const auto& h : oracle_heads) {
    const BlockPos support = h - BlockPos(0, 2, 0);
    const int manhattan =
        std::abs(support.x() - centroid.x()) + std::abs(support.z() - centroid.z());
    if (manhattan <= 10) ++inter;
  }
  REQUIRE(metrics.occlusivity.has_value());
  CHECK(*metrics.occlusivity ==
        doctest::Approx(static_cast<double>(inter) / 221.0).epsilon(1e-12));
}

TEST_CASE("doors: sight passes through and never joins the real perimeter") {
  // corridor sealed by a door column: heads on both sides see each other
  WorldBuilder b(BlockPos(9, 5, 3));
  b.fill(BlockPos(0, 0, 0), BlockPos(8, 0, 2), "stone");
  b.fill(BlockPos(4, 1, 0), BlockPos(4, 3, 2), "stone");  // wall across
  b.set(BlockPos(4, 1, 1), "oak_door");
  b.set(BlockPos(4, 2, 1), "oak_door");
  b.set(BlockPos(4, 3, 1), "oak_door");
  const auto world = b.build();
  const WorldView view(world, default_classes());

  const BlockPos centroid(1, 2, 1);
  const BlockPos beyond(7, 2, 1);
  REQUIRE(view.is_headspace(centroid));
  REQUIRE(view.is_headspace(beyond));
  CHECK(visible(view, centroid, beyond));

  const auto sets = compute_isovist(view, centroid, shared_sphere_shell(8));
  CHECK(to_set(sets.visible_headspaces).count(beyond));
  for (const auto& cell : sets.real_perimeter) CHECK(cell.name != "oak_door");
}

TEST_CASE("visible: reference oracle basics") {
  const auto world = make_flat_world(10, 6, 10);
  const WorldView view(world, default_classes());
  CHECK(visible(view, BlockPos(2, 2, 2), BlockPos(2, 2, 2)));
  CHECK(visible(view, BlockPos(2, 2, 2), BlockPos(3, 2, 2)));

  WorldBuilder b(BlockPos(7, 6, 3));
  b.fill(BlockPos(0, 0, 0), BlockPos(6, 0, 2), "stone");
  b.set(BlockPos(3, 2, 1), "stone");  // lone block on the sight line
  const auto blocked_world = b.build();
  const WorldView blocked(blocked_world, default_classes());
  CHECK(!visible(blocked, BlockPos(1, 2, 1), BlockPos(5, 2, 1)));
  CHECK(visible(blocked, BlockPos(1, 3, 1), BlockPos(5, 3, 1)));
}

TEST_CASE("drift: symmetric, lopsided, and degenerate endpoint sets") {
  const auto& shell = shared_sphere_shell(5);
  std::vector<BlockPos> symmetric;
  const BlockPos centroid(7, 9, 11);
  for (const auto& v : shell.offsets) symmetric.push_back(centroid + v);
  CHECK(drift(symmetric, centroid) == doctest::Approx(0.0).epsilon(1e-12));

  const std::vector<BlockPos> lopsided = {BlockPos(3, 0, 0), BlockPos(-10, 0, 0)};
  CHECK(drift(lopsided, BlockPos::Zero()) == doctest::Approx(3.5));

  const std::vector<BlockPos> single = {BlockPos(5, 0, 0)};
  CHECK(drift(single, BlockPos::Zero()) == doctest::Approx(5.0));

  CHECK_THROWS_AS(drift({}, BlockPos::Zero()), std::invalid_argument);
}

TEST_CASE("area monotone in radius on an open plane") {
  const auto world = make_flat_world(45, 5, 45);
  const WorldView view(world, default_classes());
  const BlockPos centroid(22, 2, 22);
  std::size_t previous = 0;
  for (int radius = 1; radius <= 10; ++radius) {
    const auto sets = compute_isovist(view, centroid, shared_sphere_shell(radius));
    CHECK(sets.visible_headspaces.size() >= previous);
    previous = sets.visible_headspaces.size();
  }
}

TEST_CASE("adding an opaque wall never increases area") {
  for (const std::uint64_t seed : {1u, 2u, 3u, 4u}) {
    const auto open_world = make_flat_world(30, 8, 30);
    WorldBuilder b(BlockPos(30, 8, 30));
    b.fill(BlockPos(0, 0, 0), BlockPos(29, 0, 29), "stone");
    std::uint64_t rng = split_seed(seed, 5);
    const int wx = 8 + static_cast<int>(bounded_rand(rng, 14));
    b.fill(BlockPos(wx, 1, 5), BlockPos(wx, 4, 24), "stone");  // wall between centroid and region
    const auto walled_world = b.build();

    const WorldView open_view(open_world, default_classes());
    const WorldView walled_view(walled_world, default_classes());
    const BlockPos centroid(4, 2, 15);
    const auto open_sets = compute_isovist(open_view, centroid, shared_sphere_shell(8));
    const auto walled_sets = compute_isovist(walled_view, centroid, shared_sphere_shell(8));
    CHECK(walled_sets.visible_headspaces.size() <= open_sets.visible_headspaces.size());
  }
}

TEST_CASE("oracle equivalence on terrain worlds: Jaccard >= 0.95") {
  int disagreements = 0;
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const auto world = make_terrain_world(seed, 24, 16, 24, static_cast<int>(seed % 4));
    const WorldView view(world, default_classes());
    for (const auto& centroid : pick_headspaces(view, 4, seed)) {
      const auto sets = compute_isovist(view, centroid, shared_sphere_shell(8));
      const auto sweep_set = to_set(sets.visible_headspaces);
      const auto oracle = oracle_visible_headspaces(view, centroid, 8);
      const double j = jaccard(sweep_set, oracle);
      INFO("seed ", seed, " centroid ", centroid.x(), ",", centroid.y(), ",", centroid.z(),
           " jaccard ", j);
      CHECK(j >= 0.95);
      for (const auto& p : sweep_set) disagreements += !oracle.count(p);
      for (const auto& p : oracle) disagreements += !sweep_set.count(p);
    }
  }
  MESSAGE("total disagreement cells: ", disagreements);
}

TEST_CASE("metric bounds hold on random small worlds") {
  for (std::uint64_t seed = 1; seed <= 120; ++seed) {
    const auto world =
        make_terrain_world(seed * 31 + 7, 10 + static_cast<int>(seed % 11),
                           10 + static_cast<int>(seed % 7), 10 + static_cast<int>(seed % 13),
                           static_cast<int>(seed % 4));
    const WorldView view(world, default_classes());
    const int radius = 4 + static_cast<int>(seed % 5);
    for (const auto& centroid : pick_headspaces(view, 2, seed)) {
      const auto sets = compute_isovist(view, centroid, shared_sphere_shell(radius));
      check_set_invariants(sets);
      const auto reach = floodfill_reach(view, WorldView::support_of(centroid), 10);
      const auto m = derive_metrics(sets, reach);
      CHECK(m.clutter >= 0);
      CHECK(m.clutter <= 1);
      if (m.occlusivity) {
        CHECK(*m.occlusivity >= 0);
        CHECK(*m.occlusivity <= 1);
      }
      CHECK(m.real_perimeter <= m.perimeter);
      CHECK(m.diversity <= m.perimeter);
      CHECK(m.mean_radial <= m.vista + 1e-12);
      CHECK(m.vista <= radius + 1.0 + 1e-9);
      CHECK(m.var_radial >= 0);
      CHECK(m.roundness > 0);
    }
  }
}

TEST_CASE("glass floor: no real surfaces, openness absent") {
  const auto world = make_flat_world(19, 5, 19, "glass");
  const WorldView view(world, default_classes());
  const BlockPos centroid(9, 2, 9);
  REQUIRE(view.is_headspace(centroid));
  const auto sets = compute_isovist(view, centroid, shared_sphere_shell(6));
  CHECK(sets.real_perimeter.empty());
  const auto reach = floodfill_reach(view, WorldView::support_of(centroid), 6);
  const auto m = derive_metrics(sets, reach);
  CHECK(!m.openness.has_value());
  CHECK(m.occlusivity.has_value());
  CHECK(m.real_perimeter == 0);
  CHECK(m.perimeter > 0);
}

TEST_CASE("clutter modes: prose variant additionally requires reachability") {
  // two rooms joined by a window slit: the far room's floor is visible but
  // not walkable, so the prose variant counts less
  WorldBuilder b(BlockPos(11, 6, 5));
  b.fill(BlockPos(0, 0, 0), BlockPos(10, 0, 4), "stone");
  b.fill(BlockPos(5, 1, 0), BlockPos(5, 4, 4), "stone");
  b.set(BlockPos(5, 2, 2), "glass");  // window at head height
  const auto world = b.build();
  const WorldView view(world, default_classes());
  const BlockPos centroid(2, 2, 2);
  REQUIRE(view.is_headspace(centroid));
  const auto sets = compute_isovist(view, centroid, shared_sphere_shell(8));
  const auto reach = floodfill_reach(view, WorldView::support_of(centroid), 10);
  const auto strict = derive_metrics(sets, reach, ClutterMode::kPerimeterSupports);
  const auto prose = derive_metrics(sets, reach, ClutterMode::kReachableVisibleSupports);
  CHECK(prose.clutter <= strict.clutter);
}

TEST_CASE("compute_isovist rejects a non-headspace centroid") {
  const auto world = make_flat_world(8, 5, 8);
  const WorldView view(world, default_classes());
  CHECK_THROWS_AS(compute_isovist(view, BlockPos(3, 0, 3), shared_sphere_shell(4)),
                  std::invalid_argument);
  CHECK_THROWS_AS(compute_isovist(view, BlockPos(3, 3, 3), shared_sphere_shell(4)),
                  std::invalid_argument);
}
