// Copyright (c) 2026 The voxelvist authors
// SPDX-License-Identifier: Apache-2.0
#include "voxelvist/survey.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

namespace voxelvist {

void SweepConfig::validate() const {
  if (radius < 1) throw std::invalid_argument("config: radius must be >= 1");
  if (reach_steps < 0) throw std::invalid_argument("config: reach steps must be >= 0");
  if (subsample_rate < 1) throw std::invalid_argument("config: subsample rate must be >= 1");
  if (threads < 0) throw std::invalid_argument("config: threads must be >= 0");
}

std::vector<BlockPos> sample_centroids(const WorldView& view, const SweepConfig& config) {
  config.validate();
  const std::vector<BlockPos> all = enumerate_headspaces(view);

  std::vector<BlockPos> picked;
  std::size_t level_begin = 0;
  while (level_begin < all.size()) {
    const int y = all[level_begin].y();
    std::size_t level_end = level_begin;
    while (level_end < all.size() && all[level_end].y() == y) ++level_end;

    const std::size_t count = level_end - level_begin;
    const std::size_t take =
        (count + static_cast<std::size_t>(config.subsample_rate) - 1) /
        static_cast<std::size_t>(config.subsample_rate);
    if (take == count) {
      picked.insert(picked.end(), all.begin() + level_begin, all.begin() + level_end);
    } else {
      // partial Fisher-Yates on this level's slice, seeded per (seed, y)
      std::vector<BlockPos> level(all.begin() + level_begin, all.begin() + level_end);
      std::uint64_t rng = split_seed(config.seed, y);
      for (std::size_t i = 0; i < take; ++i) {
        const std::size_t j = i + bounded_rand(rng, level.size() - i);
        std::swap(level[i], level[j]);
      }
      picked.insert(picked.end(), level.begin(), level.begin() + take);
    }
    level_begin = level_end;
  }
  std::sort(picked.begin(), picked.end(), PosLessYXZ{});
  return picked;
}

MetricsTable sweep(const WorldView& view, const SweepConfig& config, const std::string& world_id,
                   const ProgressFn& progress) {
  config.validate();
  MetricsTable table;
  table.world_id = world_id;
  table.config = config;

  const std::vector<BlockPos> centroids = sample_centroids(view, config);
  if (progress) progress("sample", centroids.size(), centroids.size());
  if (centroids.empty()) return table;

  const SphereShell& shell = shared_sphere_shell(config.radius);
  table.rows.resize(centroids.size());

  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> finished{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= centroids.size()) return;
      const BlockPos& centroid = centroids[i];
      const IsovistSets sets = compute_isovist(view, centroid, shell);
      const ReachSet reach =
          floodfill_reach(view, WorldView::support_of(centroid), config.reach_steps);
      table.rows[i] = {centroid, derive_metrics(sets, reach, config.clutter_mode)};
      const std::size_t done = finished.fetch_add(1) + 1;
      if (progress && (done % 64 == 0 || done == centroids.size()))
        progress("isovists", done, centroids.size());
    }
  };

  unsigned thread_count = config.threads > 0 ? static_cast<unsigned>(config.threads)
                                             : std::thread::hardware_concurrency();
  thread_count = std::max(1u, std::min<unsigned>(thread_count, centroids.size()));
  if (thread_count == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(thread_count);
    for (unsigned t = 0; t < thread_count; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  std::sort(table.rows.begin(), table.rows.end(), [](const MetricsRow& a, const MetricsRow& b) {
    return PosLessYXZ{}(a.centroid, b.centroid);
  });
  return table;
}

const std::vector<std::string>& metric_names() {
  static const std::vector<std::string> names = {
      "area",     "perimeter", "real_perimeter", "diversity",    "mean_radial",
      "var_radial", "vista",   "drift",          "roundness",    "openness",
      "reachability", "occlusivity", "clutter"};
  return names;
}

std::optional<double> metric_value(const IsovistMetrics& m, const std::string& name) {
  if (name == "area") return static_cast<double>(m.area);
  if (name == "perimeter") return static_cast<double>(m.perimeter);
  if (name == "real_perimeter") return static_cast<double>(m.real_perimeter);
  if (name == "diversity") return static_cast<double>(m.diversity);
  if (name == "mean_radial") return m.mean_radial;
  if (name == "var_radial") return m.var_radial;
  if (name == "vista") return m.vista;
  if (name == "drift") return m.drift;
  if (name == "roundness") return m.roundness;
  if (name == "openness") return m.openness;
  if (name == "reachability") return static_cast<double>(m.reachability);
  if (name == "occlusivity") return m.occlusivity;
  if (name == "clutter") return m.clutter;
  throw std::invalid_argument("unknown metric: " + name);
}

std::map<std::string, AggregateEntry> aggregate_map(const MetricsTable& table) {
  if (table.rows.empty()) throw std::invalid_argument("aggregate_map: empty metrics table");
  std::map<std::string, AggregateEntry> out;
  for (const auto& name : metric_names()) {
    AggregateEntry entry;
    double sum = 0;
    for (const auto& row : table.rows) {
      if (const auto v = metric_value(row.metrics, name)) {
        sum += *v;
        ++entry.present;
      } else {
        ++entry.absent;
      }
    }
    entry.mean = entry.present > 0 ? sum / static_cast<double>(entry.present) : 0.0;
    out.emplace(name, entry);
  }
  return out;
}

HeatmapGrid build_heatmap(const MetricsTable& table, const std::string& metric, int y_min) {
  struct CellAcc {
    double sum = 0;
    std::int64_t count = 0;
  };
  std::map<std::pair<int, int>, CellAcc> measured;  // (x,z) -> accumulator
  for (const auto& row : table.rows) {
    if (row.centroid.y() < y_min) continue;
    const auto v = metric_value(row.metrics, metric);
    if (!v) continue;
    auto& acc = measured[{row.centroid.x(), row.centroid.z()}];
    acc.sum += *v;
    ++acc.count;
  }
  if (measured.empty())
    throw std::runtime_error("heatmap: no measured cells for metric \"" + metric +
                             "\" at y_min=" + std::to_string(y_min));

  int x_min = std::numeric_limits<int>::max(), x_max = std::numeric_limits<int>::min();
  int z_min = std::numeric_limits<int>::max(), z_max = std::numeric_limits<int>::min();
  for (const auto& [xz, acc] : measured) {
    (void)acc;
    x_min = std::min(x_min, xz.first);
    x_max = std::max(x_max, xz.first);
    z_min = std::min(z_min, xz.second);
    z_max = std::max(z_max, xz.second);
  }

  HeatmapGrid grid;
  grid.metric = metric;
  grid.x0 = x_min;
  grid.z0 = z_min;
  const int width = x_max - x_min + 1;
  const int height = z_max - z_min + 1;
  grid.values = Eigen::MatrixXd::Zero(height, width);
  grid.mask.setConstant(height, width, static_cast<std::uint8_t>(HeatmapState::kAbsent));

  // donors sorted by (x,z); nearest-neighbor search prunes on the x gap
  struct Donor {
    int x, z;
    double value;
  };
  std::vector<Donor> donors;
  donors.reserve(measured.size());
  for (const auto& [xz, acc] : measured) {
    const double mean = acc.sum / static_cast<double>(acc.count);
    donors.push_back({xz.first, xz.second, mean});
    grid.values(xz.second - z_min, xz.first - x_min) = mean;
    grid.mask(xz.second - z_min, xz.first - x_min) =
        static_cast<std::uint8_t>(HeatmapState::kMeasured);
  }

  auto nearest_donor = [&](int x, int z) -> const Donor& {
    auto it = std::lower_bound(donors.begin(), donors.end(), x,
                               [](const Donor& d, int value) { return d.x < value; });
    std::int64_t best_d2 = std::numeric_limits<std::int64_t>::max();
    const Donor* best = nullptr;
    auto consider = [&](const Donor& d) {
      const std::int64_t dx = d.x - x, dz = d.z - z;
      const std::int64_t d2 = dx * dx + dz * dz;
      if (d2 < best_d2 ||
          (d2 == best_d2 && (d.x < best->x || (d.x == best->x && d.z < best->z)))) {
        best_d2 = d2;
        best = &d;
      }
    };
    // expand right then left from the query x, stopping once the x gap alone
    // exceeds the best squared distance
    for (auto r = it; r != donors.end(); ++r) {
      const std::int64_t dx = r->x - x;
      if (dx * dx > best_d2) break;
      consider(*r);
    }
    for (auto l = std::make_reverse_iterator(it); l != donors.rend(); ++l) {
      const std::int64_t dx = l->x - x;
      if (dx * dx > best_d2) break;
      consider(*l);
    }
    return *best;
  };

  for (int z = z_min; z <= z_max; ++z)
    for (int x = x_min; x <= x_max; ++x) {
      if (grid.mask(z - z_min, x - x_min) != static_cast<std::uint8_t>(HeatmapState::kAbsent))
        continue;
      grid.values(z - z_min, x - x_min) = nearest_donor(x, z).value;
      grid.mask(z - z_min, x - x_min) = static_cast<std::uint8_t>(HeatmapState::kInterpolated);
    }
  return grid;
}

}  // namespace voxelvist
