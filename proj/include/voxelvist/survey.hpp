// Copyright (c) 2026 The voxelvist authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "voxelvist/isovist.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace voxelvist {

/// Whole-map sweep parameters. `subsample_rate` k keeps 1 in k headspaces
/// per height level; all randomness flows from `seed`.
struct SweepConfig {
  int radius = 256;
  int reach_steps = 10;
  int subsample_rate = 10;
  std::uint64_t seed = 0;
  int y_min_heatmap = 60;
  ClutterMode clutter_mode = ClutterMode::kPerimeterSupports;
  int threads = 0;  // 0 = hardware concurrency

  void validate() const;
};

/// Partitions the headspaces by height and picks ceil(count/k) of each
/// partition uniformly at random. Draws for one height level derive from
/// (seed, level), so adding levels never reshuffles the others. Output is
/// sorted (y,x,z) and reproducible for a fixed seed.
std::vector<BlockPos> sample_centroids(const WorldView& view, const SweepConfig& config);

struct MetricsRow {
  BlockPos centroid = BlockPos::Zero();
  IsovistMetrics metrics;
};

struct MetricsTable {
  std::string world_id;
  SweepConfig config;
  std::vector<MetricsRow> rows;  // sorted (y,x,z), one per sampled centroid
};

/// Per-stage notifications for long runs: stage name, items done, items total.
using ProgressFn = std::function<void(const std::string&, std::size_t, std::size_t)>;

/// Full pipeline for one world: sample centroids, compute isovist + reach +
/// metrics for each (in parallel), sort rows. Deterministic for a fixed
/// config regardless of thread count.
MetricsTable sweep(const WorldView& view, const SweepConfig& config, const std::string& world_id,
                   const ProgressFn& progress = {});

/// The canonical metric column order shared by CSV files, heatmaps and
/// correlation reports.
const std::vector<std::string>& metric_names();

/// Value of the named metric column; empty when the metric is absent for
/// this row (openness/occlusivity with a zero denominator).
std::optional<double> metric_value(const IsovistMetrics& metrics, const std::string& name);

struct AggregateEntry {
  double mean = 0;
  std::int64_t present = 0;
  std::int64_t absent = 0;
};

/// Arithmetic mean per metric, skipping absent values (their count is
/// reported instead). Errors on an empty table.
std::map<std::string, AggregateEntry> aggregate_map(const MetricsTable& table);

enum class HeatmapState : std::uint8_t { kAbsent = 0, kMeasured = 1, kInterpolated = 2 };

/// Top-down grid of one metric. Measured cells average all samples at that
/// (x,z) with y >= y_min; every other cell copies its nearest measured
/// neighbor (Euclidean distance in the plane, ties to the lexicographically
/// smallest donor). The grid covers the bounding box of the measured cells.
struct HeatmapGrid {
  std::string metric;
  int x0 = 0, z0 = 0;  // world coordinates of cell (0,0)
  Eigen::MatrixXd values;  // (row, col) = (z - z0, x - x0)
  Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic> mask;

  int width() const { return static_cast<int>(values.cols()); }
  int height() const { return static_cast<int>(values.rows()); }
};

HeatmapGrid build_heatmap(const MetricsTable& table, const std::string& metric, int y_min);

// ---------------------------------------------------------------------------
// Serialization. All text output uses LF endings and 6-significant-digit
// floats; absent values are empty CSV fields.
// ---------------------------------------------------------------------------

void write_metrics_csv(std::ostream& out, const MetricsTable& table);
MetricsTable read_metrics_csv(std::istream& in, const std::string& origin_name);

/// One aggregate row keyed by a generator id, appendable into the means
/// table consumed by the correlation pipeline.
void write_means_csv(std::ostream& out, const std::string& generator,
                     const std::map<std::string, AggregateEntry>& means);

void write_heatmap_csv(std::ostream& out, const HeatmapGrid& grid);

/// Plain 16-bit PGM (P2) with min-max scaling; the scale sidecar records the
/// mapping so pixel values stay bit-exact and reversible.
void write_heatmap_pgm(std::ostream& out, const HeatmapGrid& grid);
void write_heatmap_scale(std::ostream& out, const HeatmapGrid& grid);

}  // namespace voxelvist
