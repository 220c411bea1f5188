// Copyright (c) 2026 The voxelvist authors
// SPDX-License-Identifier: Apache-2.0
//
// voxelvist: batch CLI for voxel isovist surveys.
//   scan       headspace count and bounds summary
//   isovist    metrics for a single centroid
//   sweep      whole-map metrics CSV (+ means row and manifest)
//   heatmap    top-down grid exports from a metrics CSV
//   correlate  Spearman report from per-generator means and ratings

#include "voxelvist/manifest.hpp"
#include "voxelvist/stats.hpp"
#include "voxelvist/survey.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>

namespace {

using namespace voxelvist;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

WorldFormat resolve_format(const std::string& format_flag, const std::filesystem::path& path) {
  if (format_flag == "layered-text") return WorldFormat::kLayeredText;
  if (format_flag == "voxel-json") return WorldFormat::kVoxelJson;
  return path.extension() == ".json" ? WorldFormat::kVoxelJson : WorldFormat::kLayeredText;
}

int default_threads() {
  if (const char* env = std::getenv("VOXELVIST_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return 0;  // survey resolves 0 to hardware concurrency
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write " + path.string());
  return out;
}

void report_stage(const std::string& stage, std::size_t done, std::size_t total) {
  std::cerr << "[voxelvist] " << stage << ": " << done << "/" << total << "\n";
}

struct WorldArgs {
  std::string world_path;
  std::string classes_path;
  std::string format_flag = "auto";

  void attach(CLI::App& cmd) {
    cmd.add_option("world", world_path, "world file (layered-text or voxel-json)")->required();
    cmd.add_option("--classes", classes_path, "block classes file")->required();
    cmd.add_option("--format", format_flag, "world format: auto|layered-text|voxel-json")
        ->check(CLI::IsMember({"auto", "layered-text", "voxel-json"}))
        ->capture_default_str();
  }

  VoxelWorld load() const {
    return load_world(world_path, resolve_format(format_flag, world_path));
  }
};

void print_metrics(std::ostream& out, const IsovistMetrics& m) {
  for (const auto& name : metric_names()) {
    const auto v = metric_value(m, name);
    out << name << '=';
    if (!v)
      out << "NA";
    else if (name == "area" || name == "perimeter" || name == "real_perimeter" ||
             name == "diversity" || name == "reachability")
      out << static_cast<std::int64_t>(*v);
    else
      out << format_real(*v);
    out << '\n';
  }
}

int run(int argc, char** argv) {
  CLI::App app{"voxel-world isovist survey tool"};
  app.require_subcommand(1);
  app.set_config("--config")->configurable(false);

  // --- scan ---------------------------------------------------------------
  auto* scan = app.add_subcommand("scan", "count headspaces and summarize bounds");
  WorldArgs scan_args;
  scan_args.attach(*scan);

  // --- isovist ------------------------------------------------------------
  auto* iso = app.add_subcommand("isovist", "metrics for one centroid");
  WorldArgs iso_args;
  iso_args.attach(*iso);
  int iso_x = 0, iso_y = 0, iso_z = 0, iso_radius = 256, iso_steps = 10;
  bool iso_clutter_prose = false;
  std::string iso_perimeter_out;
  iso->add_option("-x", iso_x, "centroid x")->required();
  iso->add_option("-y", iso_y, "centroid y")->required();
  iso->add_option("-z", iso_z, "centroid z")->required();
  iso->add_option("--radius", iso_radius, "view radius in blocks")->capture_default_str();
  iso->add_option("--steps", iso_steps, "reachability flood-fill steps")->capture_default_str();
  iso->add_flag("--clutter-prose", iso_clutter_prose,
                "clutter counts only reachable visible supports");
  iso->add_option("--perimeter-out", iso_perimeter_out,
                  "also dump perimeter cell positions to this file");

  // --- sweep --------------------------------------------------------------
  auto* sweep_cmd = app.add_subcommand("sweep", "survey a whole map into a metrics CSV");
  WorldArgs sweep_args;
  sweep_args.attach(*sweep_cmd);
  SweepConfig config;
  std::string sweep_out, generator_id;
  bool sweep_clutter_prose = false;
  config.threads = default_threads();
  sweep_cmd->add_option("--radius", config.radius, "view radius in blocks")->capture_default_str();
  sweep_cmd->add_option("--steps", config.reach_steps, "reachability flood-fill steps")
      ->capture_default_str();
  sweep_cmd->add_option("--rate", config.subsample_rate, "keep 1 in k headspaces per height")
      ->capture_default_str();
  sweep_cmd->add_option("--seed", config.seed, "subsampling seed")->capture_default_str();
  sweep_cmd->add_option("--threads", config.threads,
                        "worker threads (0 = all cores; env VOXELVIST_THREADS)");
  sweep_cmd->add_flag("--clutter-prose", sweep_clutter_prose,
                      "clutter counts only reachable visible supports");
  sweep_cmd->add_option("--generator", generator_id, "generator id for the means row");
  sweep_cmd->add_option("--out", sweep_out, "metrics CSV path")->required();

  // --- heatmap ------------------------------------------------------------
  auto* heat = app.add_subcommand("heatmap", "top-down grid from a metrics CSV");
  std::string heat_metrics_path, heat_metric = "area", heat_out;
  int heat_ymin = 60;
  heat->add_option("metrics", heat_metrics_path, "metrics CSV from sweep")->required();
  heat->add_option("--metric", heat_metric, "metric column to map")->capture_default_str();
  heat->add_option("--ymin", heat_ymin, "exclude samples below this height")->capture_default_str();
  heat->add_option("--out", heat_out, "output prefix (<out>.csv/.pgm/.scale.txt)")->required();

  // --- correlate ----------------------------------------------------------
  auto* corr = app.add_subcommand("correlate", "Spearman report: metric means vs ratings");
  std::string corr_means_path, corr_ratings_path, corr_out;
  corr->add_option("means", corr_means_path, "means CSV, one row per generator")->required();
  corr->add_option("ratings", corr_ratings_path, "ratings CSV")->required();
  corr->add_option("--out", corr_out, "report CSV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;  // usage error
  }
  const auto start = Clock::now();

  if (*scan) {
    const auto world = scan_args.load();
    const auto classes = load_block_classes(scan_args.classes_path);
    const auto heads = enumerate_headspaces(world, classes);
    const BlockPos lo = world.origin();
    const BlockPos hi = world.origin() + world.dims() - BlockPos(1, 1, 1);
    std::cout << "world: " << scan_args.world_path << "\n"
              << "dims: " << world.dims().x() << ' ' << world.dims().y() << ' '
              << world.dims().z() << "\n"
              << "bounds: (" << lo.x() << ' ' << lo.y() << ' ' << lo.z() << ") .. (" << hi.x()
              << ' ' << hi.y() << ' ' << hi.z() << ")\n"
              << "palette: " << world.palette().size() << " types\n"
              << "headspaces: " << heads.size() << "\n";
    if (!heads.empty())
      std::cout << "headspace_y: [" << heads.front().y() << ", " << heads.back().y() << "]\n";
    return 0;
  }

  if (*iso) {
    const auto world = iso_args.load();
    const auto classes = load_block_classes(iso_args.classes_path);
    const WorldView view(world, classes);
    const BlockPos centroid(iso_x, iso_y, iso_z);
    if (!view.is_headspace(centroid)) {
      std::cerr << "voxelvist: (" << iso_x << ' ' << iso_y << ' ' << iso_z
                << ") is not a headspace\n";
      return 1;
    }
    const auto& shell = shared_sphere_shell(iso_radius);
    const auto sets = compute_isovist(view, centroid, shell);
    const auto reach = floodfill_reach(view, WorldView::support_of(centroid), iso_steps);
    const auto metrics = derive_metrics(
        sets, reach,
        iso_clutter_prose ? ClutterMode::kReachableVisibleSupports
                          : ClutterMode::kPerimeterSupports);
    print_metrics(std::cout, metrics);
    if (!iso_perimeter_out.empty()) {
      auto out = open_output(iso_perimeter_out);
      for (const auto& cell : sets.perimeter)
        out << cell.pos.x() << ' ' << cell.pos.y() << ' ' << cell.pos.z() << ' ' << cell.name
            << '\n';
    }
    return 0;
  }

  if (*sweep_cmd) {
    config.clutter_mode = sweep_clutter_prose ? ClutterMode::kReachableVisibleSupports
                                              : ClutterMode::kPerimeterSupports;
    RunManifest manifest;
    manifest.command = "sweep";
    manifest.add_input(sweep_args.world_path);
    manifest.add_input(sweep_args.classes_path);
    manifest.config = {{"radius", std::to_string(config.radius)},
                       {"steps", std::to_string(config.reach_steps)},
                       {"rate", std::to_string(config.subsample_rate)},
                       {"seed", std::to_string(config.seed)},
                       {"threads", std::to_string(config.threads)},
                       {"clutter_prose", sweep_clutter_prose ? "1" : "0"}};

    auto stage_start = Clock::now();
    const auto world = sweep_args.load();
    const auto classes = load_block_classes(sweep_args.classes_path);
    const WorldView view(world, classes);
    manifest.stage_seconds["load"] = seconds_since(stage_start);

    stage_start = Clock::now();
    const auto table =
        sweep(view, config, std::filesystem::path(sweep_args.world_path).filename().string(),
              report_stage);
    manifest.stage_seconds["sweep"] = seconds_since(stage_start);
    manifest.counts["centroids"] = static_cast<std::int64_t>(table.rows.size());

    stage_start = Clock::now();
    {
      auto out = open_output(sweep_out);
      write_metrics_csv(out, table);
    }
    manifest.add_output(sweep_out);
    const std::string gen =
        generator_id.empty()
            ? std::filesystem::path(sweep_args.world_path).stem().string()
            : generator_id;
    if (!table.rows.empty()) {
      const auto means_path = sweep_out + ".means.csv";
      auto means_out = open_output(means_path);
      write_means_csv(means_out, gen, aggregate_map(table));
      means_out.close();
      manifest.add_output(means_path);
    }
    manifest.stage_seconds["write"] = seconds_since(stage_start);
    manifest.wall_seconds = seconds_since(start);
    manifest.write(sweep_out + ".manifest.json");
    std::cout << "rows: " << table.rows.size() << "\n" << "out: " << sweep_out << "\n";
    return 0;
  }

  if (*heat) {
    RunManifest manifest;
    manifest.command = "heatmap";
    manifest.add_input(heat_metrics_path);
    manifest.config = {{"metric", heat_metric}, {"ymin", std::to_string(heat_ymin)}};
    std::ifstream in(heat_metrics_path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + heat_metrics_path);
    const auto table =
        read_metrics_csv(in, std::filesystem::path(heat_metrics_path).filename().string());
    const auto grid = build_heatmap(table, heat_metric, heat_ymin);
    {
      auto out = open_output(heat_out + ".csv");
      write_heatmap_csv(out, grid);
    }
    {
      auto out = open_output(heat_out + ".pgm");
      write_heatmap_pgm(out, grid);
    }
    {
      auto out = open_output(heat_out + ".scale.txt");
      write_heatmap_scale(out, grid);
    }
    manifest.add_output(heat_out + ".csv");
    manifest.add_output(heat_out + ".pgm");
    manifest.add_output(heat_out + ".scale.txt");
    manifest.counts["width"] = grid.width();
    manifest.counts["height"] = grid.height();
    manifest.wall_seconds = seconds_since(start);
    manifest.write(heat_out + ".manifest.json");
    std::cout << "grid: " << grid.width() << "x" << grid.height() << "\n"
              << "out: " << heat_out << ".csv " << heat_out << ".pgm\n";
    return 0;
  }

  if (*corr) {
    RunManifest manifest;
    manifest.command = "correlate";
    manifest.add_input(corr_means_path);
    manifest.add_input(corr_ratings_path);
    std::ifstream means_in(corr_means_path, std::ios::binary);
    if (!means_in) throw ParseError("cannot open " + corr_means_path);
    std::ifstream ratings_in(corr_ratings_path, std::ios::binary);
    if (!ratings_in) throw ParseError("cannot open " + corr_ratings_path);
    const auto means =
        read_means_csv(means_in, std::filesystem::path(corr_means_path).filename().string());
    const auto ratings = read_ratings_csv(
        ratings_in, std::filesystem::path(corr_ratings_path).filename().string());
    const auto report = correlation_matrix(means, ratings);
    {
      auto out = open_output(corr_out);
      write_report_csv(out, report);
    }
    manifest.add_output(corr_out);
    manifest.counts["means_rows"] = static_cast<std::int64_t>(means.generators.size());
    manifest.counts["rating_rows"] = static_cast<std::int64_t>(ratings.rows.size());
    manifest.counts["dropped_generators"] = report.dropped_generators;
    manifest.wall_seconds = seconds_since(start);
    manifest.write(corr_out + ".manifest.json");
    std::cout << "pairs: " << report.metrics.size() * report.categories.size() << "\n"
              << "dropped_generators: " << report.dropped_generators << "\n"
              << "out: " << corr_out << "\n";
    return 0;
  }
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const CLI::ParseError&) {
    return 2;  // CLI11_PARSE already printed usage
  } catch (const std::exception& e) {
    std::cerr << "voxelvist: " << e.what() << "\n";
    return 1;
  }
}
