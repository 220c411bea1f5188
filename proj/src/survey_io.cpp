// Copyright (c) 2026 The voxelvist authors
// SPDX-License-Identifier: Apache-2.0
#include "voxelvist/survey.hpp"

#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace voxelvist {
namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(field);
      field.clear();
    } else if (c != '\r') {
      field += c;
    }
  }
  fields.push_back(field);
  return fields;
}

std::string metrics_header() {
  std::string h = "x,y,z";
  for (const auto& name : metric_names()) h += "," + name;
  return h;
}

bool metric_is_integral(const std::string& name) {
  return name == "area" || name == "perimeter" || name == "real_perimeter" ||
         name == "diversity" || name == "reachability";
}

}  // namespace

void write_metrics_csv(std::ostream& out, const MetricsTable& table) {
  out << metrics_header() << '\n';
  for (const auto& row : table.rows) {
    out << row.centroid.x() << ',' << row.centroid.y() << ',' << row.centroid.z();
    for (const auto& name : metric_names()) {
      out << ',';
      const auto v = metric_value(row.metrics, name);
      if (!v) continue;  // absent stays an empty field
      if (metric_is_integral(name))
        out << static_cast<std::int64_t>(*v);
      else
        out << format_real(*v);
    }
    out << '\n';
  }
}

MetricsTable read_metrics_csv(std::istream& in, const std::string& origin_name) {
  std::string line;
  int line_no = 0;
  auto fail = [&](const std::string& msg) -> ParseError {
    return ParseError(origin_name + ":" + std::to_string(line_no) + ": " + msg);
  };
  if (!std::getline(in, line)) throw ParseError(origin_name + ": empty metrics CSV");
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != metrics_header())
    throw fail("unexpected header; expected \"" + metrics_header() + "\"");

  MetricsTable table;
  table.world_id = origin_name;
  const auto& names = metric_names();
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != names.size() + 3)
      throw fail("expected " + std::to_string(names.size() + 3) + " fields, got " +
                 std::to_string(fields.size()));
    auto parse_int = [&](const std::string& s) {
      std::size_t used = 0;
      const long long v = std::stoll(s, &used);
      if (used != s.size()) throw fail("malformed integer \"" + s + "\"");
      return v;
    };
    auto parse_real = [&](const std::string& s) {
      std::size_t used = 0;
      const double v = std::stod(s, &used);
      if (used != s.size()) throw fail("malformed number \"" + s + "\"");
      return v;
    };
    MetricsRow row;
    row.centroid = BlockPos(static_cast<int>(parse_int(fields[0])),
                            static_cast<int>(parse_int(fields[1])),
                            static_cast<int>(parse_int(fields[2])));
    IsovistMetrics& m = row.metrics;
    for (std::size_t i = 0; i < names.size(); ++i) {
      const std::string& s = fields[i + 3];
      const std::string& name = names[i];
      if (s.empty()) {
        if (name == "openness" || name == "occlusivity") continue;  // stays absent
        throw fail("metric \"" + name + "\" may not be empty");
      }
      if (name == "area") m.area = parse_int(s);
      else if (name == "perimeter") m.perimeter = parse_int(s);
      else if (name == "real_perimeter") m.real_perimeter = parse_int(s);
      else if (name == "diversity") m.diversity = parse_int(s);
      else if (name == "mean_radial") m.mean_radial = parse_real(s);
      else if (name == "var_radial") m.var_radial = parse_real(s);
      else if (name == "vista") m.vista = parse_real(s);
      else if (name == "drift") m.drift = parse_real(s);
      else if (name == "roundness") m.roundness = parse_real(s);
      else if (name == "openness") m.openness = parse_real(s);
      else if (name == "reachability") m.reachability = parse_int(s);
      else if (name == "occlusivity") m.occlusivity = parse_real(s);
      else if (name == "clutter") m.clutter = parse_real(s);
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

void write_means_csv(std::ostream& out, const std::string& generator,
                     const std::map<std::string, AggregateEntry>& means) {
  out << "generator";
  for (const auto& name : metric_names()) out << ',' << name;
  out << '\n' << generator;
  for (const auto& name : metric_names()) {
    out << ',';
    const auto it = means.find(name);
    if (it != means.end() && it->second.present > 0) out << format_real(it->second.mean);
  }
  out << '\n';
}

void write_heatmap_csv(std::ostream& out, const HeatmapGrid& grid) {
  for (int row = 0; row < grid.height(); ++row) {
    for (int col = 0; col < grid.width(); ++col) {
      if (col) out << ',';
      if (grid.mask(row, col) == static_cast<std::uint8_t>(HeatmapState::kAbsent))
        out << "NA";
      else
        out << format_real(grid.values(row, col));
    }
    out << '\n';
  }
}

namespace {

std::pair<double, double> value_range(const HeatmapGrid& grid) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (int row = 0; row < grid.height(); ++row)
    for (int col = 0; col < grid.width(); ++col) {
      if (grid.mask(row, col) == static_cast<std::uint8_t>(HeatmapState::kAbsent)) continue;
      lo = std::min(lo, grid.values(row, col));
      hi = std::max(hi, grid.values(row, col));
    }
  if (!std::isfinite(lo)) lo = hi = 0;
  return {lo, hi};
}

}  // namespace

void write_heatmap_pgm(std::ostream& out, const HeatmapGrid& grid) {
  const auto [lo, hi] = value_range(grid);
  const double span = hi - lo;
  out << "P2\n" << grid.width() << ' ' << grid.height() << "\n65535\n";
  for (int row = 0; row < grid.height(); ++row) {
    for (int col = 0; col < grid.width(); ++col) {
      long pixel = 0;
      if (grid.mask(row, col) != static_cast<std::uint8_t>(HeatmapState::kAbsent) && span > 0)
        pixel = std::lround((grid.values(row, col) - lo) / span * 65535.0);
      out << (col ? " " : "") << pixel;
    }
    out << '\n';
  }
}

void write_heatmap_scale(std::ostream& out, const HeatmapGrid& grid) {
  const auto [lo, hi] = value_range(grid);
  out << "metric=" << grid.metric << '\n'
      << "x0=" << grid.x0 << '\n'
      << "z0=" << grid.z0 << '\n'
      << "width=" << grid.width() << '\n'
      << "height=" << grid.height() << '\n'
      << "min=" << format_real(lo) << '\n'
      << "max=" << format_real(hi) << '\n'
      << "maxval=65535\n"
      << "formula=pixel = round((value - min) / (max - min) * maxval); max == min maps all to 0\n";
}

}  // namespace voxelvist
