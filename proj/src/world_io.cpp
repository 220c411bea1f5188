// Copyright (c) 2026 The voxelvist authors
// SPDX-License-Identifier: Apache-2.0
#include "voxelvist/world.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>

namespace voxelvist {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  return in;
}

std::string trimmed(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

// ---------------------------------------------------------------------------
// layered-text: DIMS header, LEGEND lines, one block of z rows per y layer
// (bottom to top), blocks separated by blank lines. Rows are whitespace-exact.
// ---------------------------------------------------------------------------

VoxelWorld load_layered_text(std::istream& in, const std::string& origin_name) {
  std::string line;
  int line_no = 0;
  auto fail = [&](const std::string& msg) -> ParseError {
    return ParseError(origin_name + ":" + std::to_string(line_no) + ": " + msg);
  };

  if (!std::getline(in, line)) throw fail("empty file, expected DIMS header");
  ++line_no;
  int sx = 0, sy = 0, sz = 0;
  {
    std::istringstream hs(line);
    std::string tag;
    if (!(hs >> tag >> sx >> sy >> sz) || tag != "DIMS")
      throw fail("expected header \"DIMS x y z\", got \"" + trimmed(line) + "\"");
    if (sx <= 0 || sy <= 0 || sz <= 0) throw fail("DIMS values must be positive");
  }

  // palette ids follow legend order so a save/load cycle is the identity
  Palette palette;
  std::unordered_map<char, std::uint16_t> code_ids;
  struct Row {
    std::string text;
    int line_no;
  };
  std::vector<std::vector<Row>> layers;
  std::vector<Row> current;
  auto close_layer = [&] {
    if (!current.empty()) {
      layers.push_back(std::move(current));
      current.clear();
    }
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.rfind("LEGEND ", 0) == 0) {
      const std::string body = trimmed(line.substr(7));
      if (body.size() < 3 || body[1] != '=') throw fail("malformed legend entry, expected LEGEND c=name");
      const char code = body[0];
      const std::string name = body.substr(2);
      const std::uint16_t id = palette.add(name);
      if (auto it = code_ids.find(code); it != code_ids.end() && it->second != id)
        throw fail(std::string("legend code '") + code + "' redefined");
      code_ids[code] = id;
      continue;
    }
    if (trimmed(line).empty()) {
      close_layer();
      continue;
    }
    current.push_back({line, line_no});
  }
  close_layer();

  if (static_cast<int>(layers.size()) != sy)
    throw ParseError(origin_name + ": expected " + std::to_string(sy) + " layers, got " +
                     std::to_string(layers.size()));

  std::vector<std::uint16_t> cells(static_cast<std::size_t>(sx) * sy * sz, 0);
  for (int y = 0; y < sy; ++y) {
    const auto& rows = layers[y];
    if (static_cast<int>(rows.size()) != sz)
      throw ParseError(origin_name + ": layer " + std::to_string(y) + ": expected " +
                       std::to_string(sz) + " rows, got " + std::to_string(rows.size()));
    for (int z = 0; z < sz; ++z) {
      const Row& row = rows[z];
      line_no = row.line_no;
      if (static_cast<int>(row.text.size()) != sx)
        throw fail("layer " + std::to_string(y) + " row " + std::to_string(z) + ": expected " +
                   std::to_string(sx) + " columns, got " + std::to_string(row.text.size()));
      for (int x = 0; x < sx; ++x) {
        const char code = row.text[static_cast<std::size_t>(x)];
        const auto it = code_ids.find(code);
        if (it == code_ids.end())
          throw fail("layer " + std::to_string(y) + " row " + std::to_string(z) + " column " +
                     std::to_string(x) + ": code '" + std::string(1, code) + "' missing from legend");
        cells[static_cast<std::size_t>(x) +
              static_cast<std::size_t>(sx) * (static_cast<std::size_t>(z) +
                                              static_cast<std::size_t>(sz) * y)] = it->second;
      }
    }
  }
  return VoxelWorld::create(BlockPos(sx, sy, sz), BlockPos::Zero(), std::move(palette),
                            std::move(cells));
}

void save_layered_text(const VoxelWorld& w, std::ostream& out) {
  static const std::string codes =
      ".abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789";
  if (w.palette().size() > codes.size())
    throw ParseError("layered-text supports at most " + std::to_string(codes.size()) +
                     " block types");
  const BlockPos d = w.dims();
  out << "DIMS " << d.x() << ' ' << d.y() << ' ' << d.z() << '\n';
  for (std::size_t id = 0; id < w.palette().size(); ++id)
    out << "LEGEND " << codes[id] << '=' << w.palette().name(static_cast<std::uint16_t>(id)) << '\n';
  for (int y = 0; y < d.y(); ++y) {
    out << '\n';
    for (int z = 0; z < d.z(); ++z) {
      for (int x = 0; x < d.x(); ++x)
        out << codes[w.cells()[w.cell_index(BlockPos(x, y, z))]];
      out << '\n';
    }
  }
}

// ---------------------------------------------------------------------------
// voxel-json: {"dims":[x,y,z],"origin":[x,y,z],"palette":[...],"cells":[...]}
// cells are x-fastest, then z, then y.
// ---------------------------------------------------------------------------

BlockPos parse_vec3(const json& j, const std::string& key, const std::string& origin_name) {
  if (!j.is_array() || j.size() != 3 || !j[0].is_number_integer() || !j[1].is_number_integer() ||
      !j[2].is_number_integer())
    throw ParseError(origin_name + ": \"" + key + "\" must be an array of three integers");
  return BlockPos(j[0].get<int>(), j[1].get<int>(), j[2].get<int>());
}

VoxelWorld load_voxel_json(std::istream& in, const std::string& origin_name) {
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(origin_name + ": " + e.what());
  }
  if (!j.is_object()) throw ParseError(origin_name + ": top-level value must be an object");
  for (const char* key : {"dims", "palette", "cells"})
    if (!j.contains(key)) throw ParseError(origin_name + ": missing key \"" + std::string(key) + "\"");

  const BlockPos dims = parse_vec3(j["dims"], "dims", origin_name);
  const BlockPos origin =
      j.contains("origin") ? parse_vec3(j["origin"], "origin", origin_name) : BlockPos::Zero();

  if (!j["palette"].is_array() || j["palette"].empty())
    throw ParseError(origin_name + ": \"palette\" must be a non-empty array of names");
  if (j["palette"][0] != "air")
    throw ParseError(origin_name + ": palette id 0 must be \"air\"");
  Palette palette;
  std::unordered_set<std::string> seen;
  for (const auto& entry : j["palette"]) {
    if (!entry.is_string()) throw ParseError(origin_name + ": palette entries must be strings");
    const auto name = entry.get<std::string>();
    if (!seen.insert(name).second)
      throw ParseError(origin_name + ": duplicate palette name \"" + name + "\"");
    palette.add(name);
  }

  if (!j["cells"].is_array())
    throw ParseError(origin_name + ": \"cells\" must be an array of integer ids");
  std::vector<std::uint16_t> cells;
  cells.reserve(j["cells"].size());
  for (const auto& c : j["cells"]) {
    if (!c.is_number_integer())
      throw ParseError(origin_name + ": \"cells\" must contain only integers");
    const auto v = c.get<std::int64_t>();
    if (v < 0 || v >= static_cast<std::int64_t>(palette.size()))
      throw ParseError(origin_name + ": cell id " + std::to_string(v) + " outside palette of size " +
                       std::to_string(palette.size()));
    cells.push_back(static_cast<std::uint16_t>(v));
  }
  const auto expected = static_cast<std::size_t>(dims.x()) * dims.y() * dims.z();
  if (cells.size() != expected)
    throw ParseError(origin_name + ": cells length " + std::to_string(cells.size()) +
                     " does not match dims product " + std::to_string(expected));
  return VoxelWorld::create(dims, origin, std::move(palette), std::move(cells));
}

void save_voxel_json(const VoxelWorld& w, std::ostream& out) {
  ordered_json j;
  j["dims"] = {w.dims().x(), w.dims().y(), w.dims().z()};
  j["origin"] = {w.origin().x(), w.origin().y(), w.origin().z()};
  j["palette"] = w.palette().names();
  j["cells"] = w.cells();
  out << j.dump() << '\n';
}

}  // namespace

VoxelWorld load_world_stream(std::istream& in, WorldFormat format, const std::string& origin_name) {
  return format == WorldFormat::kLayeredText ? load_layered_text(in, origin_name)
                                             : load_voxel_json(in, origin_name);
}

VoxelWorld load_world(const std::filesystem::path& path, WorldFormat format) {
  auto in = open_input(path);
  return load_world_stream(in, format, path.filename().string());
}

void save_world_stream(const VoxelWorld& world, std::ostream& out, WorldFormat format) {
  if (format == WorldFormat::kLayeredText)
    save_layered_text(world, out);
  else
    save_voxel_json(world, out);
}

void save_world(const VoxelWorld& world, const std::filesystem::path& path, WorldFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write " + path.string());
  save_world_stream(world, out, format);
}

BlockClasses load_block_classes_stream(std::istream& in, const std::string& origin_name) {
  BlockClasses classes;
  std::unordered_set<std::string>* section = nullptr;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trimmed(line);
    if (t.empty() || t[0] == '#') continue;
    if (t.front() == '[' && t.back() == ']') {
      const std::string name = t.substr(1, t.size() - 2);
      if (name == "empty") section = &classes.empty;
      else if (name == "standable") section = &classes.standable;
      else if (name == "transparent") section = &classes.transparent;
      else if (name == "doors") section = &classes.doors;
      else
        throw ParseError(origin_name + ":" + std::to_string(line_no) + ": unknown section [" + name +
                         "]");
      continue;
    }
    if (!section)
      throw ParseError(origin_name + ":" + std::to_string(line_no) +
                       ": block name before any [section]");
    section->insert(t);
  }
  classes.validate();
  return classes;
}

BlockClasses load_block_classes(const std::filesystem::path& path) {
  auto in = open_input(path);
  return load_block_classes_stream(in, path.filename().string());
}

}  // namespace voxelvist
