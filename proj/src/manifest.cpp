// Copyright (c) 2026 The voxelvist authors
// SPDX-License-Identifier: Apache-2.0
#include "voxelvist/manifest.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>
#include <vector>

namespace voxelvist {

std::string file_fingerprint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::uint64_t h = 0xCBF29CE484222325ull;
  std::vector<char> buf(1 << 16);
  while (in) {
    in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
    h = fnv1a64(buf.data(), static_cast<std::size_t>(in.gcount()), h);
  }
  char out[32];
  std::snprintf(out, sizeof(out), "fnv1a64:%016llx", static_cast<unsigned long long>(h));
  return out;
}

void RunManifest::add_input(const std::filesystem::path& path) {
  inputs[path.string()] = file_fingerprint(path);
}

void RunManifest::add_output(const std::filesystem::path& path) {
  outputs[path.string()] = file_fingerprint(path);
}

void RunManifest::write(const std::filesystem::path& path) const {
  nlohmann::ordered_json j;
  j["tool"] = "voxelvist";
  j["version"] = tool_version;
  j["command"] = command;
  j["inputs"] = inputs;
  j["outputs"] = outputs;
  j["config"] = config;
  j["counts"] = counts;
  j["stage_seconds"] = stage_seconds;
  j["wall_seconds"] = wall_seconds;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

}  // namespace voxelvist
