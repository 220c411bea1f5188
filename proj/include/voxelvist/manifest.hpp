// Copyright (c) 2026 The voxelvist authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "voxelvist/common.hpp"

#include <filesystem>
#include <map>
#include <string>

namespace voxelvist {

/// Provenance record written next to every produced artifact
/// (<output>.manifest.json). Input hashes change iff an input file changes;
/// timings are informational.
struct RunManifest {
  std::string tool_version = kVersion;
  std::string command;
  std::map<std::string, std::string> inputs;   // path -> fingerprint
  std::map<std::string, std::string> outputs;  // path -> fingerprint
  std::map<std::string, std::string> config;
  std::map<std::string, double> stage_seconds;
  std::map<std::string, std::int64_t> counts;
  double wall_seconds = 0;

  void add_input(const std::filesystem::path& path);
  void add_output(const std::filesystem::path& path);
  void write(const std::filesystem::path& path) const;
};

/// FNV-1a 64 fingerprint of a file's bytes, rendered as "fnv1a64:<hex>".
std::string file_fingerprint(const std::filesystem::path& path);

}  // namespace voxelvist
