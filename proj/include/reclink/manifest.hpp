#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace reclink {

// Provenance record written before any other output of a run: what command
// ran, with which resolved options and seed, on which inputs (by content
// digest), producing which files.
struct RunManifest {
  std::string command;
  uint64_t seed = 0;
  int threads = 1;
  std::vector<std::pair<std::string, std::string>> options;  // name, rendered value
  std::vector<std::string> inputs;   // paths; digests added at write time
  std::vector<std::string> outputs;  // declared output paths
};

// FNV-1a 64 over the file's bytes; change detection, not cryptography.
uint64_t fnv1a64_file(const std::string& path);

void write_manifest(const std::string& path, const RunManifest& manifest);

}  // namespace reclink
