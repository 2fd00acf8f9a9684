#include "reclink/manifest.hpp"

#include <fstream>

#include "json.hpp"
#include "reclink/errors.hpp"
#include "reclink/version.hpp"

namespace reclink {

uint64_t fnv1a64_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path + " for digesting");
  uint64_t hash = 0xcbf29ce484222325ull;
  char buf[1 << 16];
  while (in) {
    in.read(buf, sizeof buf);
    const std::streamsize got = in.gcount();
    for (std::streamsize i = 0; i < got; ++i) {
      hash ^= static_cast<unsigned char>(buf[i]);
      hash *= 0x100000001b3ull;
    }
  }
  return hash;
}

void write_manifest(const std::string& path, const RunManifest& manifest) {
  nlohmann::json doc;
  doc["command"] = manifest.command;
  doc["version"] = kVersion;
  doc["seed"] = manifest.seed;
  doc["threads"] = manifest.threads;
  nlohmann::json options = nlohmann::json::object();
  for (const auto& [name, value] : manifest.options) options[name] = value;
  doc["options"] = options;
  nlohmann::json inputs = nlohmann::json::array();
  for (const auto& input : manifest.inputs) {
    char digest[32];
    std::snprintf(digest, sizeof digest, "fnv1a64:%016llx",
                  static_cast<unsigned long long>(fnv1a64_file(input)));
    inputs.push_back({{"path", input}, {"digest", digest}});
  }
  doc["inputs"] = inputs;
  doc["outputs"] = manifest.outputs;

  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path);
  out << doc.dump(2) << '\n';
  if (!out) throw DataError("short write to " + path);
}

}  // namespace reclink
