#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "reclink/types.hpp"

namespace reclink {

// Minimal TOML subset: top-level key = value pairs, [section] tables,
// [[section]] arrays of tables, strings with basic escapes, integers, floats,
// booleans, and (possibly nested) arrays. Enough for run configs; anything
// fancier raises ConfigError.
struct TomlValue {
  std::variant<std::string, int64_t, double, bool, std::vector<TomlValue>> v;

  bool is_string() const { return std::holds_alternative<std::string>(v); }
  bool is_int() const { return std::holds_alternative<int64_t>(v); }
  bool is_float() const { return std::holds_alternative<double>(v); }
  bool is_bool() const { return std::holds_alternative<bool>(v); }
  bool is_array() const { return std::holds_alternative<std::vector<TomlValue>>(v); }

  const std::string& as_string(const std::string& key) const;
  int64_t as_int(const std::string& key) const;
  double as_float(const std::string& key) const;  // accepts integers too
  bool as_bool(const std::string& key) const;
  const std::vector<TomlValue>& as_array(const std::string& key) const;
};

using TomlTable = std::map<std::string, TomlValue>;

struct TomlDoc {
  TomlTable root;
  std::map<std::string, TomlTable> tables;
  std::map<std::string, std::vector<TomlTable>> table_arrays;
};

TomlDoc parse_toml(const std::string& text);

// Resolved configuration of a linkage run.
struct LinkConfig {
  std::string file_a, file_b;
  std::string time_column;  // empty = no registration times
  std::vector<std::string> missing_tokens = {"", "NA"};
  uint64_t seed = 17;
  int threads = 1;
  int v0 = 75, v1 = 25;
  int z0 = 100, z1 = 100;
  int posterior_burnin = 100;
  int n_sim = 1000;
  double threshold = 0.5;  // selection threshold xi
  double fdr_max = -1.0;   // >= 0: choose the threshold by this FDR target
  std::vector<PivSpec> pivs;
  // pairs of PIV names replaced by their interaction after encoding
  std::vector<std::pair<std::string, std::string>> merges;
};

LinkConfig link_config_from_toml(const TomlDoc& doc);
LinkConfig load_link_config(const std::string& path);

}  // namespace reclink
