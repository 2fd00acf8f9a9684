#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace reclink {

// One partially identifying variable (PIV). Values are encoded 1..support,
// with 0 reserved for missing.
struct PivSpec {
  std::string name;
  int support = 0;            // number of categories n_k
  bool stable = true;         // stable PIVs block candidate pairs on true values
  double mistake_bound = 0.10;  // upper clamp for the estimated mistake probability
  bool use_soundex = false;   // phonetic-encode raw strings before building the support
};

// Encoded records of one file: n rows by k PIV columns, row-major.
// codes[row * k + piv] in {0, 1, .., support[piv]}, 0 = missing.
// times is empty when the file carries no registration times.
struct RecordTable {
  int n = 0;
  int k = 0;
  std::vector<int32_t> codes;
  std::vector<double> times;

  int32_t at(int row, int piv) const { return codes[static_cast<size_t>(row) * k + piv]; }
  int32_t& at(int row, int piv) { return codes[static_cast<size_t>(row) * k + piv]; }
  bool has_times() const { return !times.empty(); }
};

// Bidirectional value <-> code map for one PIV. Codes are 1-based;
// labels[c - 1] is the raw (possibly phonetic) string for code c.
struct SupportMap {
  std::vector<std::string> labels;
  std::unordered_map<std::string, int32_t> code;

  int size() const { return static_cast<int>(labels.size()); }

  int32_t add(const std::string& value) {
    auto it = code.find(value);
    if (it != code.end()) return it->second;
    labels.push_back(value);
    int32_t c = static_cast<int32_t>(labels.size());
    code.emplace(value, c);
    return c;
  }

  // 0 if the value is not in the support
  int32_t lookup(const std::string& value) const {
    auto it = code.find(value);
    return it == code.end() ? 0 : it->second;
  }
};

}  // namespace reclink
