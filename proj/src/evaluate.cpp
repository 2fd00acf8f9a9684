#include "reclink/evaluate.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "reclink/errors.hpp"
#include "reclink/rng.hpp"

namespace reclink {

namespace {

uint64_t row_hash(const RecordTable& t, int row) {
  uint64_t h = 0x243f6a8885a308d3ull;
  for (int k = 0; k < t.k; ++k) {
    h = mix64(h ^ (static_cast<uint64_t>(t.at(row, k)) + 0x9e3779b97f4a7c15ull * k));
  }
  return h;
}

bool rows_equal(const RecordTable& a, int i, const RecordTable& b, int j) {
  for (int k = 0; k < a.k; ++k) {
    if (a.at(i, k) != b.at(j, k)) return false;
  }
  return true;
}

}  // namespace

std::vector<std::pair<int, int>> simplistic_link(const RecordTable& a,
                                                 const RecordTable& b) {
  if (a.k != b.k) throw DataError("simplistic baseline: files have different PIV counts");
  std::unordered_map<uint64_t, std::vector<int>> buckets;
  buckets.reserve(b.n * 2);
  for (int j = 0; j < b.n; ++j) buckets[row_hash(b, j)].push_back(j);

  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < a.n; ++i) {
    const auto it = buckets.find(row_hash(a, i));
    if (it == buckets.end()) continue;
    for (int j : it->second) {
      if (rows_equal(a, i, b, j)) pairs.emplace_back(i, j);
    }
  }
  return pairs;  // i ascending, j ascending within i by construction
}

Confusion confusion(const std::vector<std::pair<int, int>>& estimated,
                    const std::vector<std::pair<int, int>>& truth) {
  std::unordered_set<uint64_t> truth_keys;
  truth_keys.reserve(truth.size() * 2);
  for (const auto& [i, j] : truth) {
    truth_keys.insert(static_cast<uint64_t>(static_cast<uint32_t>(i)) << 32 |
                      static_cast<uint32_t>(j));
  }
  Confusion c;
  for (const auto& [i, j] : estimated) {
    const uint64_t key = static_cast<uint64_t>(static_cast<uint32_t>(i)) << 32 |
                         static_cast<uint32_t>(j);
    if (truth_keys.count(key)) ++c.tp;
    else ++c.fp;
  }
  c.fn = static_cast<int64_t>(truth.size()) - c.tp;
  return c;
}

Metrics metrics(const Confusion& c) {
  Metrics m;
  if (c.tp + c.fp > 0) m.fdr = static_cast<double>(c.fp) / (c.tp + c.fp);
  else m.degenerate = true;
  if (c.tp + c.fn > 0) m.sensitivity = static_cast<double>(c.tp) / (c.tp + c.fn);
  else m.degenerate = true;
  if (2 * c.tp + c.fp + c.fn > 0) {
    m.f1 = static_cast<double>(2 * c.tp) / (2 * c.tp + c.fp + c.fn);
  } else {
    m.degenerate = true;
  }
  return m;
}

}  // namespace reclink
