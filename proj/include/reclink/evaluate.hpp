#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "reclink/types.hpp"

namespace reclink {

// Deterministic exact-match baseline: every (i, j) whose full PIV rows are
// identical, missing included (0 == 0 counts as agreement). Pairs come out in
// ascending (row_a, row_b) order; one A row can pair with many B rows.
std::vector<std::pair<int, int>> simplistic_link(const RecordTable& a,
                                                 const RecordTable& b);

struct Confusion {
  int64_t tp = 0;
  int64_t fp = 0;
  int64_t fn = 0;
};

Confusion confusion(const std::vector<std::pair<int, int>>& estimated,
                    const std::vector<std::pair<int, int>>& truth);

// fdr = fp / (tp + fp), sensitivity = tp / (tp + fn),
// f1 = 2 tp / (2 tp + fp + fn). A vanishing denominator yields 0 for that
// metric and sets `degenerate` (except f1's, which is only zero when there
// are no true links and no estimates at all).
struct Metrics {
  double fdr = 0.0;
  double sensitivity = 0.0;
  double f1 = 0.0;
  bool degenerate = false;
};

Metrics metrics(const Confusion& c);

}  // namespace reclink
