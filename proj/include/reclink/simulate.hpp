#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "reclink/types.hpp"

namespace reclink {

// Synthetic two-file scenario. The defaults reproduce the registry setting
// used throughout the tests: 800 + 1000 records sharing 500 individuals,
// five categorical PIVs with small skewed supports, sparse mistakes and
// missing values, and a fifth PIV whose true value drifts over time.
struct SimulateOptions {
  int n_a = 800;
  int n_b = 1000;
  int n_links = 500;
  std::vector<int> supports = {6, 7, 8, 9, 15};
  double latent_slope = 0.25;  // true values drawn with weight exp(slope * h)
  // per-PIV mistake probabilities; empty = mistake_rate everywhere except the
  // unstable PIV, which gets 0
  std::vector<double> mistake_rates;
  double mistake_rate = 0.02;
  double missing_rate = 0.007;
  int unstable_piv = 4;  // 0-based index, -1 = all PIVs stable
  double hazard = 0.28;  // true-value change hazard per unit time gap
  double t_a_min = 0.0, t_a_max = 3.0;
  double t_b_min = 3.0, t_b_max = 6.0;
  uint64_t seed = 1;

  // fill mistake_rates and sanity-check ranges; raises ConfigError
  void resolve();
};

struct SimulatedData {
  RecordTable a, b;
  std::vector<std::pair<int, int>> links;  // true (row_a, row_b), ascending row_a
  std::vector<PivSpec> specs;
};

// Weight exp(slope * h) for h = 1..n_k, normalised.
std::vector<double> latent_pmf(int n_k, double slope);

SimulatedData simulate(const SimulateOptions& opt);

// Additional registration errors on top of whatever the tables already have:
// independently per cell and file, substitution with probability level/4 and
// blanking with probability level/4. Only non-missing cells are touched.
void inject_distortion(RecordTable& a, RecordTable& b, const std::vector<PivSpec>& specs,
                       double level, uint64_t seed);

// Scalar data-quality summary over the true links: median per-PIV
// disagreement rate (both values present and different) plus median per-PIV
// missing rate (either value absent).
double distortion_level(const RecordTable& a, const RecordTable& b,
                        const std::vector<std::pair<int, int>>& links);

}  // namespace reclink
