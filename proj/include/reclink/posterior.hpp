#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "reclink/gibbs.hpp"
#include "reclink/kernels.hpp"
#include "reclink/types.hpp"

namespace reclink {

struct PairProb {
  int32_t row_a = 0;
  int32_t row_b = 0;
  double prob = 0.0;
};

// Posterior linkage probabilities estimated at fixed parameters: for every
// pair that was ever linked across the kept sweeps, the fraction of sweeps in
// which it was linked. Pairs are sorted by (row_a, row_b); never-linked pairs
// are not stored.
struct LinkagePosterior {
  int n_a = 0, n_b = 0;
  int n_sim = 0;
  std::vector<PairProb> pairs;
};

struct PosteriorOptions {
  int burnin = 100;
  int n_sim = 1000;
  uint64_t seed = 0;
  int threads = 1;
};

LinkagePosterior sample_posterior(const RecordTable& a, const RecordTable& b,
                                  const std::vector<PivSpec>& specs,
                                  const ModelParams& params, const PosteriorOptions& opt);

// Pairs with probability strictly above xi. For xi >= 0.5 the result is
// one-to-one: a record's posterior mass over partners cannot exceed 1, so at
// most one partner can be above 0.5.
std::vector<PairProb> select_by_threshold(const LinkagePosterior& posterior, double xi);

// 1 - mean(selected probabilities); 0 when nothing is selected.
double estimated_fdr(const LinkagePosterior& posterior, double xi);

// Smallest threshold on the grid {0.5} united with the observed probabilities
// >= 0.5 whose estimated FDR is below fdr_max. When no grid point qualifies,
// feasible is false and xi/est_fdr report the best (lowest-FDR) grid point.
struct FdrSelection {
  double xi = 1.0;
  double est_fdr = 1.0;
  bool feasible = false;
  std::vector<PairProb> pairs;
};
FdrSelection select_by_fdr(const LinkagePosterior& posterior, double fdr_max);

// 50 equal-width probability bins over (0, 1] as CSV: bin_lo, bin_hi, count.
void export_histogram(const LinkagePosterior& posterior, const std::string& path);

}  // namespace reclink
