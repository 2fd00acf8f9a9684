#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "reclink/kernels.hpp"
#include "reclink/rng.hpp"
#include "reclink/types.hpp"

namespace reclink {

// Latent chain state: true values for both files plus the linkage, stored as
// a partial bijection from both sides. h_* are row-major n*k, values 1..n_k.
struct LatentState {
  std::vector<int32_t> h_a, h_b;
  std::vector<int32_t> link_of_row;  // size n_a; linked B row or -1
  std::vector<int32_t> link_of_col;  // size n_b; linked A row or -1
  int n_links = 0;

  // Internal-consistency check (shapes, value ranges, mutual link maps,
  // stable true values equal on linked pairs). Throws std::logic_error.
  void validate(const RecordTable& a, const RecordTable& b,
                const std::vector<PivSpec>& specs) const;
};

// One linked pair's contribution to the change-hazard update: the time gap
// and whether the two true values agreed.
struct SurvivalObs {
  double t;
  bool agree;
};

// Latent-data summaries pooled over the kept sweeps of one chain.
struct SufficientStats {
  int n_samples = 0;
  // registered non-missing cells per PIV, both files (constant in the data)
  std::vector<int64_t> nonmissing;
  // per PIV, per kept sweep: cells where the registered value differs from
  // the current true value
  std::vector<std::vector<int64_t>> disagreements;
  // per PIV: true-value counts pooled over sweeps; every A record contributes
  // its h_a (covering linked pairs exactly once), non-linked B records add h_b
  std::vector<std::vector<int64_t>> truth_counts;
  // per unstable PIV: one entry per (kept sweep, linked pair)
  std::vector<std::vector<SurvivalObs>> survival_obs;
  std::vector<int> links_per_sample;
};

struct ChainOptions {
  int burnin = 100;
  int kept = 100;
  uint64_t seed = 0;
  int threads = 1;
};

// Initial state with a positive complete-data likelihood: true values copied
// from the registered ones, missing cells imputed from eta, no links.
LatentState init_state(const RecordTable& a, const RecordTable& b,
                       const std::vector<PivSpec>& specs, const ModelParams& params,
                       uint64_t seed);

// Reference resampling ops (direct enumeration of the full conditionals).
// The chain itself runs inverse-CDF samplers that are distribution-identical;
// the unit suite pins the two together.

// Redraw the true value of a non-linked record's PIV k in place.
void resample_truth_nonlinked(const RecordTable& table, FileTag file, int row, int k,
                              const std::vector<PivSpec>& specs, const ModelParams& params,
                              std::vector<int32_t>& h, RngStream& rng);

// Redraw the pair of true values of a linked pair's PIV k in place.
void resample_truth_linked(const RecordTable& a, const RecordTable& b,
                           int row_a, int row_b, int k,
                           const std::vector<PivSpec>& specs, const ModelParams& params,
                           std::vector<int32_t>& h_a, std::vector<int32_t>& h_b,
                           RngStream& rng);

// Full-conditional P(link between row_a and row_b | everything else) given
// the current true values. Exactly 0 when the row or column is otherwise
// occupied, or when a stable PIV's true values differ. The registered-value
// kernels cancel out of the ratio, so only eta, gamma, and survival appear.
double link_probability(const RecordTable& a, const RecordTable& b,
                        const std::vector<PivSpec>& specs, const ModelParams& params,
                        const LatentState& state, int row_a, int row_b);

// Draw the linkage cell from its full conditional and update the state.
// Consumes one uniform only when the probability is strictly inside (0, 1).
void resample_linkage_cell(const RecordTable& a, const RecordTable& b,
                           const std::vector<PivSpec>& specs, const ModelParams& params,
                           LatentState& state, int row_a, int row_b, RngStream& rng);

// Run a full chain from init_state: burnin + kept sweeps, invoking on_kept
// after each kept sweep with the current state and the 1-based kept index.
// Each sweep resamples non-linked truths (both files), linked-pair truths,
// then scans the candidate linkage cells in row-major order. Candidates are
// pairs whose stable true values match, bucketed by signature each sweep.
void run_chain_visit(const RecordTable& a, const RecordTable& b,
                     const std::vector<PivSpec>& specs, const ModelParams& params,
                     const ChainOptions& opt,
                     const std::function<void(const LatentState&, int)>& on_kept);

// Chain run that accumulates the M-step summaries over the kept sweeps.
SufficientStats run_chain(const RecordTable& a, const RecordTable& b,
                          const std::vector<PivSpec>& specs, const ModelParams& params,
                          const ChainOptions& opt);

namespace detail {

// Per-PIV inverse-CDF tables for the fast samplers (built once per chain;
// parameters are constant within one chain).
struct PivTables {
  std::vector<std::vector<double>> eta_cdf;
  std::vector<double> eta_total;
  std::vector<double> mist_diag;  // 1 - phi_mistake
  std::vector<double> mist_off;   // phi_mistake / (n_k - 1), 0 when n_k == 1
};

PivTables build_piv_tables(const ModelParams& params, const std::vector<PivSpec>& specs);

// Fast draw of a non-linked record's true value given its registered value.
// The missing-probability factor cancels, so no file tag is needed.
int sample_truth_nonlinked_fast(const PivTables& tables, const ModelParams& params,
                                const std::vector<PivSpec>& specs, int k, int g,
                                RngStream& rng);

// Fast draw of a linked pair's true values (h_a, h_b); t is the registration
// time gap (ignored for stable PIVs).
std::pair<int, int> sample_truth_linked_fast(const PivTables& tables,
                                             const ModelParams& params,
                                             const std::vector<PivSpec>& specs, int k,
                                             int g_a, int g_b, double t, RngStream& rng);

}  // namespace detail

}  // namespace reclink
