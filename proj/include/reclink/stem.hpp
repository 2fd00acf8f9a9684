#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "reclink/gibbs.hpp"
#include "reclink/kernels.hpp"
#include "reclink/types.hpp"

namespace reclink {

struct StemOptions {
  int v0 = 75;  // burn-in iterations
  int v1 = 25;  // averaged iterations
  int z0 = 100;  // chain burn-in sweeps per iteration
  int z1 = 100;  // chain kept sweeps per iteration
  uint64_t seed = 17;
  int threads = 1;
};

struct StemTrace {
  std::vector<ModelParams> iterates;  // length v0 + v1
  std::vector<double> mean_links;     // mean kept link count per iteration
};

struct FitResult {
  ModelParams theta;  // coordinate-wise mean of the last v1 iterates
  StemTrace trace;
  bool swapped = false;  // files were exchanged so that file A is the smaller
  std::vector<PivSpec> specs;
};

// True when fitting must exchange the files (the model wants n_a <= n_b).
bool needs_swap(const RecordTable& a, const RecordTable& b);

// Starting parameters: missing probabilities fixed from the data, mistake
// probabilities at min(0.05, bound), gamma 0.05, eta uniform, and for each
// unstable PIV a log hazard giving 0.95 survival at the mean cross-pair time
// gap, clamped to [-10, 5].
ModelParams initial_params(const RecordTable& a, const RecordTable& b,
                           const std::vector<PivSpec>& specs);

// Stochastic EM: each iteration restarts a Gibbs chain at the current
// parameters, then updates every parameter from the kept sweeps. Inputs are
// reoriented first so file A is the smaller file (recorded in `swapped`).
FitResult fit(const RecordTable& a, const RecordTable& b,
              const std::vector<PivSpec>& specs, const StemOptions& opt);

// Per-iteration parameter trace as CSV for convergence inspection.
// Writes to a temp file and renames, so a rerun never leaves a torn file.
void export_trace(const StemTrace& trace, const std::vector<PivSpec>& specs,
                  const std::string& path);

}  // namespace reclink
