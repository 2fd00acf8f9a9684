#pragma once

#include <vector>

#include "reclink/kernels.hpp"
#include "reclink/types.hpp"

namespace testsupport {

// Exact per-pair linkage marginals P(Delta_ij = 1 | G) for a tiny instance,
// by brute force: every partial matching of the two files crossed with every
// assignment of true values to every record and PIV. All model arithmetic is
// written out locally from the model definition rather than calling the
// library kernels, so this is an independent cross-check, not a round trip.
// Feasible up to roughly n_a=3, n_b=4, K=2, support 2.
std::vector<std::vector<double>> exact_link_marginals(
    const reclink::RecordTable& a, const reclink::RecordTable& b,
    const std::vector<reclink::PivSpec>& specs, const reclink::ModelParams& params);

}  // namespace testsupport
