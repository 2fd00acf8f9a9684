#pragma once

#include <vector>

#include "reclink/gibbs.hpp"

namespace reclink {

// Mean over kept sweeps of (disagreement count / non-missing cells), clamped
// to [0, bound]. A PIV with no non-missing cells keeps `previous` and prints
// a warning to stderr.
double update_phi_mistake(const SufficientStats& stats, int k, double bound,
                          double previous);

// Log-likelihood of the survival observations at log-hazard alpha, dropping
// terms constant in alpha: sum over disagreeing entries of
// log(exp(exp(alpha) * t) - 1) minus exp(alpha) * (sum of all time gaps).
double change_hazard_objective(const std::vector<SurvivalObs>& obs, double alpha);

// Golden-section maximiser of the objective over [lo, hi], tolerance `tol`
// in the argument (the objective is unimodal in alpha). No observations, or
// none carrying information, returns lo. Disagreements whose time gaps are
// all zero raise ConfigError: the hazard is unidentifiable there.
double update_alpha(const SufficientStats& stats, int k, double lo = -10.0,
                    double hi = 5.0, double tol = 1e-6);

// Pooled true-value counts normalised to a distribution. All-zero counts
// raise ConfigError.
std::vector<double> update_eta(const SufficientStats& stats, int k);

// Mean kept link count divided by n_a.
double update_gamma(const SufficientStats& stats, int n_a);

}  // namespace reclink
