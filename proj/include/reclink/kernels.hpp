#pragma once

#include <vector>

#include "reclink/types.hpp"

namespace reclink {

enum class FileTag { A, B };

// Full parameter vector of the linkage model. All per-PIV vectors are indexed
// by PIV position; eta[k] has specs[k].support entries summing to 1.
// phi_missing_* are fixed from the observed missing rates; phi_mistake is
// shared across files and clamped to [0, mistake_bound]. alpha[k] is the log
// hazard of a true-value change per unit time (only read for unstable PIVs).
struct ModelParams {
  double gamma = 0.0;                        // prior linkage proportion, per A record
  std::vector<double> phi_missing_a;
  std::vector<double> phi_missing_b;
  std::vector<double> phi_mistake;
  std::vector<std::vector<double>> eta;
  std::vector<double> alpha;
};

// Probability that an unstable true value survives (stays equal) over a time
// gap t >= 0: exp(-exp(alpha) * t). Negative t raises ConfigError.
double survival(double alpha, double t);

// P(true value = h) = eta_k[h], h in 1..n_k.
double truth_prior(const ModelParams& params, int k, int h);

// P(registered value g | true value h) for one file:
//   g = 0 -> phi_missing;  g = h -> (1-phi_missing)(1-phi_mistake);
//   else  -> (1-phi_missing) * phi_mistake / (n_k - 1).
// Sums to 1 over g in {0..n_k}. g != h with n_k = 1 is impossible input.
double obs_given_truth(const ModelParams& params, const std::vector<PivSpec>& specs,
                       FileTag file, int k, int g, int h);

// Joint prior of a linked pair's true values (h_a, h_b) for PIV k.
// Stable: eta[h_a] * 1{h_a == h_b}. Unstable with time gap t:
// eta[h_a] * S^1{h_a==h_b} * ((1-S)/(n_k-1))^1{h_a!=h_b}, S = survival(alpha_k, t).
// Sums to 1 over (h_a, h_b). Unstable requires n_k >= 2 (ConfigError otherwise).
double linked_truth_joint(const ModelParams& params, const std::vector<PivSpec>& specs,
                          int k, int h_a, int h_b, double t);

// Shape and invariant checks (simplex eta within 1e-9, probabilities in range,
// alpha finite for unstable PIVs, n_k >= 2 for unstable PIVs). Raises
// ConfigError with the first violated condition.
void validate_params(const ModelParams& params, const std::vector<PivSpec>& specs);

}  // namespace reclink
