#include "reclink/kernels.hpp"

#include <cmath>
#include <string>

#include "reclink/errors.hpp"

namespace reclink {

double survival(double alpha, double t) {
  if (t < 0.0) throw ConfigError("survival: negative time gap " + std::to_string(t));
  return std::exp(-std::exp(alpha) * t);
}

double truth_prior(const ModelParams& params, int k, int h) {
  return params.eta[k][h - 1];
}

double obs_given_truth(const ModelParams& params, const std::vector<PivSpec>& specs,
                       FileTag file, int k, int g, int h) {
  const int n_k = specs[k].support;
  const double miss =
      (file == FileTag::A) ? params.phi_missing_a[k] : params.phi_missing_b[k];
  if (g == 0) return miss;
  const double mist = params.phi_mistake[k];
  if (g == h) return (1.0 - miss) * (1.0 - mist);
  if (n_k < 2) {
    throw ConfigError("obs_given_truth: g != h is impossible for PIV '" +
                      specs[k].name + "' with a single-value support");
  }
  return (1.0 - miss) * mist / (n_k - 1);
}

double linked_truth_joint(const ModelParams& params, const std::vector<PivSpec>& specs,
                          int k, int h_a, int h_b, double t) {
  const double prior = params.eta[k][h_a - 1];
  if (specs[k].stable) return (h_a == h_b) ? prior : 0.0;
  const int n_k = specs[k].support;
  if (n_k < 2) {
    throw ConfigError("unstable PIV '" + specs[k].name +
                      "' needs a support of at least 2 values");
  }
  const double s = survival(params.alpha[k], t);
  return prior * ((h_a == h_b) ? s : (1.0 - s) / (n_k - 1));
}

void validate_params(const ModelParams& params, const std::vector<PivSpec>& specs) {
  const size_t k = specs.size();
  auto check_size = [&](size_t got, const char* what) {
    if (got != k) {
      throw ConfigError(std::string("params: ") + what + " has " + std::to_string(got) +
                        " entries for " + std::to_string(k) + " PIVs");
    }
  };
  check_size(params.phi_missing_a.size(), "phi_missing_a");
  check_size(params.phi_missing_b.size(), "phi_missing_b");
  check_size(params.phi_mistake.size(), "phi_mistake");
  check_size(params.eta.size(), "eta");
  check_size(params.alpha.size(), "alpha");

  auto check_prob = [](double p, const std::string& what) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw ConfigError("params: " + what + " = " + std::to_string(p) +
                        " is not a probability");
    }
  };
  check_prob(params.gamma, "gamma");
  for (size_t i = 0; i < k; ++i) {
    const std::string& name = specs[i].name;
    check_prob(params.phi_missing_a[i], "phi_missing_a[" + name + "]");
    check_prob(params.phi_missing_b[i], "phi_missing_b[" + name + "]");
    check_prob(params.phi_mistake[i], "phi_mistake[" + name + "]");
    if (params.phi_mistake[i] > specs[i].mistake_bound + 1e-12) {
      throw ConfigError("params: phi_mistake[" + name + "] exceeds its bound");
    }
    if (static_cast<int>(params.eta[i].size()) != specs[i].support) {
      throw ConfigError("params: eta[" + name + "] size does not match the support");
    }
    double total = 0.0;
    for (double e : params.eta[i]) {
      if (!(e >= 0.0)) throw ConfigError("params: eta[" + name + "] has a negative entry");
      total += e;
    }
    if (std::abs(total - 1.0) > 1e-9) {
      throw ConfigError("params: eta[" + name + "] sums to " + std::to_string(total));
    }
    if (!specs[i].stable) {
      if (!std::isfinite(params.alpha[i])) {
        throw ConfigError("params: alpha[" + name + "] is not finite");
      }
      if (specs[i].support < 2) {
        throw ConfigError("unstable PIV '" + name + "' needs a support of at least 2 values");
      }
    }
  }
}

}  // namespace reclink
