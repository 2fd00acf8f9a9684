#include "reclink/mstep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "reclink/errors.hpp"

namespace reclink {

namespace {

// log(exp(x) - 1) without overflow or catastrophic cancellation
double log_expm1(double x) {
  if (x <= 30.0) return std::log(std::expm1(x));
  return x + std::log1p(-std::exp(-x));
}

double objective_split(const std::vector<double>& t_disagree, double t_total,
                       double alpha) {
  const double lambda = std::exp(alpha);
  double value = -lambda * t_total;
  for (double t : t_disagree) value += log_expm1(lambda * t);
  return value;
}

}  // namespace

double update_phi_mistake(const SufficientStats& stats, int k, double bound,
                          double previous) {
  if (stats.nonmissing[k] <= 0) {
    std::fprintf(stderr,
                 "warning: PIV %d has no registered values; mistake probability "
                 "kept at %g\n",
                 k, previous);
    return previous;
  }
  const auto& d = stats.disagreements[k];
  if (d.empty()) throw ConfigError("mistake update: no kept samples");
  double mean = 0.0;
  for (int64_t v : d) mean += static_cast<double>(v);
  mean /= static_cast<double>(d.size());
  return std::clamp(mean / static_cast<double>(stats.nonmissing[k]), 0.0, bound);
}

double change_hazard_objective(const std::vector<SurvivalObs>& obs, double alpha) {
  std::vector<double> t_disagree;
  double t_total = 0.0;
  for (const auto& o : obs) {
    t_total += o.t;
    if (!o.agree) t_disagree.push_back(o.t);
  }
  return objective_split(t_disagree, t_total, alpha);
}

double update_alpha(const SufficientStats& stats, int k, double lo, double hi,
                    double tol) {
  std::vector<double> t_disagree;
  double t_total = 0.0;
  for (const auto& o : stats.survival_obs[k]) {
    t_total += o.t;
    if (!o.agree) t_disagree.push_back(o.t);
  }
  if (!t_disagree.empty() &&
      *std::max_element(t_disagree.begin(), t_disagree.end()) <= 0.0) {
    throw ConfigError(
        "change-hazard update: every disagreeing pair has a zero time gap; "
        "the hazard is unidentifiable");
  }
  if (t_total <= 0.0) return lo;  // nothing informative

  // golden-section search; the objective is unimodal in alpha
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = objective_split(t_disagree, t_total, c);
  double fd = objective_split(t_disagree, t_total, d);
  while (b - a > tol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = objective_split(t_disagree, t_total, c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = objective_split(t_disagree, t_total, d);
    }
  }
  return (a + b) / 2.0;
}

std::vector<double> update_eta(const SufficientStats& stats, int k) {
  const auto& counts = stats.truth_counts[k];
  double total = 0.0;
  for (int64_t c : counts) total += static_cast<double>(c);
  if (total <= 0.0) throw ConfigError("eta update: no true-value observations");
  std::vector<double> eta(counts.size());
  for (size_t v = 0; v < counts.size(); ++v) {
    eta[v] = static_cast<double>(counts[v]) / total;
  }
  return eta;
}

double update_gamma(const SufficientStats& stats, int n_a) {
  if (stats.links_per_sample.empty()) throw ConfigError("gamma update: no kept samples");
  double mean = 0.0;
  for (int links : stats.links_per_sample) mean += links;
  mean /= static_cast<double>(stats.links_per_sample.size());
  return mean / n_a;
}

}  // namespace reclink
