#include "support/naive_ratio.hpp"

#include <cmath>
#include <vector>

namespace testsupport {
namespace {

// pmf of Binomial(n, 1/2) over 0..n, built by the ratio recurrence
std::vector<double> binomial_half_pmf(int n) {
  std::vector<double> pmf(n + 1);
  pmf[0] = std::pow(0.5, n);
  for (int l = 0; l < n; ++l) pmf[l + 1] = pmf[l] * (n - l) / (l + 1);
  return pmf;
}

// pmf of Poisson(lambda) over 0..top, built by the ratio recurrence
std::vector<double> poisson_pmf(double lambda, int top) {
  std::vector<double> pmf(top + 1);
  pmf[0] = std::exp(-lambda);
  for (int j = 0; j < top; ++j) pmf[j + 1] = pmf[j] * lambda / (j + 1);
  return pmf;
}

double convolution_at(const std::vector<double>& bin, const std::vector<double>& pois,
                      int target) {
  if (target < 0) return 0.0;
  double sum = 0.0;
  for (int l = 0; l <= target && l < static_cast<int>(bin.size()); ++l) {
    sum += bin[l] * pois[target - l];
  }
  return sum;
}

}  // namespace

double naive_capture_ratio(int n_a, int k, int c, int n_b) {
  if (n_b < c + 1) return 0.0;
  const auto pois = poisson_pmf(n_b, n_b);
  const auto bin_num = binomial_half_pmf(n_a - k);
  const auto bin_den = binomial_half_pmf(n_a - (k - 1));
  const double num = convolution_at(bin_num, pois, n_b - (c + 1));
  const double den = convolution_at(bin_den, pois, n_b - c);
  return num / den;
}

}  // namespace testsupport
