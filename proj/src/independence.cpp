#include "reclink/independence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "reclink/errors.hpp"

namespace reclink {

namespace {

constexpr double kLn2 = 0.6931471805599453;

double log_binomial_half(int n, int l) {
  // log Bin(n, 1/2)(l)
  return std::lgamma(n + 1.0) - std::lgamma(l + 1.0) - std::lgamma(n - l + 1.0) -
         n * kLn2;
}

double log_poisson(double lambda, int x) {
  return x * std::log(lambda) - lambda - std::lgamma(x + 1.0);
}

// log of sum_{l=0}^{target} Bin(n_bin, 1/2)(l) * Pois(lambda)(target - l)
double log_convolution(int n_bin, double lambda, int target) {
  if (target < 0) return -std::numeric_limits<double>::infinity();
  const int l_max = std::min(n_bin, target);
  std::vector<double> terms;
  terms.reserve(l_max + 1);
  for (int l = 0; l <= l_max; ++l) {
    terms.push_back(log_binomial_half(n_bin, l) + log_poisson(lambda, target - l));
  }
  const double m = *std::max_element(terms.begin(), terms.end());
  if (std::isinf(m)) return m;
  double acc = 0.0;
  for (double t : terms) acc += std::exp(t - m);
  return m + std::log(acc);
}

}  // namespace

double capture_ratio(int n_a, int k, int c, int n_b) {
  if (n_a < 1 || k < 1 || k > n_a || c < 0 || c > k - 1 || n_b < 0) {
    throw ConfigError("capture_ratio: need n_a >= 1, 1 <= k <= n_a, 0 <= c < k, n_b >= 0");
  }
  if (n_b < c + 1) return 0.0;
  const double lambda = static_cast<double>(n_b);
  const double log_num = log_convolution(n_a - k, lambda, n_b - (c + 1));
  const double log_den = log_convolution(n_a - (k - 1), lambda, n_b - c);
  if (std::isinf(log_den)) {
    throw DataError("capture_ratio: degenerate denominator at n_b = " +
                    std::to_string(n_b));
  }
  return std::exp(log_num - log_den);
}

}  // namespace reclink
