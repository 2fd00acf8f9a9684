#include "reclink/rng.hpp"

#include <cassert>

namespace reclink {

int sample_categorical(RngStream& rng, const double* weights, int n) {
  double total = 0.0;
  for (int i = 0; i < n; ++i) total += weights[i];
  assert(total > 0.0);
  const double u = rng.uniform() * total;
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    acc += weights[i];
    if (u < acc) return i;
  }
  // u == total can be reached by rounding; return the last positive weight.
  for (int i = n - 1; i >= 0; --i) {
    if (weights[i] > 0.0) return i;
  }
  return n - 1;
}

}  // namespace reclink
