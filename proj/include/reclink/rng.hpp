#pragma once

#include <cstdint>
#include <initializer_list>

namespace reclink {

// splitmix64 finaliser. Used as the PRNG step function and to derive
// independent streams from (seed, key path) so that results do not depend
// on thread count or iteration order: every sampling site gets its own
// counter-based stream addressed by what it samples, not by when it runs.
inline uint64_t mix64(uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

class RngStream {
 public:
  explicit RngStream(uint64_t state = 0) : state_(state) {}

  uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    return mix64(state_);
  }

  // uniform double in [0, 1)
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  bool bernoulli(double p) { return uniform() < p; }

  // integer in [0, n), n >= 1
  uint64_t below(uint64_t n) {
    return static_cast<uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

 private:
  uint64_t state_;
};

// Derive a stream from a seed and a short key path. Distinct paths give
// statistically independent streams; the same (seed, path) always gives the
// same stream regardless of threading.
inline RngStream derive_stream(uint64_t seed, std::initializer_list<uint64_t> path) {
  uint64_t s = mix64(seed + 0x632be59bd9b4e019ull);
  for (uint64_t p : path) {
    s = mix64(s ^ (p * 0x9e3779b97f4a7c15ull + 0xd1b54a32d192ed03ull));
  }
  return RngStream(s);
}

// Index in [0, n) with probability weights[i] / sum(weights).
// Caller guarantees weights[i] >= 0 and sum > 0. Linear CDF walk: supports
// here are small (a handful to a few hundred values).
int sample_categorical(RngStream& rng, const double* weights, int n);

}  // namespace reclink
