#include "reclink/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "reclink/errors.hpp"
#include "reclink/rng.hpp"

namespace reclink {

namespace {

enum SimStream : uint64_t {
  kSimEntity = 1,   // per-entity true values
  kSimMigrate = 2,  // per-link unstable drift
  kSimTimeA = 3,
  kSimTimeB = 4,
  kSimRegA = 5,  // per-record registration errors
  kSimRegB = 6,
  kSimPerm = 7,  // row shuffle of file B
  kSimDistortA = 8,
  kSimDistortB = 9,
};

int uniform_other(RngStream& rng, int current, int n_k) {
  int v = static_cast<int>(rng.below(static_cast<uint64_t>(n_k - 1))) + 1;
  if (v >= current) ++v;
  return v;
}

}  // namespace

void SimulateOptions::resolve() {
  const int K = static_cast<int>(supports.size());
  if (K == 0) throw ConfigError("simulate: no PIVs configured");
  if (n_a < 1 || n_b < 1) throw ConfigError("simulate: file sizes must be positive");
  if (n_links < 0 || n_links > std::min(n_a, n_b)) {
    throw ConfigError("simulate: n_links must lie in [0, min(n_a, n_b)]");
  }
  for (int s : supports) {
    if (s < 1) throw ConfigError("simulate: every support needs at least one value");
  }
  if (unstable_piv >= K) throw ConfigError("simulate: unstable PIV index out of range");
  if (unstable_piv >= 0 && supports[unstable_piv] < 2) {
    throw ConfigError("simulate: the unstable PIV needs a support of at least 2");
  }
  if (mistake_rates.empty()) {
    mistake_rates.assign(K, mistake_rate);
    if (unstable_piv >= 0) mistake_rates[unstable_piv] = 0.0;
  }
  if (static_cast<int>(mistake_rates.size()) != K) {
    throw ConfigError("simulate: mistake_rates does not match the PIV count");
  }
  for (double m : mistake_rates) {
    if (m < 0.0 || m > 1.0) throw ConfigError("simulate: mistake rate outside [0, 1]");
  }
  if (missing_rate < 0.0 || missing_rate > 1.0) {
    throw ConfigError("simulate: missing rate outside [0, 1]");
  }
  if (t_a_max < t_a_min || t_b_max < t_b_min) {
    throw ConfigError("simulate: time range is inverted");
  }
  if (hazard < 0.0) throw ConfigError("simulate: hazard must be non-negative");
}

std::vector<double> latent_pmf(int n_k, double slope) {
  std::vector<double> w(n_k);
  double total = 0.0;
  for (int h = 1; h <= n_k; ++h) {
    w[h - 1] = std::exp(slope * h);
    total += w[h - 1];
  }
  for (double& x : w) x /= total;
  return w;
}

SimulatedData simulate(const SimulateOptions& options) {
  SimulateOptions opt = options;
  opt.resolve();
  const int K = static_cast<int>(opt.supports.size());
  const uint64_t seed = opt.seed;

  SimulatedData out;
  for (int k = 0; k < K; ++k) {
    PivSpec spec;
    spec.name = "V" + std::to_string(k + 1);
    spec.support = opt.supports[k];
    spec.stable = k != opt.unstable_piv;
    spec.mistake_bound = spec.stable ? 0.10 : 0.0;
    out.specs.push_back(spec);
  }

  std::vector<std::vector<double>> pmf(K);
  for (int k = 0; k < K; ++k) pmf[k] = latent_pmf(opt.supports[k], opt.latent_slope);

  // entities: the first n_links are in both files, then A-only, then B-only
  const int n_entities = opt.n_a + opt.n_b - opt.n_links;
  std::vector<int32_t> truth(static_cast<size_t>(n_entities) * K);
  for (int e = 0; e < n_entities; ++e) {
    RngStream rng = derive_stream(seed, {kSimEntity, static_cast<uint64_t>(e)});
    for (int k = 0; k < K; ++k) {
      truth[static_cast<size_t>(e) * K + k] =
          sample_categorical(rng, pmf[k].data(), opt.supports[k]) + 1;
    }
  }

  out.a.n = opt.n_a;
  out.b.n = opt.n_b;
  out.a.k = out.b.k = K;
  out.a.times.resize(opt.n_a);
  out.b.times.resize(opt.n_b);
  for (int i = 0; i < opt.n_a; ++i) {
    out.a.times[i] =
        derive_stream(seed, {kSimTimeA, static_cast<uint64_t>(i)}).uniform(opt.t_a_min, opt.t_a_max);
  }
  for (int j = 0; j < opt.n_b; ++j) {
    out.b.times[j] =
        derive_stream(seed, {kSimTimeB, static_cast<uint64_t>(j)}).uniform(opt.t_b_min, opt.t_b_max);
  }

  // B row of each entity: identity permuted so true pairs are not aligned by index
  std::vector<int32_t> b_row_of(opt.n_b);
  for (int r = 0; r < opt.n_b; ++r) b_row_of[r] = r;
  {
    RngStream rng = derive_stream(seed, {kSimPerm});
    for (int r = opt.n_b - 1; r > 0; --r) {
      const int other = static_cast<int>(rng.below(static_cast<uint64_t>(r + 1)));
      std::swap(b_row_of[r], b_row_of[other]);
    }
  }

  // true values per row; linked entities may drift on the unstable PIV
  std::vector<int32_t> true_a(static_cast<size_t>(opt.n_a) * K);
  std::vector<int32_t> true_b(static_cast<size_t>(opt.n_b) * K);
  for (int i = 0; i < opt.n_a; ++i) {
    for (int k = 0; k < K; ++k) true_a[static_cast<size_t>(i) * K + k] = truth[static_cast<size_t>(i) * K + k];
  }
  for (int idx = 0; idx < opt.n_b; ++idx) {
    const int e = idx < opt.n_links ? idx : opt.n_a + (idx - opt.n_links);
    const int j = b_row_of[idx];
    for (int k = 0; k < K; ++k) true_b[static_cast<size_t>(j) * K + k] = truth[static_cast<size_t>(e) * K + k];
    if (idx < opt.n_links) {
      out.links.emplace_back(idx, j);  // A row of entity e < n_links is e itself
      if (opt.unstable_piv >= 0) {
        const int k = opt.unstable_piv;
        RngStream rng = derive_stream(seed, {kSimMigrate, static_cast<uint64_t>(idx)});
        const double gap = std::abs(out.b.times[j] - out.a.times[idx]);
        if (!rng.bernoulli(std::exp(-opt.hazard * gap))) {
          true_b[static_cast<size_t>(j) * K + k] =
              uniform_other(rng, true_b[static_cast<size_t>(j) * K + k], opt.supports[k]);
        }
      }
    }
  }
  std::sort(out.links.begin(), out.links.end());

  // registration: mistakes first, then missing
  auto registered = [&](const std::vector<int32_t>& truth_rows, int n, uint64_t tag) {
    std::vector<int32_t> codes(static_cast<size_t>(n) * K);
    for (int r = 0; r < n; ++r) {
      RngStream rng = derive_stream(seed, {tag, static_cast<uint64_t>(r)});
      for (int k = 0; k < K; ++k) {
        int32_t g = truth_rows[static_cast<size_t>(r) * K + k];
        if (opt.mistake_rates[k] > 0.0 && rng.bernoulli(opt.mistake_rates[k])) {
          g = uniform_other(rng, g, opt.supports[k]);
        }
        if (rng.bernoulli(opt.missing_rate)) g = 0;
        codes[static_cast<size_t>(r) * K + k] = g;
      }
    }
    return codes;
  };
  out.a.codes = registered(true_a, opt.n_a, kSimRegA);
  out.b.codes = registered(true_b, opt.n_b, kSimRegB);
  return out;
}

void inject_distortion(RecordTable& a, RecordTable& b, const std::vector<PivSpec>& specs,
                       double level, uint64_t seed) {
  if (level < 0.0 || level > 4.0) {
    throw ConfigError("distortion level must lie in [0, 4]");
  }
  const double p = level / 4.0;
  auto distort = [&](RecordTable& t, uint64_t tag) {
    for (int r = 0; r < t.n; ++r) {
      RngStream rng = derive_stream(seed, {tag, static_cast<uint64_t>(r)});
      for (int k = 0; k < t.k; ++k) {
        // both draws consumed unconditionally so data does not shift streams
        const bool substitute = rng.bernoulli(p);
        const bool blank = rng.bernoulli(p);
        int32_t& g = t.at(r, k);
        if (g == 0) continue;
        if (substitute && specs[k].support > 1) g = uniform_other(rng, g, specs[k].support);
        if (blank) g = 0;
      }
    }
  };
  distort(a, kSimDistortA);
  distort(b, kSimDistortB);
}

namespace {

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const size_t mid = v.size() / 2;
  return v.size() % 2 ? v[mid] : (v[mid - 1] + v[mid]) / 2.0;
}

}  // namespace

double distortion_level(const RecordTable& a, const RecordTable& b,
                        const std::vector<std::pair<int, int>>& links) {
  if (links.empty() || a.k == 0) return 0.0;
  std::vector<double> disagree(a.k, 0.0), missing(a.k, 0.0);
  for (const auto& [i, j] : links) {
    for (int k = 0; k < a.k; ++k) {
      const int32_t ga = a.at(i, k), gb = b.at(j, k);
      if (ga == 0 || gb == 0) missing[k] += 1.0;
      else if (ga != gb) disagree[k] += 1.0;
    }
  }
  for (int k = 0; k < a.k; ++k) {
    disagree[k] /= links.size();
    missing[k] /= links.size();
  }
  return median(disagree) + median(missing);
}

}  // namespace reclink
