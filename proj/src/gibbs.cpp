#include "reclink/gibbs.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>

#include "reclink/errors.hpp"

namespace reclink {

namespace {

// stream-path tags so every sampling site draws from its own derived stream
enum StreamTag : uint64_t {
  kStInitA = 1,
  kStInitB = 2,
  kStTruthA = 3,
  kStTruthB = 4,
  kStPair = 5,
  kStDelta = 6,
};

// largest stable-signature space kept as a dense bucket array
constexpr uint64_t kDenseLimit = uint64_t(1) << 20;

void check_shapes(const RecordTable& a, const RecordTable& b,
                  const std::vector<PivSpec>& specs) {
  if (a.k != static_cast<int>(specs.size()) || b.k != static_cast<int>(specs.size())) {
    throw ConfigError("tables and PIV specs disagree on the number of PIVs");
  }
  for (const auto& s : specs) {
    if (!s.stable && (!a.has_times() || !b.has_times())) {
      throw ConfigError("unstable PIV '" + s.name +
                        "' requires registration times in both files");
    }
  }
  if (a.has_times() && static_cast<int>(a.times.size()) != a.n) {
    throw ConfigError("file A times do not match its row count");
  }
  if (b.has_times() && static_cast<int>(b.times.size()) != b.n) {
    throw ConfigError("file B times do not match its row count");
  }
}

}  // namespace

void LatentState::validate(const RecordTable& a, const RecordTable& b,
                           const std::vector<PivSpec>& specs) const {
  const int K = a.k;
  auto fail = [](const std::string& msg) { throw std::logic_error("latent state: " + msg); };
  if (static_cast<int>(h_a.size()) != a.n * K || static_cast<int>(h_b.size()) != b.n * K) {
    fail("true-value arrays do not match the table shapes");
  }
  if (static_cast<int>(link_of_row.size()) != a.n || static_cast<int>(link_of_col.size()) != b.n) {
    fail("link maps do not match the table shapes");
  }
  for (int k = 0; k < K; ++k) {
    for (int i = 0; i < a.n; ++i) {
      int32_t h = h_a[static_cast<size_t>(i) * K + k];
      if (h < 1 || h > specs[k].support) fail("h_a out of range");
    }
    for (int j = 0; j < b.n; ++j) {
      int32_t h = h_b[static_cast<size_t>(j) * K + k];
      if (h < 1 || h > specs[k].support) fail("h_b out of range");
    }
  }
  int links = 0;
  for (int i = 0; i < a.n; ++i) {
    int j = link_of_row[i];
    if (j < 0) continue;
    if (j >= b.n) fail("link column out of range");
    if (link_of_col[j] != i) fail("link maps disagree");
    ++links;
    for (int k = 0; k < K; ++k) {
      if (!specs[k].stable) continue;
      if (h_a[static_cast<size_t>(i) * K + k] != h_b[static_cast<size_t>(j) * K + k]) {
        fail("linked pair disagrees on a stable PIV's true value");
      }
    }
  }
  for (int j = 0; j < b.n; ++j) {
    int i = link_of_col[j];
    if (i < 0) continue;
    if (i >= a.n || link_of_row[i] != j) fail("link maps disagree");
  }
  if (links != n_links) fail("n_links does not match the link map");
}

LatentState init_state(const RecordTable& a, const RecordTable& b,
                       const std::vector<PivSpec>& specs, const ModelParams& params,
                       uint64_t seed) {
  check_shapes(a, b, specs);
  const int K = a.k;
  LatentState st;
  st.h_a.resize(static_cast<size_t>(a.n) * K);
  st.h_b.resize(static_cast<size_t>(b.n) * K);
  st.link_of_row.assign(a.n, -1);
  st.link_of_col.assign(b.n, -1);

  auto fill = [&](const RecordTable& t, std::vector<int32_t>& h, uint64_t tag) {
    for (int r = 0; r < t.n; ++r) {
      RngStream rng = derive_stream(seed, {tag, static_cast<uint64_t>(r)});
      for (int k = 0; k < K; ++k) {
        int32_t g = t.at(r, k);
        h[static_cast<size_t>(r) * K + k] =
            g != 0 ? g
                   : sample_categorical(rng, params.eta[k].data(), specs[k].support) + 1;
      }
    }
  };
  fill(a, st.h_a, kStInitA);
  fill(b, st.h_b, kStInitB);
  return st;
}

void resample_truth_nonlinked(const RecordTable& table, FileTag file, int row, int k,
                              const std::vector<PivSpec>& specs, const ModelParams& params,
                              std::vector<int32_t>& h, RngStream& rng) {
  thread_local std::vector<double> w;
  const int n_k = specs[k].support;
  w.resize(n_k);
  const int g = table.at(row, k);
  for (int v = 1; v <= n_k; ++v) {
    w[v - 1] = obs_given_truth(params, specs, file, k, g, v) * truth_prior(params, k, v);
  }
  h[static_cast<size_t>(row) * table.k + k] =
      sample_categorical(rng, w.data(), n_k) + 1;
}

void resample_truth_linked(const RecordTable& a, const RecordTable& b,
                           int row_a, int row_b, int k,
                           const std::vector<PivSpec>& specs, const ModelParams& params,
                           std::vector<int32_t>& h_a, std::vector<int32_t>& h_b,
                           RngStream& rng) {
  thread_local std::vector<double> w;
  const int n_k = specs[k].support;
  const int g_a = a.at(row_a, k), g_b = b.at(row_b, k);
  int32_t& ha = h_a[static_cast<size_t>(row_a) * a.k + k];
  int32_t& hb = h_b[static_cast<size_t>(row_b) * b.k + k];
  if (specs[k].stable) {
    // support is the diagonal: one shared value
    w.resize(n_k);
    for (int v = 1; v <= n_k; ++v) {
      w[v - 1] = obs_given_truth(params, specs, FileTag::A, k, g_a, v) *
                 obs_given_truth(params, specs, FileTag::B, k, g_b, v) *
                 truth_prior(params, k, v);
    }
    ha = hb = sample_categorical(rng, w.data(), n_k) + 1;
    return;
  }
  const double t = std::abs(b.times[row_b] - a.times[row_a]);
  w.resize(static_cast<size_t>(n_k) * n_k);
  for (int va = 1; va <= n_k; ++va) {
    const double oa = obs_given_truth(params, specs, FileTag::A, k, g_a, va);
    for (int vb = 1; vb <= n_k; ++vb) {
      w[static_cast<size_t>(va - 1) * n_k + (vb - 1)] =
          oa * obs_given_truth(params, specs, FileTag::B, k, g_b, vb) *
          linked_truth_joint(params, specs, k, va, vb, t);
    }
  }
  const int flat = sample_categorical(rng, w.data(), n_k * n_k);
  ha = flat / n_k + 1;
  hb = flat % n_k + 1;
}

double link_probability(const RecordTable& a, const RecordTable& b,
                        const std::vector<PivSpec>& specs, const ModelParams& params,
                        const LatentState& state, int row_a, int row_b) {
  const int K = a.k;
  const bool linked_here = state.link_of_row[row_a] == row_b;
  if (!linked_here &&
      (state.link_of_row[row_a] >= 0 || state.link_of_col[row_b] >= 0)) {
    return 0.0;
  }
  const double gamma = params.gamma;
  if (gamma <= 0.0) return 0.0;
  if (gamma >= 1.0) return 1.0;
  const int m = state.n_links - (linked_here ? 1 : 0);  // links excluding this cell
  double odds = gamma / ((1.0 - gamma) * (b.n - m));
  for (int k = 0; k < K; ++k) {
    const int32_t ha = state.h_a[static_cast<size_t>(row_a) * K + k];
    const int32_t hb = state.h_b[static_cast<size_t>(row_b) * K + k];
    if (specs[k].stable) {
      if (ha != hb) return 0.0;
      odds /= params.eta[k][hb - 1];
    } else {
      const double t = std::abs(b.times[row_b] - a.times[row_a]);
      const double s = survival(params.alpha[k], t);
      const double joint = (ha == hb) ? s : (1.0 - s) / (specs[k].support - 1);
      odds *= joint / params.eta[k][hb - 1];
    }
  }
  if (std::isinf(odds)) return 1.0;
  return odds / (1.0 + odds);
}

void resample_linkage_cell(const RecordTable& a, const RecordTable& b,
                           const std::vector<PivSpec>& specs, const ModelParams& params,
                           LatentState& state, int row_a, int row_b, RngStream& rng) {
  const double p = link_probability(a, b, specs, params, state, row_a, row_b);
  bool link;
  if (p <= 0.0) {
    link = false;
  } else if (p >= 1.0) {
    link = true;
  } else {
    link = rng.uniform() < p;
  }
  const bool was = state.link_of_row[row_a] == row_b;
  if (link == was) return;
  if (link) {
    state.link_of_row[row_a] = row_b;
    state.link_of_col[row_b] = row_a;
    ++state.n_links;
  } else {
    state.link_of_row[row_a] = -1;
    state.link_of_col[row_b] = -1;
    --state.n_links;
  }
}

namespace detail {

PivTables build_piv_tables(const ModelParams& params, const std::vector<PivSpec>& specs) {
  PivTables t;
  const size_t K = specs.size();
  t.eta_cdf.resize(K);
  t.eta_total.resize(K);
  t.mist_diag.resize(K);
  t.mist_off.resize(K);
  for (size_t k = 0; k < K; ++k) {
    const auto& eta = params.eta[k];
    auto& cdf = t.eta_cdf[k];
    cdf.resize(eta.size());
    double acc = 0.0;
    for (size_t v = 0; v < eta.size(); ++v) {
      acc += eta[v];
      cdf[v] = acc;
    }
    t.eta_total[k] = acc;
    t.mist_diag[k] = 1.0 - params.phi_mistake[k];
    t.mist_off[k] =
        specs[k].support > 1 ? params.phi_mistake[k] / (specs[k].support - 1) : 0.0;
  }
  return t;
}

namespace {

// smallest index in [lo, hi] with cdf[idx] > v, clamped to hi; returns the
// 1-based value
int cdf_search(const std::vector<double>& cdf, int lo, int hi, double v) {
  int idx = static_cast<int>(
      std::upper_bound(cdf.begin() + lo, cdf.begin() + hi + 1, v) - cdf.begin());
  if (idx > hi) idx = hi;  // v at the segment's total mass after rounding
  return idx + 1;
}

// Inverse CDF over eta skipping up to two excluded values (ascending order,
// 0 = unused); v lies in [0, eta_total - excluded mass).
int sample_eta_excluding(const PivTables& tables, const ModelParams& params, int k,
                         int ex1, int ex2, double v) {
  const auto& cdf = tables.eta_cdf[k];
  const auto& eta = params.eta[k];
  double shift = 0.0;
  int lo = 0;
  for (int ex : {ex1, ex2}) {
    if (ex == 0) continue;
    // mass strictly below the excluded value, in shifted coordinates
    const double upper = (ex >= 2 ? cdf[ex - 2] : 0.0) - shift;
    if (v < upper) return cdf_search(cdf, lo, ex - 2, v + shift);
    shift += eta[ex - 1];
    lo = ex;  // first index past the excluded value
  }
  return cdf_search(cdf, lo, static_cast<int>(cdf.size()) - 1, v + shift);
}

}  // namespace

int sample_truth_nonlinked_fast(const PivTables& tables, const ModelParams& params,
                                const std::vector<PivSpec>& specs, int k, int g,
                                RngStream& rng) {
  if (g == 0) {
    // conditional is eta itself: the missing kernel is flat in the true value
    const double v = rng.uniform() * tables.eta_total[k];
    return cdf_search(tables.eta_cdf[k], 0, specs[k].support - 1, v);
  }
  // one special weight at g, a scaled copy of eta elsewhere; the missing
  // factor is a common scale and cancels
  const double eg = params.eta[k][g - 1];
  const double wg = tables.mist_diag[k] * eg;
  const double off = tables.mist_off[k];
  const double total = wg + off * (tables.eta_total[k] - eg);
  assert(total > 0.0);
  const double u = rng.uniform() * total;
  if (u < wg || off <= 0.0) return g;
  return sample_eta_excluding(tables, params, k, g, 0, (u - wg) / off);
}

std::pair<int, int> sample_truth_linked_fast(const PivTables& tables,
                                             const ModelParams& params,
                                             const std::vector<PivSpec>& specs, int k,
                                             int g_a, int g_b, double t, RngStream& rng) {
  const int n_k = specs[k].support;
  const auto& eta = params.eta[k];
  const double dg = tables.mist_diag[k], off = tables.mist_off[k];
  // per-file observation factor with the constant (1 - phi_missing) or
  // phi_missing scale dropped; flat (1) when the registered value is missing
  const auto obs_fac = [&](int g, int h) {
    return g == 0 ? 1.0 : (h == g ? dg : off);
  };

  // ascending dedup of the observed values: the only non-flat positions
  int s1 = 0, s2 = 0;
  if (g_a != 0) s1 = g_a;
  if (g_b != 0 && g_b != g_a) {
    if (s1 == 0) s1 = g_b;
    else { s2 = std::max(s1, g_b); s1 = std::min(s1, g_b); }
  }
  const double excl_eta = (s1 ? eta[s1 - 1] : 0.0) + (s2 ? eta[s2 - 1] : 0.0);

  if (specs[k].stable) {
    // shared value l: weight eta[l] * obs_fac_a(l) * obs_fac_b(l)
    const auto wval = [&](int l) { return eta[l - 1] * obs_fac(g_a, l) * obs_fac(g_b, l); };
    const double w1 = s1 ? wval(s1) : 0.0;
    const double w2 = s2 ? wval(s2) : 0.0;
    const double base = (g_a ? off : 1.0) * (g_b ? off : 1.0);
    const double total = w1 + w2 + base * (tables.eta_total[k] - excl_eta);
    assert(total > 0.0);
    const double u = rng.uniform() * total;
    int h;
    if (s1 && u < w1) h = s1;
    else if (s2 && u < w1 + w2) h = s2;
    else if (base <= 0.0) h = s1;  // unreachable from a valid state
    else h = sample_eta_excluding(tables, params, k, s1, s2, (u - w1 - w2) / base);
    return {h, h};
  }

  // unstable: draw h_a from its marginal, then h_b given h_a
  const double s = survival(params.alpha[k], t);
  const double q = (1.0 - s) / (n_k - 1);
  const double b_tot = g_b ? dg + (n_k - 1) * off : static_cast<double>(n_k);
  const auto inner = [&](int l) {
    // sum over h_b of S/q-weighted b-side observation factors
    const double x = obs_fac(g_b, l);
    return s * x + q * (b_tot - x);
  };
  const auto mval = [&](int l) { return eta[l - 1] * obs_fac(g_a, l) * inner(l); };
  const double m1 = s1 ? mval(s1) : 0.0;
  const double m2 = s2 ? mval(s2) : 0.0;
  const double base = (g_a ? off : 1.0) * (s * (g_b ? off : 1.0) +
                                           q * (b_tot - (g_b ? off : 1.0)));
  const double total = m1 + m2 + base * (tables.eta_total[k] - excl_eta);
  assert(total > 0.0);
  const double u = rng.uniform() * total;
  int ha;
  if (s1 && u < m1) ha = s1;
  else if (s2 && u < m1 + m2) ha = s2;
  else if (base <= 0.0) ha = s1 ? s1 : 1;  // unreachable from a valid state
  else ha = sample_eta_excluding(tables, params, k, s1, s2, (u - m1 - m2) / base);

  // h_b: survival mass at h_a, q-scaled observation factor elsewhere
  const double w_stay = s * obs_fac(g_b, ha);
  const bool gb_other = g_b != 0 && g_b != ha;
  const double w_gb = gb_other ? q * dg : 0.0;
  const int others = n_k - 1 - (gb_other ? 1 : 0);
  const double w_rest = q * (g_b ? off : 1.0);
  const double total2 = w_stay + w_gb + w_rest * others;
  assert(total2 > 0.0);
  const double u2 = rng.uniform() * total2;
  int hb;
  if (u2 < w_stay) {
    hb = ha;
  } else if (gb_other && u2 < w_stay + w_gb) {
    hb = g_b;
  } else {
    // uniform over the remaining values; skip the special positions
    assert(others > 0);
    int v = static_cast<int>(rng.below(static_cast<uint64_t>(others))) + 1;
    int e1 = ha, e2 = gb_other ? g_b : 0;
    if (e2 && e2 < e1) std::swap(e1, e2);
    if (v >= e1) ++v;
    if (e2 && v >= e2) ++v;
    hb = v;
  }
  return {ha, hb};
}

}  // namespace detail

namespace {

// One chain run: per-PIV tables, candidate buckets, and the sweep loop.
struct Chain {
  const RecordTable& a;
  const RecordTable& b;
  const std::vector<PivSpec>& specs;
  const ModelParams& params;
  const ChainOptions& opt;
  int K;
  detail::PivTables tables;
  std::vector<int> stable_idx;
  LatentState st;

  // candidate buckets over stable-signature space: dense mixed-radix array
  // when the space is small, sorted order otherwise
  bool dense = true;
  uint64_t radix_product = 1;
  std::vector<int32_t> bucket_head;
  std::vector<uint32_t> bucket_stamp;
  std::vector<int32_t> bucket_next;
  uint32_t epoch = 0;
  std::vector<int32_t> sorted_b;

  Chain(const RecordTable& a_, const RecordTable& b_, const std::vector<PivSpec>& specs_,
        const ModelParams& params_, const ChainOptions& opt_)
      : a(a_), b(b_), specs(specs_), params(params_), opt(opt_), K(a_.k) {
    check_shapes(a, b, specs);
    validate_params(params, specs);
    tables = detail::build_piv_tables(params, specs);
    for (int k = 0; k < K; ++k) {
      if (specs[k].stable) stable_idx.push_back(k);
    }
    for (int k : stable_idx) {
      const uint64_t n_k = specs[k].support;
      if (radix_product > kDenseLimit / n_k) {
        dense = false;
        break;
      }
      radix_product *= n_k;
    }
    if (dense) {
      bucket_head.resize(radix_product);
      bucket_stamp.assign(radix_product, 0);
      bucket_next.resize(b.n);
    } else {
      sorted_b.resize(b.n);
    }
    st = init_state(a, b, specs, params, opt.seed);
  }

  uint64_t signature(const std::vector<int32_t>& h, int row) const {
    uint64_t key = 0;
    for (int k : stable_idx) {
      key = key * specs[k].support + (h[static_cast<size_t>(row) * K + k] - 1);
    }
    return key;
  }

  // three-way comparison of stable true-value tuples
  int compare_stable(int row_b_lhs, int row_a_rhs) const {
    for (int k : stable_idx) {
      const int32_t l = st.h_b[static_cast<size_t>(row_b_lhs) * K + k];
      const int32_t r = st.h_a[static_cast<size_t>(row_a_rhs) * K + k];
      if (l != r) return l < r ? -1 : 1;
    }
    return 0;
  }

  template <class F>
  void run_rows(int n, F&& f) {
    if (opt.threads <= 1 || n < 2) {
      for (int r = 0; r < n; ++r) f(r);
      return;
    }
    const int T = std::min(opt.threads, n);
    const int chunk = (n + T - 1) / T;
    std::vector<std::thread> pool;
    pool.reserve(T);
    for (int t = 0; t < T; ++t) {
      const int lo = t * chunk, hi = std::min(n, lo + chunk);
      if (lo >= hi) break;
      pool.emplace_back([&f, lo, hi] {
        for (int r = lo; r < hi; ++r) f(r);
      });
    }
    for (auto& th : pool) th.join();
  }

  void build_buckets() {
    if (dense) {
      ++epoch;
      // insert in descending row order so each bucket lists rows ascending
      for (int j = b.n - 1; j >= 0; --j) {
        const uint64_t key = signature(st.h_b, j);
        if (bucket_stamp[key] != epoch) {
          bucket_stamp[key] = epoch;
          bucket_head[key] = -1;
        }
        bucket_next[j] = bucket_head[key];
        bucket_head[key] = j;
      }
      return;
    }
    for (int j = 0; j < b.n; ++j) sorted_b[j] = j;
    std::sort(sorted_b.begin(), sorted_b.end(), [&](int lhs, int rhs) {
      for (int k : stable_idx) {
        const int32_t l = st.h_b[static_cast<size_t>(lhs) * K + k];
        const int32_t r = st.h_b[static_cast<size_t>(rhs) * K + k];
        if (l != r) return l < r;
      }
      return lhs < rhs;
    });
  }

  void sweep(int z) {
    const uint64_t seed = opt.seed;
    const uint64_t uz = static_cast<uint64_t>(z);

    // truths of non-linked records; one derived stream per record makes the
    // result independent of row order and thread count
    run_rows(a.n, [&](int i) {
      if (st.link_of_row[i] >= 0) return;
      RngStream rng = derive_stream(seed, {kStTruthA, uz, static_cast<uint64_t>(i)});
      for (int k = 0; k < K; ++k) {
        st.h_a[static_cast<size_t>(i) * K + k] = detail::sample_truth_nonlinked_fast(
            tables, params, specs, k, a.at(i, k), rng);
      }
    });
    run_rows(b.n, [&](int j) {
      if (st.link_of_col[j] >= 0) return;
      RngStream rng = derive_stream(seed, {kStTruthB, uz, static_cast<uint64_t>(j)});
      for (int k = 0; k < K; ++k) {
        st.h_b[static_cast<size_t>(j) * K + k] = detail::sample_truth_nonlinked_fast(
            tables, params, specs, k, b.at(j, k), rng);
      }
    });

    // truths of linked pairs
    run_rows(a.n, [&](int i) {
      const int j = st.link_of_row[i];
      if (j < 0) return;
      RngStream rng = derive_stream(seed, {kStPair, uz, static_cast<uint64_t>(i)});
      const double t =
          a.has_times() && b.has_times() ? std::abs(b.times[j] - a.times[i]) : 0.0;
      for (int k = 0; k < K; ++k) {
        const auto [ha, hb] = detail::sample_truth_linked_fast(
            tables, params, specs, k, a.at(i, k), b.at(j, k), t, rng);
        st.h_a[static_cast<size_t>(i) * K + k] = ha;
        st.h_b[static_cast<size_t>(j) * K + k] = hb;
      }
    });

    // sequential scan of the candidate linkage cells in row-major order
    build_buckets();
    RngStream dstream = derive_stream(seed, {kStDelta, uz});
    if (dense) {
      for (int i = 0; i < a.n; ++i) {
        const uint64_t key = signature(st.h_a, i);
        if (bucket_stamp[key] != epoch) continue;
        for (int j = bucket_head[key]; j >= 0; j = bucket_next[j]) {
          resample_linkage_cell(a, b, specs, params, st, i, j, dstream);
        }
      }
    } else {
      for (int i = 0; i < a.n; ++i) {
        auto lo = std::partition_point(sorted_b.begin(), sorted_b.end(),
                                       [&](int j) { return compare_stable(j, i) < 0; });
        for (auto it = lo; it != sorted_b.end() && compare_stable(*it, i) == 0; ++it) {
          resample_linkage_cell(a, b, specs, params, st, i, *it, dstream);
        }
      }
    }
  }
};

}  // namespace

void run_chain_visit(const RecordTable& a, const RecordTable& b,
                     const std::vector<PivSpec>& specs, const ModelParams& params,
                     const ChainOptions& opt,
                     const std::function<void(const LatentState&, int)>& on_kept) {
  Chain chain(a, b, specs, params, opt);
  const int total = opt.burnin + opt.kept;
  for (int z = 1; z <= total; ++z) {
    chain.sweep(z);
#ifndef NDEBUG
    chain.st.validate(a, b, specs);
#endif
    if (z > opt.burnin) on_kept(chain.st, z - opt.burnin);
  }
  chain.st.validate(a, b, specs);
}

SufficientStats run_chain(const RecordTable& a, const RecordTable& b,
                          const std::vector<PivSpec>& specs, const ModelParams& params,
                          const ChainOptions& opt) {
  const int K = a.k;
  SufficientStats stats;
  stats.nonmissing.assign(K, 0);
  stats.disagreements.resize(K);
  stats.truth_counts.resize(K);
  stats.survival_obs.resize(K);
  for (int k = 0; k < K; ++k) {
    stats.truth_counts[k].assign(specs[k].support, 0);
    for (int i = 0; i < a.n; ++i) {
      if (a.at(i, k) != 0) ++stats.nonmissing[k];
    }
    for (int j = 0; j < b.n; ++j) {
      if (b.at(j, k) != 0) ++stats.nonmissing[k];
    }
  }

  run_chain_visit(a, b, specs, params, opt, [&](const LatentState& st, int) {
    ++stats.n_samples;
    for (int k = 0; k < K; ++k) {
      int64_t disagr = 0;
      for (int i = 0; i < a.n; ++i) {
        const int32_t g = a.at(i, k);
        const int32_t h = st.h_a[static_cast<size_t>(i) * K + k];
        if (g != 0 && g != h) ++disagr;
        ++stats.truth_counts[k][h - 1];  // every A record: non-linked rows and pairs
      }
      for (int j = 0; j < b.n; ++j) {
        const int32_t g = b.at(j, k);
        const int32_t h = st.h_b[static_cast<size_t>(j) * K + k];
        if (g != 0 && g != h) ++disagr;
        if (st.link_of_col[j] < 0) ++stats.truth_counts[k][h - 1];
      }
      stats.disagreements[k].push_back(disagr);
      if (!specs[k].stable) {
        for (int i = 0; i < a.n; ++i) {
          const int j = st.link_of_row[i];
          if (j < 0) continue;
          stats.survival_obs[k].push_back(
              {std::abs(b.times[j] - a.times[i]),
               st.h_a[static_cast<size_t>(i) * K + k] ==
                   st.h_b[static_cast<size_t>(j) * K + k]});
        }
      }
    }
    stats.links_per_sample.push_back(st.n_links);
  });
  return stats;
}

}  // namespace reclink
