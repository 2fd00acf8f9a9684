#include "reclink/stem.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "reclink/errors.hpp"
#include "reclink/ingest.hpp"
#include "reclink/mstep.hpp"
#include "reclink/rng.hpp"

namespace reclink {

namespace {

constexpr uint64_t kStemIterTag = 0x57454d49;  // stream path tag for iteration chains

// mean |t_a - t_b| over the full cross product, via sorting + prefix sums
double mean_cross_gap(const std::vector<double>& ta, const std::vector<double>& tb) {
  std::vector<double> sorted_b = tb;
  std::sort(sorted_b.begin(), sorted_b.end());
  std::vector<double> prefix(sorted_b.size() + 1, 0.0);
  for (size_t j = 0; j < sorted_b.size(); ++j) prefix[j + 1] = prefix[j] + sorted_b[j];
  const double total_b = prefix.back();
  double total = 0.0;
  for (double t : ta) {
    const auto it = std::upper_bound(sorted_b.begin(), sorted_b.end(), t);
    const size_t below = static_cast<size_t>(it - sorted_b.begin());
    // below entries are <= t, the rest are > t
    total += t * below - prefix[below] + (total_b - prefix[below]) -
             t * (sorted_b.size() - below);
  }
  return total / (static_cast<double>(ta.size()) * static_cast<double>(sorted_b.size()));
}

}  // namespace

bool needs_swap(const RecordTable& a, const RecordTable& b) { return a.n > b.n; }

ModelParams initial_params(const RecordTable& a, const RecordTable& b,
                           const std::vector<PivSpec>& specs) {
  const int K = static_cast<int>(specs.size());
  ModelParams theta;
  theta.gamma = 0.05;
  theta.phi_missing_a = missing_rates(a);
  theta.phi_missing_b = missing_rates(b);
  theta.phi_mistake.resize(K);
  theta.eta.resize(K);
  theta.alpha.assign(K, 0.0);
  bool gap_ready = false;
  double mean_gap = 0.0;
  for (int k = 0; k < K; ++k) {
    theta.phi_mistake[k] = std::min(0.05, specs[k].mistake_bound);
    theta.eta[k].assign(specs[k].support, 1.0 / specs[k].support);
    if (specs[k].stable) continue;
    if (!a.has_times() || !b.has_times()) {
      throw ConfigError("unstable PIV '" + specs[k].name +
                        "' requires registration times in both files");
    }
    if (!gap_ready) {
      mean_gap = mean_cross_gap(a.times, b.times);
      gap_ready = true;
    }
    // survival 0.95 at the mean time gap
    const double hazard = -std::log(0.95) / mean_gap;
    theta.alpha[k] = std::clamp(std::log(hazard), -10.0, 5.0);
  }
  return theta;
}

FitResult fit(const RecordTable& a, const RecordTable& b,
              const std::vector<PivSpec>& specs, const StemOptions& opt) {
  if (opt.v0 < 0 || opt.v1 < 1) throw ConfigError("fit needs v0 >= 0 and v1 >= 1");
  if (opt.z0 < 0 || opt.z1 < 1) throw ConfigError("fit needs z0 >= 0 and z1 >= 1");

  FitResult result;
  result.swapped = needs_swap(a, b);
  result.specs = specs;
  const RecordTable& fa = result.swapped ? b : a;
  const RecordTable& fb = result.swapped ? a : b;

  ModelParams theta = initial_params(fa, fb, specs);
  std::vector<int> unstable;
  for (size_t k = 0; k < specs.size(); ++k) {
    if (!specs[k].stable) unstable.push_back(static_cast<int>(k));
  }

  const int V = opt.v0 + opt.v1;
  for (int v = 1; v <= V; ++v) {
    ChainOptions copt;
    copt.burnin = opt.z0;
    copt.kept = opt.z1;
    copt.seed = derive_stream(opt.seed, {kStemIterTag, static_cast<uint64_t>(v)}).next_u64();
    copt.threads = opt.threads;
    SufficientStats stats = run_chain(fa, fb, specs, theta, copt);

    for (size_t k = 0; k < specs.size(); ++k) {
      theta.phi_mistake[k] = update_phi_mistake(stats, static_cast<int>(k),
                                                specs[k].mistake_bound,
                                                theta.phi_mistake[k]);
      theta.eta[k] = update_eta(stats, static_cast<int>(k));
    }
    for (int k : unstable) theta.alpha[k] = update_alpha(stats, k);
    theta.gamma = update_gamma(stats, fa.n);

    result.trace.iterates.push_back(theta);
    double mean_links = 0.0;
    for (int links : stats.links_per_sample) mean_links += links;
    result.trace.mean_links.push_back(mean_links / stats.links_per_sample.size());
  }

  // estimate: coordinate-wise mean of the last v1 iterates
  ModelParams hat = result.trace.iterates[opt.v0];
  hat.gamma = 0.0;
  for (auto& p : hat.phi_mistake) p = 0.0;
  for (auto& e : hat.eta) std::fill(e.begin(), e.end(), 0.0);
  for (auto& al : hat.alpha) al = 0.0;
  for (int v = opt.v0; v < V; ++v) {
    const ModelParams& it = result.trace.iterates[v];
    hat.gamma += it.gamma;
    for (size_t k = 0; k < specs.size(); ++k) {
      hat.phi_mistake[k] += it.phi_mistake[k];
      hat.alpha[k] += it.alpha[k];
      for (size_t x = 0; x < hat.eta[k].size(); ++x) hat.eta[k][x] += it.eta[k][x];
    }
  }
  const double inv = 1.0 / opt.v1;
  hat.gamma *= inv;
  for (size_t k = 0; k < specs.size(); ++k) {
    hat.phi_mistake[k] *= inv;
    hat.alpha[k] *= inv;
    for (auto& x : hat.eta[k]) x *= inv;
  }
  result.theta = std::move(hat);
  return result;
}

void export_trace(const StemTrace& trace, const std::vector<PivSpec>& specs,
                  const std::string& path) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw DataError("cannot write " + tmp);
    out << "iteration,gamma,mean_links";
    for (const auto& s : specs) out << ",phi_mistake_" << s.name;
    for (const auto& s : specs) {
      if (!s.stable) out << ",alpha_" << s.name;
    }
    for (const auto& s : specs) {
      for (int v = 1; v <= s.support; ++v) out << ",eta_" << s.name << "_" << v;
    }
    out << '\n';
    out.precision(10);
    for (size_t v = 0; v < trace.iterates.size(); ++v) {
      const ModelParams& it = trace.iterates[v];
      out << (v + 1) << ',' << it.gamma << ',' << trace.mean_links[v];
      for (size_t k = 0; k < specs.size(); ++k) out << ',' << it.phi_mistake[k];
      for (size_t k = 0; k < specs.size(); ++k) {
        if (!specs[k].stable) out << ',' << it.alpha[k];
      }
      for (size_t k = 0; k < specs.size(); ++k) {
        for (double e : it.eta[k]) out << ',' << e;
      }
      out << '\n';
    }
    if (!out) throw DataError("short write to " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    throw DataError("cannot move " + tmp + " to " + path);
  }
}

}  // namespace reclink
