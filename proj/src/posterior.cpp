#include "reclink/posterior.hpp"

#include <algorithm>
#include <fstream>
#include <unordered_map>

#include "reclink/errors.hpp"

namespace reclink {

LinkagePosterior sample_posterior(const RecordTable& a, const RecordTable& b,
                                  const std::vector<PivSpec>& specs,
                                  const ModelParams& params,
                                  const PosteriorOptions& opt) {
  if (opt.n_sim < 1) throw ConfigError("posterior needs n_sim >= 1");
  LinkagePosterior post;
  post.n_a = a.n;
  post.n_b = b.n;
  post.n_sim = opt.n_sim;

  std::unordered_map<uint64_t, int> counts;
  ChainOptions copt;
  copt.burnin = opt.burnin;
  copt.kept = opt.n_sim;
  copt.seed = opt.seed;
  copt.threads = opt.threads;
  run_chain_visit(a, b, specs, params, copt, [&](const LatentState& st, int) {
    for (int i = 0; i < a.n; ++i) {
      const int j = st.link_of_row[i];
      if (j >= 0) ++counts[static_cast<uint64_t>(i) * b.n + j];
    }
  });

  post.pairs.reserve(counts.size());
  for (const auto& [key, count] : counts) {
    PairProb p;
    p.row_a = static_cast<int32_t>(key / b.n);
    p.row_b = static_cast<int32_t>(key % b.n);
    p.prob = static_cast<double>(count) / opt.n_sim;
    post.pairs.push_back(p);
  }
  std::sort(post.pairs.begin(), post.pairs.end(), [](const PairProb& l, const PairProb& r) {
    return l.row_a != r.row_a ? l.row_a < r.row_a : l.row_b < r.row_b;
  });
  return post;
}

std::vector<PairProb> select_by_threshold(const LinkagePosterior& posterior, double xi) {
  std::vector<PairProb> out;
  for (const auto& p : posterior.pairs) {
    if (p.prob > xi) out.push_back(p);
  }
  return out;
}

double estimated_fdr(const LinkagePosterior& posterior, double xi) {
  double sum = 0.0;
  int count = 0;
  for (const auto& p : posterior.pairs) {
    if (p.prob > xi) {
      sum += p.prob;
      ++count;
    }
  }
  return count == 0 ? 0.0 : 1.0 - sum / count;
}

FdrSelection select_by_fdr(const LinkagePosterior& posterior, double fdr_max) {
  std::vector<double> grid;
  grid.push_back(0.5);
  for (const auto& p : posterior.pairs) {
    if (p.prob >= 0.5) grid.push_back(p.prob);
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  // an empty selection has a vacuous estimate of 0, so feasibility demands a
  // threshold that both meets the bound and still selects something
  FdrSelection best;
  for (double xi : grid) {
    std::vector<PairProb> selected = select_by_threshold(posterior, xi);
    if (selected.empty()) continue;
    const double est = estimated_fdr(posterior, xi);
    if (est < fdr_max) {
      best.xi = xi;
      best.est_fdr = est;
      best.feasible = true;
      best.pairs = std::move(selected);
      return best;
    }
    if (est < best.est_fdr) {
      best.xi = xi;
      best.est_fdr = est;
    }
  }
  return best;  // nothing qualified: pairs empty, best grid point reported
}

void export_histogram(const LinkagePosterior& posterior, const std::string& path) {
  constexpr int kBins = 50;
  int counts[kBins] = {};
  for (const auto& p : posterior.pairs) {
    int bin = static_cast<int>(p.prob * kBins);
    if (bin >= kBins) bin = kBins - 1;  // prob == 1 lands in the last bin
    ++counts[bin];
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path);
  out << "bin_lo,bin_hi,count\n";
  for (int i = 0; i < kBins; ++i) {
    out << static_cast<double>(i) / kBins << ',' << static_cast<double>(i + 1) / kBins
        << ',' << counts[i] << '\n';
  }
  if (!out) throw DataError("short write to " + path);
}

}  // namespace reclink
