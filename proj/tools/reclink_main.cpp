// Command-line front end: simulate | link | evaluate | distort | independence.
// Exit codes: 0 success, 2 configuration error, 3 data error, 1 internal error.

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "reclink/config.hpp"
#include "reclink/csv.hpp"
#include "reclink/errors.hpp"
#include "reclink/evaluate.hpp"
#include "reclink/gibbs.hpp"
#include "reclink/independence.hpp"
#include "reclink/ingest.hpp"
#include "reclink/manifest.hpp"
#include "reclink/mstep.hpp"
#include "reclink/posterior.hpp"
#include "reclink/rng.hpp"
#include "reclink/simulate.hpp"
#include "reclink/stem.hpp"
#include "reclink/version.hpp"

namespace fs = std::filesystem;
using namespace reclink;

namespace {

std::vector<int> parse_int_list(const std::string& text, const std::string& what) {
  std::vector<int> out;
  std::string token;
  for (size_t i = 0; i <= text.size(); ++i) {
    if (i < text.size() && text[i] != ',') {
      token += text[i];
      continue;
    }
    try {
      out.push_back(std::stoi(token));
    } catch (const std::exception&) {
      throw ConfigError("cannot parse '" + token + "' in " + what);
    }
    token.clear();
  }
  return out;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
  SimulateOptions opt;
  int unstable_one_based = 5;
  std::string supports_csv = "6,7,8,9,15";
  std::string out_dir;
};

void write_simulated_csv(const std::string& path, const RecordTable& table,
                         const std::vector<PivSpec>& specs) {
  CsvTable csv;
  for (const auto& s : specs) csv.header.push_back(s.name);
  if (table.has_times()) csv.header.push_back("t");
  for (int r = 0; r < table.n; ++r) {
    std::vector<std::string> row;
    for (int k = 0; k < table.k; ++k) {
      const int32_t g = table.at(r, k);
      row.push_back(g == 0 ? "" : std::to_string(g));
    }
    if (table.has_times()) row.push_back(format_double(table.times[r]));
    csv.rows.push_back(std::move(row));
  }
  write_csv(path, csv);
}

void write_truth_csv(const std::string& path, const std::vector<std::pair<int, int>>& links) {
  CsvTable csv;
  csv.header = {"row_a", "row_b"};
  for (const auto& [i, j] : links) {
    csv.rows.push_back({std::to_string(i), std::to_string(j)});
  }
  write_csv(path, csv);
}

int run_simulate(SimulateArgs& args) {
  args.opt.supports = parse_int_list(args.supports_csv, "--supports");
  args.opt.unstable_piv = args.unstable_one_based - 1;  // 0 means all stable
  args.opt.resolve();
  fs::create_directories(args.out_dir);

  RunManifest manifest;
  manifest.command = "simulate";
  manifest.seed = args.opt.seed;
  manifest.options = {
      {"n_a", std::to_string(args.opt.n_a)},
      {"n_b", std::to_string(args.opt.n_b)},
      {"n_links", std::to_string(args.opt.n_links)},
      {"supports", args.supports_csv},
      {"mistake_rate", format_double(args.opt.mistake_rate)},
      {"missing_rate", format_double(args.opt.missing_rate)},
      {"unstable_piv", std::to_string(args.unstable_one_based)},
      {"hazard", format_double(args.opt.hazard)},
  };
  manifest.outputs = {args.out_dir + "/A.csv", args.out_dir + "/B.csv",
                      args.out_dir + "/truth.csv"};
  write_manifest(args.out_dir + "/manifest.json", manifest);

  SimulatedData data = simulate(args.opt);
  write_simulated_csv(args.out_dir + "/A.csv", data.a, data.specs);
  write_simulated_csv(args.out_dir + "/B.csv", data.b, data.specs);
  write_truth_csv(args.out_dir + "/truth.csv", data.links);
  std::printf("wrote %d + %d records with %d true links to %s\n", data.a.n, data.b.n,
              static_cast<int>(data.links.size()), args.out_dir.c_str());
  return 0;
}

// -------------------------------------------------------------------- link

struct LinkArgs {
  std::string config_path;
  std::string out_dir;
  int64_t seed_override = -1;
  int threads_override = 0;
  double threshold_override = -1.0;
  double fdr_override = -1.0;
};

int run_link(LinkArgs& args) {
  LinkConfig cfg = load_link_config(args.config_path);
  if (args.seed_override >= 0) cfg.seed = static_cast<uint64_t>(args.seed_override);
  if (args.threads_override > 0) cfg.threads = args.threads_override;
  if (args.threshold_override >= 0) cfg.threshold = args.threshold_override;
  if (args.fdr_override >= 0) cfg.fdr_max = args.fdr_override;

  CsvTable csv_a = read_csv(cfg.file_a);
  CsvTable csv_b = read_csv(cfg.file_b);
  EncodedPair enc = encode_tables(csv_a, csv_b, cfg.pivs, cfg.time_column,
                                  cfg.missing_tokens);
  for (const auto& [name1, name2] : cfg.merges) {
    int k1 = -1, k2 = -1;
    for (size_t k = 0; k < enc.specs.size(); ++k) {
      if (enc.specs[k].name == name1) k1 = static_cast<int>(k);
      if (enc.specs[k].name == name2) k2 = static_cast<int>(k);
    }
    if (k1 < 0 || k2 < 0) {
      throw ConfigError("merge names '" + name1 + "', '" + name2 +
                        "' do not match configured PIVs");
    }
    MergeResult merged = merge_pivs(enc.a, enc.b, k1, k2, enc.supports, enc.specs);
    enc.a = std::move(merged.a);
    enc.b = std::move(merged.b);
    enc.supports = std::move(merged.supports);
    enc.specs = std::move(merged.specs);
  }

  const auto rates_a = missing_rates(enc.a);
  const auto rates_b = missing_rates(enc.b);
  for (size_t k = 0; k < enc.specs.size(); ++k) {
    if (rates_a[k] >= 1.0 || rates_b[k] >= 1.0) {
      std::fprintf(stderr,
                   "warning: PIV '%s' is entirely missing in one file and carries "
                   "no linkage information\n",
                   enc.specs[k].name.c_str());
    }
  }

  fs::create_directories(args.out_dir);
  RunManifest manifest;
  manifest.command = "link";
  manifest.seed = cfg.seed;
  manifest.threads = cfg.threads;
  manifest.options = {
      {"v0", std::to_string(cfg.v0)},
      {"v1", std::to_string(cfg.v1)},
      {"z0", std::to_string(cfg.z0)},
      {"z1", std::to_string(cfg.z1)},
      {"posterior_burnin", std::to_string(cfg.posterior_burnin)},
      {"n_sim", std::to_string(cfg.n_sim)},
      {"selection", cfg.fdr_max >= 0 ? "fdr_max=" + format_double(cfg.fdr_max)
                                     : "threshold=" + format_double(cfg.threshold)},
  };
  manifest.inputs = {args.config_path, cfg.file_a, cfg.file_b};
  manifest.outputs = {args.out_dir + "/trace.csv", args.out_dir + "/posterior_hist.csv",
                      args.out_dir + "/links.csv"};
  write_manifest(args.out_dir + "/manifest.json", manifest);

  StemOptions sopt;
  sopt.v0 = cfg.v0;
  sopt.v1 = cfg.v1;
  sopt.z0 = cfg.z0;
  sopt.z1 = cfg.z1;
  sopt.seed = cfg.seed;
  sopt.threads = cfg.threads;
  if (needs_swap(enc.a, enc.b)) {
    std::fprintf(stderr, "note: file A is larger than file B; swapping roles for the fit\n");
  }
  FitResult fit_result = fit(enc.a, enc.b, enc.specs, sopt);
  export_trace(fit_result.trace, enc.specs, args.out_dir + "/trace.csv");

  const RecordTable& fa = fit_result.swapped ? enc.b : enc.a;
  const RecordTable& fb = fit_result.swapped ? enc.a : enc.b;
  PosteriorOptions popt;
  popt.burnin = cfg.posterior_burnin;
  popt.n_sim = cfg.n_sim;
  popt.seed = derive_stream(cfg.seed, {0x504f5354}).next_u64();
  popt.threads = cfg.threads;
  LinkagePosterior posterior = sample_posterior(fa, fb, enc.specs, fit_result.theta, popt);
  export_histogram(posterior, args.out_dir + "/posterior_hist.csv");

  std::vector<PairProb> selected;
  double threshold_used = cfg.threshold;
  double est_fdr_value = 0.0;
  if (cfg.fdr_max >= 0) {
    FdrSelection sel = select_by_fdr(posterior, cfg.fdr_max);
    if (!sel.feasible) {
      std::fprintf(stderr,
                   "note: no threshold reaches estimated FDR < %g "
                   "(best grid point xi=%g with estimated FDR %g); no links selected\n",
                   cfg.fdr_max, sel.xi, sel.est_fdr);
    }
    selected = std::move(sel.pairs);
    threshold_used = sel.xi;
    est_fdr_value = sel.est_fdr;
  } else {
    selected = select_by_threshold(posterior, cfg.threshold);
    est_fdr_value = estimated_fdr(posterior, cfg.threshold);
  }

  // report pairs in the user's file orientation
  std::vector<PairProb> out_pairs = selected;
  if (fit_result.swapped) {
    for (auto& p : out_pairs) std::swap(p.row_a, p.row_b);
    std::sort(out_pairs.begin(), out_pairs.end(), [](const PairProb& l, const PairProb& r) {
      return l.row_a != r.row_a ? l.row_a < r.row_a : l.row_b < r.row_b;
    });
  }
  CsvTable links_csv;
  links_csv.header = {"row_a", "row_b", "probability"};
  for (const auto& p : out_pairs) {
    links_csv.rows.push_back({std::to_string(p.row_a), std::to_string(p.row_b),
                              format_double(p.prob)});
  }
  write_csv(args.out_dir + "/links.csv", links_csv);

  std::printf("fit %d x %d records (%s)\n", enc.a.n, enc.b.n,
              fit_result.swapped ? "files swapped so A is the smaller" : "A is the smaller file");
  std::printf("estimated link proportion gamma = %.4f\n", fit_result.theta.gamma);
  for (size_t k = 0; k < enc.specs.size(); ++k) {
    const PivSpec& s = enc.specs[k];
    std::printf("PIV %-12s support %3d  phi_mistake %.4f", s.name.c_str(), s.support,
                fit_result.theta.phi_mistake[k]);
    if (!s.stable) {
      std::printf("  change hazard %.4f", std::exp(fit_result.theta.alpha[k]));
    }
    std::printf("\n");
  }
  std::printf("selected %d links at threshold %.4g (estimated FDR %.4f)\n",
              static_cast<int>(out_pairs.size()), threshold_used, est_fdr_value);
  return 0;
}

// ---------------------------------------------------------------- evaluate

struct EvaluateArgs {
  std::string links_path, truth_path, out_path;
};

std::vector<std::pair<int, int>> read_pairs(const std::string& path) {
  CsvTable csv = read_csv(path);
  const int ia = csv.col_index("row_a"), ib = csv.col_index("row_b");
  if (ia < 0 || ib < 0) throw DataError(path + ": need columns row_a and row_b");
  std::vector<std::pair<int, int>> pairs;
  for (size_t r = 0; r < csv.rows.size(); ++r) {
    try {
      pairs.emplace_back(std::stoi(csv.rows[r][ia]), std::stoi(csv.rows[r][ib]));
    } catch (const std::exception&) {
      throw DataError(path + ": row " + std::to_string(r) + " has non-integer indices");
    }
  }
  return pairs;
}

int run_evaluate(EvaluateArgs& args) {
  const auto estimated = read_pairs(args.links_path);
  const auto truth = read_pairs(args.truth_path);
  const Confusion c = confusion(estimated, truth);
  const Metrics m = metrics(c);
  std::printf("true links %zu, estimated links %zu\n", truth.size(), estimated.size());
  std::printf("TP %" PRId64 "  FP %" PRId64 "  FN %" PRId64 "\n", c.tp, c.fp, c.fn);
  std::printf("fdr %.4f  sensitivity %.4f  f1 %.4f%s\n", m.fdr, m.sensitivity, m.f1,
              m.degenerate ? "  (degenerate: no links on one side)" : "");
  if (!args.out_path.empty()) {
    CsvTable csv;
    csv.header = {"tp", "fp", "fn", "fdr", "sensitivity", "f1"};
    csv.rows.push_back({std::to_string(c.tp), std::to_string(c.fp), std::to_string(c.fn),
                        format_double(m.fdr), format_double(m.sensitivity),
                        format_double(m.f1)});
    write_csv(args.out_path, csv);
  }
  return 0;
}

// ------------------------------------------------------------------ distort

struct DistortArgs {
  std::string in_dir, out_dir;
  double level = 0.0;
  uint64_t seed = 1;
};

int run_distort(DistortArgs& args) {
  const std::string a_path = args.in_dir + "/A.csv";
  const std::string b_path = args.in_dir + "/B.csv";
  CsvTable csv_a = read_csv(a_path);
  CsvTable csv_b = read_csv(b_path);

  // all shared non-time columns are PIVs
  std::vector<PivSpec> specs;
  for (const auto& name : csv_a.header) {
    if (name == "t") continue;
    if (csv_b.col_index(name) < 0) {
      throw DataError("column '" + name + "' is missing from B.csv");
    }
    PivSpec spec;
    spec.name = name;
    specs.push_back(spec);
  }
  const bool has_time = csv_a.col_index("t") >= 0 && csv_b.col_index("t") >= 0;
  EncodedPair enc = encode_tables(csv_a, csv_b, specs, has_time ? "t" : "",
                                  default_missing_tokens());

  fs::create_directories(args.out_dir);
  RunManifest manifest;
  manifest.command = "distort";
  manifest.seed = args.seed;
  manifest.options = {{"level", format_double(args.level)}};
  manifest.inputs = {a_path, b_path};
  manifest.outputs = {args.out_dir + "/A.csv", args.out_dir + "/B.csv"};
  const bool copy_truth = fs::exists(args.in_dir + "/truth.csv");
  if (copy_truth) manifest.outputs.push_back(args.out_dir + "/truth.csv");
  write_manifest(args.out_dir + "/manifest.json", manifest);

  inject_distortion(enc.a, enc.b, enc.specs, args.level, args.seed);

  auto write_back = [&](const std::string& path, const CsvTable& original,
                        const RecordTable& table) {
    CsvTable csv = original;
    for (size_t k = 0; k < enc.specs.size(); ++k) {
      const int col = csv.col_index(enc.specs[k].name);
      for (int r = 0; r < table.n; ++r) {
        const int32_t g = table.at(r, static_cast<int>(k));
        csv.rows[r][col] = g == 0 ? "" : enc.supports[k].labels[g - 1];
      }
    }
    write_csv(path, csv);
  };
  write_back(args.out_dir + "/A.csv", csv_a, enc.a);
  write_back(args.out_dir + "/B.csv", csv_b, enc.b);
  if (copy_truth) {
    fs::copy_file(args.in_dir + "/truth.csv", args.out_dir + "/truth.csv",
                  fs::copy_options::overwrite_existing);
  }
  std::printf("distorted copies written to %s (level %g)\n", args.out_dir.c_str(),
              args.level);
  return 0;
}

// ------------------------------------------------------------- independence

struct IndependenceArgs {
  int n_a = 200;
  int k = 10;
  std::string c_list = "0";
  std::string n_b_list;
  std::string out_path;
};

int run_independence(IndependenceArgs& args) {
  const std::vector<int> cs = parse_int_list(args.c_list, "--c");
  const std::vector<int> nbs = parse_int_list(args.n_b_list, "--n-b");
  if (cs.empty() || nbs.empty()) throw ConfigError("need at least one c and one n_b");

  CsvTable csv;
  csv.header = {"c", "n_b", "ratio"};
  std::printf("%8s", "c \\ n_b");
  for (int nb : nbs) std::printf(" %10d", nb);
  std::printf("\n");
  for (int c : cs) {
    std::printf("%8d", c);
    for (int nb : nbs) {
      const double ratio = capture_ratio(args.n_a, args.k, c, nb);
      std::printf(" %10.4f", ratio);
      csv.rows.push_back({std::to_string(c), std::to_string(nb), format_double(ratio)});
    }
    std::printf("\n");
  }
  if (!args.out_path.empty()) write_csv(args.out_path, csv);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"probabilistic record linkage over categorical identifiers"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  SimulateArgs sim;
  CLI::App* sim_cmd = app.add_subcommand("simulate", "generate a synthetic linked pair of files");
  sim_cmd->add_option("--out", sim.out_dir, "output directory")->required();
  sim_cmd->add_option("--n-a", sim.opt.n_a, "records in file A");
  sim_cmd->add_option("--n-b", sim.opt.n_b, "records in file B");
  sim_cmd->add_option("--n-links", sim.opt.n_links, "records in both files");
  sim_cmd->add_option("--supports", sim.supports_csv, "comma-separated PIV support sizes");
  sim_cmd->add_option("--mistake-rate", sim.opt.mistake_rate, "per-cell mistake probability");
  sim_cmd->add_option("--missing-rate", sim.opt.missing_rate, "per-cell missing probability");
  sim_cmd->add_option("--unstable-piv", sim.unstable_one_based,
                      "1-based index of the drifting PIV (0 = none)");
  sim_cmd->add_option("--hazard", sim.opt.hazard, "true-value change hazard per unit time");
  sim_cmd->add_option("--seed", sim.opt.seed, "random seed");

  LinkArgs link;
  CLI::App* link_cmd = app.add_subcommand("link", "fit the model and select links");
  link_cmd->add_option("--config", link.config_path, "TOML run configuration")->required();
  link_cmd->add_option("--out", link.out_dir, "output directory")->required();
  link_cmd->add_option("--seed", link.seed_override, "override the config seed");
  link_cmd->add_option("--threads", link.threads_override, "override the config threads");
  link_cmd->add_option("--threshold", link.threshold_override,
                       "override the selection threshold");
  link_cmd->add_option("--fdr", link.fdr_override, "select the threshold by FDR target");

  EvaluateArgs eval;
  CLI::App* eval_cmd = app.add_subcommand("evaluate", "confusion counts and metrics");
  eval_cmd->add_option("--links", eval.links_path, "estimated links CSV")->required();
  eval_cmd->add_option("--truth", eval.truth_path, "true links CSV")->required();
  eval_cmd->add_option("--out", eval.out_path, "optional metrics CSV");

  DistortArgs distort;
  CLI::App* distort_cmd = app.add_subcommand("distort", "add registration errors to a pair of files");
  distort_cmd->add_option("--in", distort.in_dir, "directory with A.csv and B.csv")->required();
  distort_cmd->add_option("--out", distort.out_dir, "output directory")->required();
  distort_cmd->add_option("--level", distort.level, "distortion level in [0, 4]")->required();
  distort_cmd->add_option("--seed", distort.seed, "random seed");

  IndependenceArgs indep;
  CLI::App* indep_cmd = app.add_subcommand("independence",
                                           "size-conditioned capture-ratio grid");
  indep_cmd->add_option("--n-a", indep.n_a, "records in file A");
  indep_cmd->add_option("--k", indep.k, "capture step");
  indep_cmd->add_option("--c", indep.c_list, "comma-separated prior capture counts");
  indep_cmd->add_option("--n-b", indep.n_b_list, "comma-separated sizes of file B")->required();
  indep_cmd->add_option("--out", indep.out_path, "optional grid CSV");

  try {
    app.parse(argc, argv);
    if (sim_cmd->parsed()) return run_simulate(sim);
    if (link_cmd->parsed()) return run_link(link);
    if (eval_cmd->parsed()) return run_evaluate(eval);
    if (distort_cmd->parsed()) return run_distort(distort);
    if (indep_cmd->parsed()) return run_independence(indep);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return 2;
  } catch (const DataError& e) {
    std::fprintf(stderr, "data error: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 1;
  }
  return 0;
}
