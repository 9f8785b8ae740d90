#include "cli/run.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cmjtree/experiments.hpp"
#include "cmjtree/growth.hpp"
#include "cmjtree/malthus.hpp"
#include "cmjtree/random.hpp"
#include "cmjtree/tree_io.hpp"
#include "cmjtree/version.hpp"

namespace cmjtree::cli {

using nlohmann::json;

namespace {

// Rows of comma-separated fields under a fixed header.
class Csv {
 public:
  explicit Csv(std::initializer_list<const char*> header) {
    bool first = true;
    for (const char* h : header) {
      out_ << (first ? "" : ",") << h;
      first = false;
    }
    out_ << '\n';
  }

  template <typename... Fields>
  void row(const Fields&... fields) {
    bool first = true;
    ((out_ << (first ? "" : ",") << render(fields), first = false), ...);
    out_ << '\n';
  }

  std::string str() const { return out_.str(); }

 private:
  static std::string render(double v) { return format_double(v); }
  static std::string render(const std::string& s) { return s; }
  static std::string render(const char* s) { return s; }
  template <typename T>
  static std::string render(const T& v) {
    return std::to_string(v);
  }

  std::ostringstream out_;
};

struct Output {
  std::vector<std::pair<std::string, std::string>> csv_files;  // name, content
  json results = json::object();
};

std::uint64_t label(Vertex v) { return static_cast<std::uint64_t>(v) + 1; }

const AttractionSpec& spec_of(const ExperimentConfig& c) { return *c.spec; }

unsigned threads_of(const ExperimentConfig& c) { return static_cast<unsigned>(c.threads); }

std::vector<std::size_t> sizes(const std::vector<std::uint64_t>& v) { return {v.begin(), v.end()}; }

Output run_grow(const ExperimentConfig& c) {
  Output out;
  Rng rng = derive_stream(c.seed, 0);
  GrowingTree tree;
  if (*c.model == "discrete") {
    tree = grow_discrete(spec_of(c), *c.n, rng);
  } else {
    CmjOptions options;
    options.population_cap = c.pop_cap;
    StopRule stop;
    if (c.n) stop.n_max = *c.n;
    if (c.t_end) stop.t_end = *c.t_end;
    CmjResult result = grow_cmj(spec_of(c), stop, rng, options);
    out.results["final_time"] = result.final_time;
    tree = std::move(result.tree);
  }
  out.results["n"] = tree.size();
  out.results["selected_centroid"] = label(centroids(tree).selected);
  out.csv_files.emplace_back("grow.csv", tree_to_string(tree));
  return out;
}

Output run_analyze(const ExperimentConfig& c) {
  Output out;
  const GrowingTree tree = read_tree_file(*c.input);
  const std::vector<std::uint32_t> psi = psi_all(tree);
  const CentroidReport report = centroids_from_psi(psi);
  const std::vector<Vertex> order = h_k_psi(tree, tree.size());
  std::vector<std::size_t> rank(tree.size());
  for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = i;

  Csv csv({"v", "parent", "out_degree", "total_degree", "psi", "psi_rank", "is_centroid"});
  for (Vertex v = 0; v < tree.size(); ++v) {
    const bool is_centroid = std::find(report.centroid_ids.begin(), report.centroid_ids.end(), v) !=
                             report.centroid_ids.end();
    const std::uint64_t parent = tree.parent(v) == kNoParent ? 0 : label(tree.parent(v));
    csv.row(label(v), parent, tree.out_degree(v), tree.total_degree(v), psi[v], rank[v] + 1, is_centroid ? 1 : 0);
  }
  out.csv_files.emplace_back("analyze.csv", csv.str());

  json ids = json::array();
  for (Vertex v : report.centroid_ids) ids.push_back(label(v));
  out.results["n"] = tree.size();
  out.results["centroids"] = ids;
  out.results["selected_centroid"] = label(report.selected);
  out.results["centroid_psi"] = report.psi_values.front();
  json top = json::array();
  for (std::size_t i = 0; i < std::min<std::size_t>(*c.k_top, tree.size()); ++i) top.push_back(label(order[i]));
  out.results["top_k"] = top;
  out.results["root_rank"] = rank[0] + 1;

  if (c.k) {
    if (*c.k > tree.size()) throw ConfigError("k must be at most the tree size");
    Csv forest({"j", "size"});
    const auto parts = forest_sizes(tree, *c.k);
    for (std::size_t j = 0; j < parts.size(); ++j) forest.row(j + 1, parts[j]);
    out.csv_files.emplace_back("analyze_forest.csv", forest.str());
  }
  return out;
}

Output run_malthus(const ExperimentConfig& c, std::ostream& console) {
  Output out;
  const MalthusEstimate est = solve_malthusian(spec_of(c), *c.tol);
  Csv csv({"spec", "theta", "residual", "lo", "hi", "iterations", "truncation_bound"});
  csv.row(spec_of(c).describe(), est.theta, est.residual, est.lo, est.hi, est.iterations, est.truncation_bound);
  out.csv_files.emplace_back("malthus.csv", csv.str());
  out.results = {{"theta", est.theta},   {"residual", est.residual}, {"iterations", est.iterations},
                 {"lo", est.lo},         {"hi", est.hi},             {"truncation_bound", est.truncation_bound}};
  console << out.results.dump() << '\n';
  return out;
}

Output run_trajectory(const ExperimentConfig& c) {
  Output out;
  TrajectoryOptions options;
  options.population_cap = c.pop_cap;
  options.theta = c.theta;
  if (!options.theta) {
    try {
      options.theta = solve_malthusian(spec_of(c)).theta;
    } catch (const std::exception&) {
      // No Malthusian parameter available: leave normalized_Z empty.
    }
  }
  Csv csv({"trial", "t", "Z", "normalized_Z"});
  json slopes = json::array();
  for (std::uint64_t trial = 0; trial < c.trials; ++trial) {
    Rng rng = derive_stream(c.seed, trial);
    const CmjTrajectory traj = population_trajectory(spec_of(c), *c.t_end, *c.dt, rng, options);
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
      csv.row(trial, traj.times[i], traj.population[i],
              traj.normalized.empty() ? std::string() : format_double(traj.normalized[i]));
    }
    if (traj.times.size() >= 4) slopes.push_back(log_growth_slope(traj));
  }
  out.csv_files.emplace_back("trajectory.csv", csv.str());
  if (options.theta) out.results["theta"] = *options.theta;
  out.results["log_growth_slopes"] = slopes;
  return out;
}

Output run_coverage(const ExperimentConfig& c) {
  Output out;
  CoverageOptions options;
  options.allow_non_sublinear = c.allow_non_sublinear.value_or(false);
  options.threads = threads_of(c);
  const auto k_list = sizes(*c.k_list);
  const CoverageTable table = root_coverage(spec_of(c), *c.n, k_list, c.trials, c.seed, options);
  Csv csv({"alpha", "n", "K", "trials", "successes", "coverage", "stderr"});
  for (const CoverageRow& r : table.rows) {
    csv.row(r.alpha, r.n, r.k, r.trials, r.successes, r.coverage, r.standard_error);
  }
  out.csv_files.emplace_back("coverage.csv", csv.str());
  out.results["smallest_k_coverage_0.95"] = smallest_k_for_coverage(table.root_ranks, 0.95);
  return out;
}

Output run_track(const ExperimentConfig& c) {
  Output out;
  TrackOptions options;
  options.stride = c.stride;
  const auto checkpoints = sizes(*c.checkpoints);
  const auto logs = track_centroid_trials(spec_of(c), *c.n_max, checkpoints, *c.k_top, c.trials, c.seed, options,
                                          threads_of(c));
  Csv events({"trial", "n", "old_centroid", "new_centroid"});
  Csv marks({"trial", "n", "rank", "vertex", "psi"});
  json per_trial = json::array();
  for (std::size_t t = 0; t < logs.size(); ++t) {
    const CentroidChangeLog& log = logs[t];
    for (const CentroidChange& e : log.events) events.row(t, e.n, label(e.old_centroid), label(e.new_centroid));
    for (const CentroidCheckpoint& cp : log.checkpoints) {
      for (std::size_t i = 0; i < cp.top.size(); ++i) marks.row(t, cp.n, i + 1, label(cp.top[i]), cp.psi[i]);
    }
    per_trial.push_back({{"trial", t},
                         {"final_n", log.final_n},
                         {"final_selected", label(log.final_selected)},
                         {"change_events", log.events.size()},
                         {"balance_violations", log.balance_violations},
                         {"separation_violations", log.separation_violations}});
  }
  out.csv_files.emplace_back("track.csv", events.str());
  out.csv_files.emplace_back("track_checkpoints.csv", marks.str());
  out.results["trials"] = per_trial;
  out.results["note"] = "finite-horizon change log; a terminal centroid cannot be identified at finite n";
  return out;
}

Output run_maxdeg(const ExperimentConfig& c) {
  Output out;
  const auto n_list = sizes(*c.n_list);
  Csv csv({"n", "trials", "median_max_degree", "scale", "ratio"});
  for (const MaxDegreeRow& r : max_degree_scan(*c.alpha, n_list, c.trials, c.seed, threads_of(c))) {
    csv.row(r.n, r.trials, r.median_max_degree, r.scale, r.ratio);
  }
  out.csv_files.emplace_back("maxdeg.csv", csv.str());
  return out;
}

std::string with_size(const std::string& shape, std::uint64_t r) {
  if (shape == "single") return shape;
  if (shape == "line" || shape == "star") return shape + ":" + std::to_string(r);
  throw ConfigError("with r_list, shapes must be 'line', 'star' or 'single' without a size");
}

Output run_race(const ExperimentConfig& c) {
  Output out;
  Csv csv({"shape1", "shape2", "t_end", "trials", "first_wins", "ties", "win_probability", "stderr", "mean_pop1",
           "mean_pop2"});
  struct Job {
    ShapeDescriptor first, second;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  auto parse = [](const std::string& s) {
    try {
      return ShapeDescriptor::Parse(s);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  };
  if (c.r_list) {
    for (std::uint64_t r : *c.r_list) {
      jobs.push_back({parse(with_size(*c.shape1, r)), parse(with_size(*c.shape2, r)), splitmix64(c.seed + r)});
    }
  } else {
    jobs.push_back({parse(*c.shape1), parse(*c.shape2), c.seed});
  }
  for (const Job& job : jobs) {
    double t_end = 0.0;
    if (c.t_end) {
      t_end = *c.t_end;
    } else {
      const std::size_t smaller = std::min(job.first.build().size(), job.second.build().size());
      t_end = default_race_horizon(spec_of(c), smaller);
    }
    const RaceResult r = race(job.first, job.second, spec_of(c), t_end, c.trials, job.seed, threads_of(c), c.pop_cap);
    csv.row(job.first.to_string(), job.second.to_string(), r.t_end, r.trials, r.first_wins, r.ties,
            r.win_probability, r.standard_error, r.mean_population_first, r.mean_population_second);
  }
  out.csv_files.emplace_back("race.csv", csv.str());
  return out;
}

Output run_dominance(const ExperimentConfig& c) {
  Output out;
  const double t_end =
      c.t_end ? *c.t_end : std::log(1e3) / solve_malthusian(AttractionSpec::AlphaSublinear(*c.alpha)).theta;
  const DominanceReport rep = dominance_check(static_cast<std::uint32_t>(*c.d), *c.alpha, t_end, c.trials, c.seed,
                                              threads_of(c), c.pop_cap);
  Csv csv({"d", "alpha", "t_end", "trials", "mean_shifted", "se_shifted", "mean_sum", "se_sum", "level",
           "quantile_shifted", "quantile_sum", "cdf_shifted", "cdf_sum"});
  for (std::size_t i = 0; i < rep.levels.size(); ++i) {
    csv.row(rep.d, rep.alpha, rep.t_end, rep.trials, rep.mean_shifted, rep.se_shifted, rep.mean_sum, rep.se_sum,
            rep.levels[i], rep.quantiles_shifted[i], rep.quantiles_sum[i], rep.cdf_shifted[i], rep.cdf_sum[i]);
  }
  out.csv_files.emplace_back("dominance.csv", csv.str());
  return out;
}

Output run_hoeffding(const ExperimentConfig& c) {
  Output out;
  const auto n_list = sizes(*c.n_list);
  Csv csv({"n", "trials", "hits", "empirical", "stderr", "analytic", "bound"});
  for (const HoeffdingRow& r : hoeffding_probe(n_list, c.trials, c.seed)) {
    csv.row(r.n, r.trials, r.hits, r.empirical, r.standard_error, r.analytic, r.bound);
  }
  out.csv_files.emplace_back("hoeffding.csv", csv.str());
  return out;
}

Output dispatch(const ExperimentConfig& c, std::ostream& console) {
  if (c.cmd == "grow") return run_grow(c);
  if (c.cmd == "analyze") return run_analyze(c);
  if (c.cmd == "malthus") return run_malthus(c, console);
  if (c.cmd == "trajectory") return run_trajectory(c);
  if (c.cmd == "coverage") return run_coverage(c);
  if (c.cmd == "track") return run_track(c);
  if (c.cmd == "maxdeg") return run_maxdeg(c);
  if (c.cmd == "race") return run_race(c);
  if (c.cmd == "dominance") return run_dominance(c);
  if (c.cmd == "hoeffding") return run_hoeffding(c);
  throw ConfigError("unknown subcommand '" + c.cmd + "'");
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  f << content;
  if (!f.flush()) throw std::runtime_error("failed writing '" + path.string() + "'");
}

}  // namespace

RunOutcome run(const ExperimentConfig& config, std::ostream& console) {
  RunOutcome outcome;
  const auto start = std::chrono::steady_clock::now();
  try {
    Output out = dispatch(config, console);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    const std::filesystem::path dir(config.out_dir);
    std::filesystem::create_directories(dir);
    json written = json::array();
    for (const auto& [name, content] : out.csv_files) {
      write_file(dir / name, content);
      outcome.files.push_back((dir / name).string());
      written.push_back(name);
    }
    json sidecar = {
        {"config", config_to_json(config)},
        {"version", kVersion},
        {"master_seed", config.seed},
        {"seed_scheme_version", kSeedSchemeVersion},
        {"seed_scheme", "trial i uses mt19937_64 seeded with splitmix64(splitmix64(seed) ^ splitmix64(~i))"},
        {"runtime_seconds", seconds},
        {"outputs", written},
        {"results", out.results},
    };
    const auto sidecar_path = dir / (config.cmd + ".json");
    write_file(sidecar_path, sidecar.dump(2) + "\n");
    outcome.files.push_back(sidecar_path.string());
  } catch (const ConfigError& e) {
    outcome.exit_code = kExitConfigError;
    outcome.message = e.what();
  } catch (const std::exception& e) {
    outcome.exit_code = kExitRuntimeError;
    outcome.message = config.cmd + ": " + e.what();
  }
  return outcome;
}

int main_entry(int argc, char** argv) {
  CLI::App app{"Random preferential attachment trees and their branching-process embeddings"};
  app.set_version_flag("--version", std::string(kVersion));
  std::string cmd;
  std::string config_path;
  app.add_option("command", cmd, "Subcommand: grow, analyze, malthus, trajectory, coverage, track, maxdeg, race, "
                                 "dominance, hoeffding");
  app.add_option("--config", config_path, "JSON config file; flags override its values");

  std::map<std::string, std::string> flag_values;
  std::vector<std::pair<std::string, CLI::Option*>> flag_options;
  for (const std::string& key : config_keys()) {
    if (key == "cmd") continue;
    std::string flag = "--" + key;
    std::replace(flag.begin(), flag.end(), '_', '-');
    flag_options.emplace_back(key, app.add_option(flag, flag_values[key], "override '" + key + "'"));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfigError;
  }

  ExperimentConfig config;
  try {
    json doc = json::object();
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw ConfigError("cannot read config file '" + config_path + "'");
      try {
        doc = json::parse(in);
      } catch (const json::parse_error& e) {
        throw ConfigError("malformed JSON in '" + config_path + "': " + e.what());
      }
    }
    std::map<std::string, std::string> overrides;
    for (const auto& [key, option] : flag_options) {
      if (option->count() > 0) overrides[key] = flag_values[key];
    }
    config = parse_config(doc, overrides, cmd.empty() ? std::nullopt : std::optional<std::string>(cmd));
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfigError;
  }

  const RunOutcome outcome = run(config, std::cout);
  if (outcome.exit_code != kExitOk) std::cerr << "error: " << outcome.message << '\n';
  return outcome.exit_code;
}

}  // namespace cmjtree::cli
