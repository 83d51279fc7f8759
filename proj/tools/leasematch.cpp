// Command line front end: Monte Carlo sweeps, oracle verification, and
// single-drop traces for the cooperative spectrum sharing simulator.

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "leasematch/config.hpp"
#include "leasematch/error.hpp"
#include "leasematch/report.hpp"
#include "leasematch/simulation.hpp"
#include "leasematch/verify.hpp"
#include "leasematch/version.hpp"

namespace {

using namespace leasematch;

constexpr int kExitUsage = 1;
constexpr int kExitConfig = 2;
constexpr int kExitVerification = 3;

struct SweepArgs {
  std::string config_path;
  std::string out_dir = ".";
  std::string scheme;
  std::string n_values;
  int drops = -1;
  std::optional<std::uint64_t> seed;
  double c_fixed = -1.0;
  bool no_condition_outage = false;
  int threads = 0;
};

struct VerifyArgs {
  std::string config_path;
  int instances = 1000;
  double grid_c = 1e-4;
  double grid_alpha = 1e-5;
  std::optional<std::uint64_t> seed;
  double perturb_alpha = 0.0;
};

struct PairArgs {
  std::string config_path;
  std::string scheme = "proposed";
  std::string out_path;
  int n = -1;
  int drop = 0;
  bool dump_preferences = false;
};

ScenarioConfig load_or_default(const std::string& path) {
  return path.empty() ? default_config() : load_config_file(path);
}

std::vector<int> parse_n_values(const std::string& text) {
  std::vector<int> values;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    try {
      values.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw ConfigError(0, "bad --n-values entry '" + item + "'");
    }
  }
  if (values.empty()) throw ConfigError(0, "--n-values must not be empty");
  return values;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << content;
}

int run_sweep_command(const SweepArgs& args) {
  ScenarioConfig config = load_or_default(args.config_path);
  if (!args.scheme.empty()) config.schemes = {scheme_from_string(args.scheme)};
  if (!args.n_values.empty()) config.d2d_counts = parse_n_values(args.n_values);
  if (args.drops > 0) config.drops = args.drops;
  if (args.seed) config.master_seed = *args.seed;
  if (args.c_fixed >= 0.0) config.fixed_price = args.c_fixed;
  if (args.no_condition_outage) config.condition_outage = false;
  config.threads = args.threads;

  const auto start = std::chrono::steady_clock::now();
  const SweepResult result = run_sweep(config);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const std::filesystem::path out_dir(args.out_dir);
  std::filesystem::create_directories(out_dir);
  write_file(out_dir / "results.csv", render_csv(result, config.master_seed));
  write_file(out_dir / "manifest.txt",
             render_manifest(config, result, current_timestamp()));

  std::cout << "wrote " << (out_dir / "results.csv").string() << " ("
            << result.cells.size() << " cells, " << config.drops << " drops each, "
            << format_double(seconds) << " s)\n";
  std::cout << "wrote " << (out_dir / "manifest.txt").string() << '\n';
  return 0;
}

int run_verify_command(const VerifyArgs& args) {
  const ScenarioConfig config = load_or_default(args.config_path);
  VerifyOptions options;
  options.instances = args.instances;
  options.price_step = args.grid_c;
  options.allocation_step = args.grid_alpha;
  options.seed = args.seed ? *args.seed : config.master_seed;
  options.perturb_allocation = args.perturb_alpha;

  const VerifyReport report = run_verification(config, options);
  std::cout << render_report(report);
  return report.ok() ? 0 : kExitVerification;
}

void print_pair_table(std::ostream& out, const OutcomeTable& table) {
  out << "pairs (ceu, d2d): feasible price allocation ceu_utility d2d_utility "
         "ceu_rate d2d_rate\n";
  for (int i = 0; i < table.ceu_count; ++i) {
    for (int j = 0; j < table.d2d_count; ++j) {
      const PairOutcome& o = table.at(i, j);
      out << "pair " << i << ' ' << j << ": " << (o.feasible ? 1 : 0) << ' '
          << format_double(o.price) << ' ' << format_double(o.allocation) << ' '
          << format_double(o.ceu_utility) << ' ' << format_double(o.d2d_utility)
          << ' ' << format_double(o.ceu_rate) << ' ' << format_double(o.d2d_rate)
          << '\n';
    }
  }
}

void print_preferences(std::ostream& out, const PreferenceProfile& prefs) {
  for (const PreferenceList& list : prefs.ceu) {
    out << "prefs ceu " << list.owner << ":";
    for (int j : list.ranked) out << ' ' << j;
    out << '\n';
  }
  for (const PreferenceList& list : prefs.d2d) {
    out << "prefs d2d " << list.owner << ":";
    for (int i : list.ranked) out << ' ' << i;
    out << '\n';
  }
}

int run_pair_command(const PairArgs& args) {
  const ScenarioConfig config = load_or_default(args.config_path);
  const Scheme scheme = scheme_from_string(args.scheme);
  const int n = args.n >= 0 ? args.n
                            : (config.d2d_counts.empty() ? 0 : config.d2d_counts.front());

  // Mirror run_drop step by step so every stage can be printed.
  RandomStream rng = RandomStream::substream(config.master_seed, args.drop);
  const Topology topology = place_nodes(config.channel, config.ceu_count, n, rng);
  const ChannelGains gains =
      realize_gains(topology, config.channel, rng, config.condition_outage,
                    config.game.ceu_power_w, config.game.rate_requirement);
  OutcomeTable table(config.ceu_count, n);
  for (int i = 0; i < config.ceu_count; ++i) {
    for (int j = 0; j < n; ++j) {
      const LinkBudget budget = pair_budget(i, j, gains, config.game);
      table.at(i, j) = scheme == Scheme::kStableFixedPrice
                           ? fixed_price_outcome(config.fixed_price, budget, config.game)
                           : solve_equilibrium(budget, config.game);
    }
  }
  const PreferenceProfile prefs =
      build_preferences(table, topology, config.channel.relay_range_m);

  std::ostringstream out;
  out << "# leasematch pair trace\n";
  out << "# scheme: " << to_string(scheme) << "  seed: " << config.master_seed
      << "  drop: " << args.drop << "  M: " << config.ceu_count << "  N: " << n
      << '\n';
  print_pair_table(out, table);
  if (args.dump_preferences) print_preferences(out, prefs);

  Matching matching;
  if (scheme == Scheme::kRandomStackelberg) {
    matching = random_matching(prefs, rng);
    out << "random assignment\n";
  } else {
    DaLog log;
    matching = deferred_acceptance(prefs, &log);
    for (std::size_t r = 0; r < log.rounds.size(); ++r) {
      out << "da round " << (r + 1) << ": propose";
      for (const auto& [i, j] : log.rounds[r].proposals) {
        out << ' ' << i << "->" << j;
      }
      if (!log.rounds[r].rejections.empty()) {
        out << " ; reject";
        for (const auto& [i, j] : log.rounds[r].rejections) {
          out << ' ' << i << "-x" << j;
        }
      }
      out << '\n';
    }
    out << "da proposals total: " << log.total_proposals << '\n';
  }
  for (int i = 0; i < config.ceu_count; ++i) {
    if (matching.ceu_to_d2d[i] >= 0) {
      out << "matched ceu " << i << " <-> d2d " << matching.ceu_to_d2d[i] << '\n';
    } else {
      out << "unmatched ceu " << i << '\n';
    }
  }

  if (args.out_path.empty()) {
    std::cout << out.str();
  } else {
    write_file(args.out_path, out.str());
    std::cout << "wrote " << args.out_path << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cooperative spectrum sharing: Stackelberg pricing with stable "
               "CEU-D2D matching"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  SweepArgs sweep_args;
  CLI::App* sweep = app.add_subcommand(
      "sweep", "Run Monte Carlo sweeps and write results.csv plus a manifest");
  sweep->add_option("config", sweep_args.config_path,
                    "Config file (key = value); omit for the built-in scenario");
  sweep->add_option("--scheme", sweep_args.scheme,
                    "Restrict to one scheme: proposed, random_stackelberg, "
                    "stable_fixed_price");
  sweep->add_option("--n-values", sweep_args.n_values,
                    "Comma-separated D2D pair counts, e.g. 5,10,20");
  sweep->add_option("--drops", sweep_args.drops, "Monte Carlo drops per cell")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--seed", sweep_args.seed, "Master seed");
  sweep->add_option("--c-fixed", sweep_args.c_fixed,
                    "Price for the stable_fixed_price scheme")
      ->check(CLI::NonNegativeNumber);
  sweep->add_flag("--no-condition-outage", sweep_args.no_condition_outage,
                  "Do not force CEU direct links into outage");
  sweep->add_option("--threads", sweep_args.threads,
                    "Worker threads (0 = hardware); results are identical")
      ->check(CLI::NonNegativeNumber);
  sweep->add_option("--out-dir", sweep_args.out_dir, "Output directory")
      ->envname("LEASEMATCH_OUT_DIR");

  VerifyArgs verify_args;
  CLI::App* verify = app.add_subcommand(
      "verify", "Check closed forms against grid oracles and DA against "
                "enumeration");
  verify->add_option("config", verify_args.config_path, "Config file");
  verify->add_option("--instances", verify_args.instances,
                     "Sampled instances per check")
      ->check(CLI::PositiveNumber);
  verify->add_option("--grid-c", verify_args.grid_c, "Price grid step")
      ->check(CLI::PositiveNumber);
  verify->add_option("--grid-alpha", verify_args.grid_alpha,
                     "Allocation grid step")
      ->check(CLI::PositiveNumber);
  verify->add_option("--seed", verify_args.seed, "Sampling seed");
  verify->add_option("--perturb-alpha", verify_args.perturb_alpha,
                     "Test hook: offset the closed-form allocation (forces "
                     "failures)")
      ->group("");

  PairArgs pair_args;
  CLI::App* pair = app.add_subcommand(
      "pair", "Trace one drop: pair outcomes, preferences, proposal rounds, "
              "final matching");
  pair->add_option("config", pair_args.config_path, "Config file");
  pair->add_option("--scheme", pair_args.scheme, "Scheme to trace");
  pair->add_option("--n", pair_args.n, "D2D pair count (default: first sweep value)")
      ->check(CLI::NonNegativeNumber);
  pair->add_option("--drop", pair_args.drop, "Drop index")
      ->check(CLI::NonNegativeNumber);
  pair->add_flag("--dump-preferences", pair_args.dump_preferences,
                 "Print both preference tables");
  pair->add_option("--out", pair_args.out_path, "Write the trace to a file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (sweep->parsed()) return run_sweep_command(sweep_args);
    if (verify->parsed()) return run_verify_command(verify_args);
    if (pair->parsed()) return run_pair_command(pair_args);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return 0;
}
