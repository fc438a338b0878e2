// ktbench: experiment runner.
//
//   ktbench kt-table    --n 8 --t 64 --out table.csv
//   ktbench owf         --n 8 --inverter deny-random --seed 7
//   ktbench prg         --owf identity --n 4 --alpha-prime 0 --gamma 2 --mode exact
//   ktbench distinguish --n 4 --gamma 8 --heuristic exact-kt
//
// Any subcommand also takes --config file.json whose keys mirror the long
// flag names; flags given on the command line win.
//
// Exit status: 0 all verdicts true, 1 some verdict false, 2 configuration error.

#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ktbench/errors.hpp"
#include "ktbench/experiments.hpp"

namespace {

using nlohmann::json;
namespace ex = ktbench::experiments;

constexpr int kExitConfig = 2;

json load_config(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream in(path);
  if (!in) throw ktbench::ConfigError("cannot read config file \"" + path + "\"");
  try {
    auto j = json::parse(in);
    if (!j.is_object()) throw ktbench::ConfigError("config file must hold a JSON object");
    return j;
  } catch (const json::exception& e) {
    throw ktbench::ConfigError(std::string("config file: ") + e.what());
  }
}

// Copies key from the config file into target unless the flag was given.
template <class T>
void merge(const json& config, const CLI::App& app, const std::string& key, T& target) {
  if (app.count("--" + key) > 0 || !config.contains(key)) return;
  try {
    target = config.at(key).get<T>();
  } catch (const json::exception&) {
    throw ktbench::ConfigError("config key \"" + key + "\" has the wrong type");
  }
}

void merge_out(const json& config, const CLI::App& app, std::optional<std::string>& out) {
  if (app.count("--out") > 0 || !config.contains("out")) return;
  std::string path;
  merge(config, app, "out", path);
  out = path;
}

int emit(const ex::ExperimentReport& report, const std::optional<std::string>& out) {
  const std::string text = report.dump();
  if (out) {
    std::ofstream file(*out, std::ios::binary);
    if (!file) throw ktbench::ConfigError("cannot open \"" + *out + "\" for writing");
    file << text;
  } else {
    std::cout << text;
  }
  return report.all_verdicts() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Time-bounded Kolmogorov complexity and PRG experiment runner"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::string> out;
  std::uint64_t seed = 1;

  auto* kt = app.add_subcommand("kt-table", "Write K^t for every n-bit string as CSV");
  std::size_t kt_n = 8;
  std::uint64_t kt_t = 64;
  kt->add_option("--n", kt_n, "String length");
  kt->add_option("--t", kt_t, "Step bound");
  kt->add_option("--out", out, "Output CSV (default stdout)");
  kt->add_option("--config", config_path, "JSON config file");

  auto* owf = app.add_subcommand("owf", "Inverter-to-heuristic reduction accounting");
  ex::OwfConfig owf_config;
  owf->add_option("--n", owf_config.n, "Size parameter");
  owf->add_option("--t", owf_config.t_schedule, "t(n): 4n, n^2 or a constant");
  owf->add_option("--inverter", owf_config.inverter, "perfect, deny-all, deny-one or deny-random");
  owf->add_option("--trials", owf_config.trials, "Inverters for deny-random");
  owf->add_option("--seed", seed, "RNG seed");
  owf->add_option("--out", out, "Output report (default stdout)");
  owf->add_option("--config", config_path, "JSON config file");

  auto* prg = app.add_subcommand("prg", "Density, hybrid and entropy census of the generator");
  ex::PrgConfig prg_config;
  prg->add_option("--owf", prg_config.owf, "Toy OWF name");
  prg->add_option("--n", prg_config.n, "OWF input bits");
  prg->add_option("--alpha-prime", prg_config.alpha_prime, "Truncation constant alpha'");
  prg->add_option("--gamma", prg_config.gamma, "Expansion constant");
  prg->add_option("--delta", prg_config.delta, "Security exponent (recorded)");
  prg->add_option("--mode", prg_config.mode, "exact or sampled");
  prg->add_option("--samples", prg_config.samples, "Sample count in sampled mode");
  prg->add_option("--seed", seed, "RNG seed");
  prg->add_option("--out", out, "Output report (default stdout)");
  prg->add_option("--config", config_path, "JSON config file");

  auto* dist = app.add_subcommand("distinguish", "Heuristic-based distinguisher against the builtin generator");
  ex::DistinguishConfig dist_config;
  std::string plot_out;
  dist->add_option("--n", dist_config.n, "Generator seed bits");
  dist->add_option("--gamma", dist_config.gamma, "Expansion constant");
  dist->add_option("--heuristic", dist_config.heuristic, "exact-kt, constant-0, constant-m or approx");
  dist->add_option("--t", dist_config.t, "Step bound");
  dist->add_option("--seed", seed, "RNG seed");
  dist->add_option("--plot-out", plot_out, "CSV plot data of the truncation sweep");
  dist->add_option("--out", out, "Output report (default stdout)");
  dist->add_option("--config", config_path, "JSON config file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (kt->parsed()) {
      const auto config = load_config(config_path);
      merge_out(config, *kt, out);
      merge(config, *kt, "n", kt_n);
      merge(config, *kt, "t", kt_t);
      if (out) {
        ex::cmd_kt_table(kt_n, kt_t, *out);
      } else {
        ex::cmd_kt_table(kt_n, kt_t, std::cout);
      }
      return 0;
    }
    if (owf->parsed()) {
      const auto config = load_config(config_path);
      merge_out(config, *owf, out);
      merge(config, *owf, "n", owf_config.n);
      merge(config, *owf, "t", owf_config.t_schedule);
      merge(config, *owf, "inverter", owf_config.inverter);
      merge(config, *owf, "trials", owf_config.trials);
      merge(config, *owf, "seed", seed);
      owf_config.seed = seed;
      return emit(ex::cmd_owf_experiment(owf_config), out);
    }
    if (prg->parsed()) {
      const auto config = load_config(config_path);
      merge(config, *prg, "owf", prg_config.owf);
      merge_out(config, *prg, out);
      merge(config, *prg, "n", prg_config.n);
      merge(config, *prg, "alpha-prime", prg_config.alpha_prime);
      merge(config, *prg, "gamma", prg_config.gamma);
      merge(config, *prg, "delta", prg_config.delta);
      merge(config, *prg, "mode", prg_config.mode);
      merge(config, *prg, "samples", prg_config.samples);
      merge(config, *prg, "seed", seed);
      prg_config.seed = seed;
      return emit(ex::cmd_prg_experiment(prg_config), out);
    }
    const auto config = load_config(config_path);
    merge_out(config, *dist, out);
    merge(config, *dist, "n", dist_config.n);
    merge(config, *dist, "gamma", dist_config.gamma);
    merge(config, *dist, "heuristic", dist_config.heuristic);
    merge(config, *dist, "t", dist_config.t);
    merge(config, *dist, "seed", seed);
    merge(config, *dist, "plot-out", plot_out);
    dist_config.seed = seed;
    if (!plot_out.empty()) dist_config.plot_out = plot_out;
    return emit(ex::cmd_distinguish(dist_config), out);
  } catch (const std::invalid_argument& e) {  // ConfigError, LengthMismatch
    std::cerr << "ktbench: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ktbench::BudgetExceeded& e) {
    std::cerr << "ktbench: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "ktbench: error: " << e.what() << '\n';
    return kExitConfig;
  }
}
