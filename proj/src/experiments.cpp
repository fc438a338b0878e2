#include "ktbench/experiments.hpp"

#include <chrono>
#include <fstream>
#include <ostream>

#include "ktbench/distinguisher.hpp"
#include "ktbench/errors.hpp"
#include "ktbench/kolmogorov.hpp"
#include "ktbench/owf.hpp"
#include "ktbench/prg.hpp"
#include "ktbench/rng.hpp"

namespace ktbench::experiments {

namespace {

using report::Json;

class Stopwatch {
 public:
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

ExperimentReport new_report(const std::string& id, std::uint64_t seed) {
  ExperimentReport r;
  r.experiment_id = id;
  r.machine_version = tinyvm::default_machine().version;
  r.rng_seed = seed;
  return r;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open \"" + path + "\" for writing");
  return out;
}

}  // namespace

void cmd_kt_table(std::size_t n, Steps t, std::ostream& out) {
  kolmogorov::KtTable::build(n, t).write_csv(out);
}

void cmd_kt_table(std::size_t n, Steps t, const std::string& out_path) {
  auto out = open_output(out_path);
  cmd_kt_table(n, t, out);
}

ExperimentReport cmd_owf_experiment(const OwfConfig& config) {
  const Stopwatch clock;
  const auto schedule = owf::parse_schedule(config.t_schedule);
  const auto params = owf::make_owf_params(config.n, schedule);
  if (params.input_bits() > 20) throw ConfigError("owf experiment: n too large for exhaustive accounting");
  const owf::BruteForceInverter brute(params);
  const auto table = kolmogorov::KtTable::build(params.n, params.t);

  auto report = new_report("owf-reduction", config.seed);
  report.parameters = Json{{"n", params.n},
                           {"c", params.c},
                           {"t", params.t},
                           {"t_schedule", schedule.name},
                           {"inverter", config.inverter},
                           {"ell_bits", params.ell_bits()},
                           {"input_bits", params.input_bits()}};

  std::vector<std::pair<std::string, owf::Inverter>> inverters;
  if (config.inverter == "perfect") {
    inverters.emplace_back("perfect", brute.as_inverter());
  } else if (config.inverter == "deny-all") {
    std::set<BitString> all;
    for (const auto& [y, count] : brute.image()) all.insert(y);
    inverters.emplace_back("deny-all", owf::make_failing_inverter(brute.as_inverter(), std::move(all), params));
  } else if (config.inverter == "deny-one") {
    // Denying a z with kt(z) = n + c changes nothing, so prefer compressible ones.
    std::vector<std::uint64_t> candidates;
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << params.n); ++v) {
      if (table.at(v).length < params.n + params.c) candidates.push_back(v);
    }
    SeededRng rng(config.seed);
    const auto z = candidates.empty() ? BitString::from_uint(rng.below(std::uint64_t{1} << params.n), params.n)
                                      : BitString::from_uint(candidates[rng.below(candidates.size())], params.n);
    const owf::OwfOutput target{table.at(z).length, z};
    report.parameters["denied_z"] = report::bits_json(z);
    inverters.emplace_back("deny-one", owf::make_failing_inverter(brute.as_inverter(), {target.to_bits(params)}, params));
  } else if (config.inverter == "deny-random") {
    report.parameters["trials"] = config.trials;
    for (std::size_t i = 0; i < config.trials; ++i) {
      const std::uint64_t seed = mix_seed(config.seed + i);
      inverters.emplace_back("deny-random/" + std::to_string(i),
                             owf::make_failing_inverter(brute.as_inverter(), owf::random_deny_set(brute, seed), params));
    }
  } else {
    throw ConfigError("unknown inverter \"" + config.inverter + "\" (perfect, deny-all, deny-one, deny-random)");
  }

  bool bound_holds = true;
  bool witnesses_valid = true;
  bool matches_kt = true;
  Json runs = Json::array();
  for (const auto& [name, inverter] : inverters) {
    const auto r = owf::reduction_accounting(inverter, params, table);
    bound_holds = bound_holds && r.bound_holds;
    for (std::uint64_t z = 0; z < (std::uint64_t{1} << params.n); ++z) {
      const auto zb = BitString::from_uint(z, params.n);
      const auto answer = owf::heuristic_from_inverter(inverter, zb, params);
      if (answer.program) {
        const auto run = tinyvm::run(*answer.program, params.t);
        witnesses_valid = witnesses_valid && run.ok() && run.output == zb;
      }
      matches_kt = matches_kt && answer.k == table.at(z).length;
    }
    auto j = report::to_json(r);
    j["inverter"] = name;
    runs.push_back(std::move(j));
  }
  report.measurements["runs"] = std::move(runs);
  report.measurements["heuristic_matches_kt"] = matches_kt;
  report.verdicts["bound_holds"] = bound_holds;
  report.verdicts["witnesses_valid"] = witnesses_valid;
  if (config.inverter == "perfect") report.verdicts["perfect_inverter_exact"] = matches_kt;
  report.runtime_ms = clock.elapsed_ms();
  return report;
}

ExperimentReport cmd_prg_experiment(const PrgConfig& config) {
  const Stopwatch clock;
  if (config.mode != "exact" && config.mode != "sampled") {
    throw ConfigError("unknown mode \"" + config.mode + "\" (exact, sampled)");
  }
  if (config.mode == "exact" && config.n > 4) {
    throw ConfigError("exact mode enumerates every seed and supports n <= 4; use --mode sampled");
  }
  const auto f = prg::make_toy_owf(config.owf, config.n);
  const auto profile = prg::find_regularity(f);
  const auto params = prg::make_prg_params(profile, config.alpha_prime, config.gamma, config.delta);

  auto report = new_report("prg-" + config.mode, config.seed);
  report.parameters = Json{{"owf", config.owf},     {"n", config.n},           {"alpha_prime", config.alpha_prime},
                           {"gamma", config.gamma}, {"delta", config.delta},   {"mode", config.mode}};
  if (config.mode == "sampled") report.parameters["samples"] = config.samples;

  report.measurements["regularity"] = report::to_json(profile);
  report.measurements["params"] = report::to_json(params);
  report.measurements["expansion"] = params.ell_prime - params.n_prime;
  report.measurements["expansion_required"] = prg::required_expansion(params);
  report.verdicts["regularity"] = prg::profile_is_valid(f, profile);
  report.verdicts["expansion"] = prg::expansion_ok(params);

  if (config.mode == "exact") {
    const auto density = prg::density_census(f, profile, params);
    const auto entropy = prg::entropy_census(f, profile, params);
    report.measurements["density"] = report::to_json(density);
    report.measurements["entropy"] = report::to_json(entropy);
    report.verdicts["density"] = density.density_ok;
    report.verdicts["hybrid_real_hyb1"] = density.hyb1_ok;
    report.verdicts["hybrid_hyb1_hyb2"] = density.hyb2_ok;
    report.verdicts["entropy"] = entropy.entropy_ok;
    report.verdicts["entropy_loss"] = entropy.loss_ok;
  } else {
    report.measurements["sampled"] = report::to_json(prg::sampled_census(f, profile, params, config.seed, config.samples));
  }
  report.runtime_ms = clock.elapsed_ms();
  return report;
}

ExperimentReport cmd_distinguish(const DistinguishConfig& config) {
  const Stopwatch clock;
  const auto base = distinguisher::make_params(config.n, config.gamma, 0);
  if (base.m > 22) throw ConfigError("distinguish: m = n + gamma ceil(log2 n) must be <= 22");

  auto report = new_report("distinguish", config.seed);
  report.parameters = Json{{"n", config.n},
                           {"gamma", config.gamma},
                           {"heuristic", config.heuristic},
                           {"t", config.t},
                           {"builtin", tinyvm::default_machine().find(tinyvm::builtin_ids::kCondEpPrg)->name}};

  auto heuristic_for = [&](const distinguisher::DistinguisherParams& p) -> distinguisher::Heuristic {
    if (config.heuristic == "constant-0") return [](const BitString&) -> std::size_t { return 0; };
    if (config.heuristic == "constant-m") return [m = p.m](const BitString&) { return m; };
    const distinguisher::ExactKtHeuristic exact(p.m, config.t);
    if (config.heuristic == "exact-kt") return exact.as_heuristic();
    if (config.heuristic == "approx") return distinguisher::approximate_heuristic(exact.as_heuristic(), p.beta, config.seed);
    throw ConfigError("unknown heuristic \"" + config.heuristic + "\" (exact-kt, constant-0, constant-m, approx)");
  };

  const auto eq1 = distinguisher::eq1_census(base.m, config.n, config.t, config.gamma);
  std::vector<distinguisher::TruncationRow> rows;
  const unsigned last = std::min<unsigned>(config.gamma + 1, tinyvm::builtin_ids::kMaxTruncation);
  for (unsigned c = 0; c <= last; ++c) {
    const auto p = distinguisher::make_params(config.n, config.gamma, c);
    rows.push_back(distinguisher::evaluate_truncation(config.n, config.gamma, c, config.t, heuristic_for(p)));
  }

  Json sweep = Json::array();
  std::vector<report::PlotPoint> plot;
  for (const auto& row : rows) {
    sweep.push_back(report::to_json(row));
    const auto x = static_cast<double>(row.truncation_c);
    plot.push_back({x, row.advantage.convert_to<double>(), "advantage"});
    plot.push_back({x, row.accept_uniform.convert_to<double>(), "accept_uniform"});
    plot.push_back({x, row.accept_generator.convert_to<double>(), "accept_generator"});
  }
  report.measurements["params"] = report::to_json(base);
  report.measurements["eq1"] = report::to_json(eq1);
  report.measurements["sweep"] = std::move(sweep);

  const auto& head = rows.front();
  report.verdicts["eq1"] = eq1.holds;
  report.verdicts["accept_uniform"] = head.claim_uniform;
  report.verdicts["reject_generator"] = head.claim_generator;
  report.verdicts["advantage_beats_target"] = head.beats_target;

  if (config.plot_out) {
    auto out = open_output(*config.plot_out);
    report::write_plot_csv(out, plot);
  }
  report.runtime_ms = clock.elapsed_ms();
  return report;
}

}  // namespace ktbench::experiments
