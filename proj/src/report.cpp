#include "ktbench/report.hpp"

#include <limits>
#include <ostream>

namespace ktbench::report {

namespace {

Json integer_json(const BigInt& v) {
  if (v >= 0 && v <= std::numeric_limits<std::uint64_t>::max()) return v.convert_to<std::uint64_t>();
  if (v < 0 && v >= std::numeric_limits<std::int64_t>::min()) return v.convert_to<std::int64_t>();
  return v.str();
}

double as_double(long double v) { return static_cast<double>(v); }

}  // namespace

Json rational_json(const Rational& r) {
  return Json{{"num", integer_json(numerator(r))}, {"den", integer_json(denominator(r))}};
}

Json bits_json(const BitString& b) { return Json{{"hex", b.to_hex()}, {"bits", b.size()}}; }

bool ExperimentReport::all_verdicts() const {
  for (const auto& [name, ok] : verdicts) {
    if (!ok) return false;
  }
  return true;
}

Json ExperimentReport::to_json(bool include_runtime) const {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["experiment_id"] = experiment_id;
  j["machine_version"] = machine_version;
  j["parameters"] = parameters;
  j["rng_seed"] = rng_seed;
  j["measurements"] = measurements;
  j["verdicts"] = verdicts;
  j["all_verdicts"] = all_verdicts();
  if (include_runtime) j["runtime_ms"] = runtime_ms;
  return j;
}

std::string ExperimentReport::dump(bool include_runtime) const { return to_json(include_runtime).dump(2) + "\n"; }

Json to_json(const owf::ReductionReport& r) {
  Json j{{"n", r.n},
         {"c", r.c},
         {"t", r.t},
         {"p_target", r.p_target},
         {"q_target", r.q_target},
         {"fail_r", rational_json(r.fail_r)},
         {"inverter_fail", rational_json(r.inverter_fail)},
         {"required_inverter_fail", rational_json(r.required)},
         {"bound_holds", r.bound_holds}};
  j["slack"] = r.slack ? rational_json(*r.slack) : Json(nullptr);
  return j;
}

Json to_json(const prg::RegularityProfile& p) {
  Json bins = Json::array();
  for (const auto& w : p.bin_weights) bins.push_back(rational_json(w));
  return Json{{"n", p.n}, {"r", p.r}, {"members", p.members.size()}, {"weight", rational_json(p.weight)},
              {"bin_weights", bins}};
}

Json to_json(const prg::PrgParams& p) {
  return Json{{"n", p.n},
              {"log_n", p.log_n},
              {"r", p.r},
              {"s_n", p.s_n},
              {"alpha_prime", p.alpha_prime},
              {"gamma", p.gamma},
              {"delta", p.delta},
              {"hash_exponent", p.hash_exponent},
              {"gamma_prime", p.gamma_prime},
              {"hash_seed_bits", p.hash_seed_bits},
              {"gl_bits", p.gl_bits},
              {"width_input", p.width_input},
              {"width_output", p.width_output},
              {"ell", p.ell},
              {"ell_prime", p.ell_prime},
              {"n_prime", p.n_prime}};
}

Json to_json(const prg::DensityReport& d) {
  return Json{{"sd_real_uniform", rational_json(d.sd_real_uniform)},
              {"sd_real_hyb1", rational_json(d.sd_real_hyb1)},
              {"sd_hyb1_hyb2", rational_json(d.sd_hyb1_hyb2)},
              {"sd_real_uniform_float", d.sd_real_uniform.convert_to<double>()},
              {"density_bound", as_double(d.density_bound)},
              {"hyb1_bound", as_double(d.hyb1_bound)},
              {"hyb2_bound", as_double(d.hyb2_bound)},
              {"density_ok", d.density_ok},
              {"hyb1_ok", d.hyb1_ok},
              {"hyb2_ok", d.hyb2_ok}};
}

Json to_json(const prg::EntropyReport& e) {
  return Json{{"h_generator", as_double(e.h_generator)}, {"h_f_prime", as_double(e.h_f_prime)},
              {"ell", e.ell},                           {"n_prime", e.n_prime},
              {"entropy_loss", as_double(e.entropy_loss)}, {"loss_bound", as_double(e.loss_bound)},
              {"entropy_ok", e.entropy_ok},             {"loss_ok", e.loss_ok}};
}

Json to_json(const prg::SampledReport& s) {
  return Json{{"seed", s.seed},
              {"samples", s.samples},
              {"hoeffding_epsilon", s.hoeffding_epsilon},
              {"tail_sd_estimate", s.tail_sd_estimate},
              {"gl_bit_frequency", s.gl_bit_frequency}};
}

Json to_json(const distinguisher::DistinguisherParams& p) {
  return Json{{"n", p.n},         {"log_n", p.log_n},         {"gamma", p.gamma},
              {"truncation_c", p.truncation_c}, {"d", p.d},   {"m", p.m},
              {"beta", p.beta},   {"threshold", p.threshold}, {"eq1_threshold", p.eq1_threshold},
              {"eq2_threshold", p.eq2_threshold}};
}

Json to_json(const distinguisher::Eq1Verdict& v) {
  return Json{{"threshold", v.threshold},
              {"fraction", rational_json(v.fraction)},
              {"bound", as_double(v.bound)},
              {"threshold_nonpositive", v.threshold_nonpositive},
              {"threshold_exceeds_m", v.threshold_exceeds_m},
              {"holds", v.holds}};
}

Json to_json(const distinguisher::Eq2Verdict& v) {
  return Json{{"threshold", v.threshold}, {"witness_limit", v.witness_limit}, {"seeds", v.seeds},
              {"seeds_ok", v.seeds_ok},   {"max_kt", v.max_kt},               {"vacuous", v.vacuous},
              {"holds", v.holds}};
}

Json to_json(const distinguisher::TruncationRow& row) {
  return Json{{"truncation_c", row.truncation_c},
              {"m", row.m},
              {"threshold", row.threshold},
              {"accept_uniform", rational_json(row.accept_uniform)},
              {"accept_generator", rational_json(row.accept_generator)},
              {"advantage", rational_json(row.advantage)},
              {"eq2", to_json(row.eq2)},
              {"claim_uniform", row.claim_uniform},
              {"claim_generator", row.claim_generator},
              {"beats_target", row.beats_target}};
}

void write_plot_csv(std::ostream& os, const std::vector<PlotPoint>& points) {
  os << "x,y,series\n";
  for (const auto& p : points) os << p.x << ',' << p.y << ',' << p.series << '\n';
}

}  // namespace ktbench::report
