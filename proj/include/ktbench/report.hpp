#pragma once

// JSON encodings for experiment reports. Objects use nlohmann::json's
// default std::map storage, so keys are always emitted sorted.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "ktbench/distinguisher.hpp"
#include "ktbench/owf.hpp"
#include "ktbench/prg.hpp"
#include "ktbench/stats.hpp"

namespace ktbench::report {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

/// {"num": n, "den": d}; integers that do not fit in 64 bits are decimal strings.
Json rational_json(const Rational& r);
Json bits_json(const BitString& b);  // {"hex": ..., "bits": ...}

struct ExperimentReport {
  std::string experiment_id;
  std::string machine_version;
  Json parameters = Json::object();
  std::uint64_t rng_seed = 0;
  Json measurements = Json::object();
  std::map<std::string, bool> verdicts;
  double runtime_ms = 0;

  bool all_verdicts() const;
  /// Full report; runtime_ms is omitted when include_runtime is false.
  Json to_json(bool include_runtime = true) const;
  /// Pretty-printed JSON followed by a newline.
  std::string dump(bool include_runtime = true) const;
};

Json to_json(const owf::ReductionReport& r);
Json to_json(const prg::RegularityProfile& p);
Json to_json(const prg::PrgParams& p);
Json to_json(const prg::DensityReport& d);
Json to_json(const prg::EntropyReport& e);
Json to_json(const prg::SampledReport& s);
Json to_json(const distinguisher::DistinguisherParams& p);
Json to_json(const distinguisher::Eq1Verdict& v);
Json to_json(const distinguisher::Eq2Verdict& v);
Json to_json(const distinguisher::TruncationRow& row);

struct PlotPoint {
  double x = 0;
  double y = 0;
  std::string series;
};

/// CSV with header x,y,series.
void write_plot_csv(std::ostream& os, const std::vector<PlotPoint>& points);

}  // namespace ktbench::report
