#pragma once

// Executable scenarios, each checking one statement about Bousfield lattices
// over the p-local truncated algebra, with machine-readable verdicts.

#include <cstdint>
#include <string>
#include <vector>

#include "bousfield/catalog.hpp"

namespace bousfield {

struct ExperimentConfig {
  std::uint32_t prime = 3;
  ExponentRule exponents;
  DegreeRule degrees;
  DegreeWindow window;
  StabilizationPolicy policy;
  std::uint64_t seed = 0;
  int cap = 40;
  int jobs = 1;
  /// Negative control: S1 multiplies the first nonzero differential of B by p on one side.
  bool corrupt_differential = false;
  /// Wall-clock timings make reports non-reproducible, so they are off by default.
  bool timings = false;
  int s1_pairs_g = 50;
  int s1_pairs_h = 20;
  int s2_complexes = 20;
  int s11_models = 100;

  SpecPtr shape() const;
};

/// Throws ConfigError.
void validate_config(const ExperimentConfig& c);
Json config_to_json(const ExperimentConfig& c);
/// Keys missing from j keep the values of base. Throws ConfigError.
ExperimentConfig config_from_json(const Json& j, const ExperimentConfig& base = {});

enum class Verdict { kPass, kFail, kInconclusive, kExploratory };
const char* verdict_name(Verdict v);

struct ScenarioReport {
  std::string id;
  std::string claim;
  Verdict verdict = Verdict::kPass;
  std::string reason;
  DegreeWindow window;
  std::string catalog_hash;  // empty when no catalog is involved
  Json witnesses = Json::array();
  Json details = Json::object();
  double timing_ms = -1;  // negative when not recorded

  Json to_json() const;
};

const std::vector<std::string>& scenario_ids();
/// Throws ConfigError for unknown ids.
const std::string& scenario_claim(const std::string& id);

/// Throws ConfigError.
ScenarioReport run_scenario(const std::string& id, const ExperimentConfig& config);
/// Runs the given scenarios in registry order, sharing one catalog.
std::vector<ScenarioReport> run_scenarios(const std::vector<std::string>& ids, const ExperimentConfig& config);
std::vector<ScenarioReport> run_all(const ExperimentConfig& config);

/// 0 when every verdict is Pass or Exploratory, 1 on any Fail, else 2.
int exit_code(const std::vector<ScenarioReport>& reports);

Json reports_to_json(const std::vector<ScenarioReport>& reports, const ExperimentConfig& config);
std::string reports_to_table(const std::vector<ScenarioReport>& reports);

}  // namespace bousfield
