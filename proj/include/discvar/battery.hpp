#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "discvar/variety.hpp"

namespace discvar {

struct BatteryOptions {
  std::size_t n = 3;
  std::uint64_t seed = 42;
  std::size_t samples = 2000;
  double rank_tol = 1e-8;
  bool deep = false;
  DeriveOptions derive;
  BasisCache* cache = nullptr;
};

struct BatteryReport {
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::vector<Check> checks;
  std::vector<std::string> notes;

  bool passed() const;
};

/// Everything `verify` runs: the derivation checks, golden comparisons, the
/// orbit and 1-orbit systems, numeric vanishing, Jacobian ranks, diameter
/// bounds and the singularity witnesses. The n = 3 specific parts are skipped
/// for other n. Throws ResourceLimitExceeded if the derivation does not
/// finish within the configured limits.
BatteryReport run_battery(const BatteryOptions& opts);

nlohmann::json to_json(const BatteryReport& r);
std::string to_text(const BatteryReport& r);

}  // namespace discvar
