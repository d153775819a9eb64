// Run orchestration: configuration validation, check execution in dependency
// order, and report rendering (JSON / CSV).
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "decomp.hpp"
#include "orbits.hpp"

namespace weil {

// Raised for invalid configurations (maps to exit status 2 in the CLI).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::uint32_t q = 3;
  std::string model_case = "all";  // triple | fxe | cubic | all
  double tol = 1e-6;
  std::uint64_t seed = 0;
  std::string format = "json";  // json | csv
  // Check-set selection; empty means every applicable check.  Known names:
  // chartab, orbits, homomorphism, appendix2, decomposition.
  std::vector<std::string> checks;
  bool dense_oracle = false;
  bool allow_large = false;
};

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string details;
};

struct RunReport {
  RunConfig cfg;
  std::vector<CheckResult> checks;
  std::vector<MultEntry> multiplicities;  // nonzero entries, label order
  std::string audits_json;                // serialized audits object
  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return !checks.empty();
  }
};

// Validates the configuration (throws ConfigError) and runs the selected
// checks.  A failed check is reported in the result, not thrown.
RunReport run_verify(const RunConfig& cfg);

std::string render_json(const RunReport& rep);
std::string render_csv(const RunReport& rep);

// Character table dump: rows = labels, columns = classes, entries "re,im"
// (quoted).  degree selects the coefficient field F_{q^degree}, 1 <= degree
// <= 3.  Throws ConfigError on invalid q/degree.
std::string chartab_csv(std::uint32_t q, std::uint32_t degree);

}  // namespace weil
