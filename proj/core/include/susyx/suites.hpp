#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "susyx/bethe.hpp"
#include "susyx/report.hpp"

namespace susyx {

// Shared configuration for the verification drivers. The n-range is
// inclusive and must be nonempty; samples is the number of spectral-
// parameter draws per (check, n).
struct RunConfig {
  int n_lo = 2;
  int n_hi = 6;
  int samples = 5;
  std::uint64_t seed = 1;
  std::map<std::string, double> tol_overrides;  // check_name -> tolerance
  std::optional<std::string> output_path;
};

// Thrown for bad suite names, empty ranges, or range/suite mismatches;
// the CLI maps it to exit code 2.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

void validate(const RunConfig& cfg);
RunConfig run_config_from_json(const Json& j);  // same schema as the flags

// Verification suites reachable from the command line. Reports come back
// in a deterministic order (suite, n, sample index) regardless of the
// worker count.
extern const std::vector<std::string> kVerifySuites;  // excludes "all"

std::vector<CheckReport> run_verify_suite(const std::string& suite, const RunConfig& cfg);

// Vacuum-singlet and spectrum-decomposition sweeps over the n-range.
std::vector<CheckReport> run_vacuum(const RunConfig& cfg);
std::vector<CheckReport> run_spectrum(const RunConfig& cfg);

// Off-shell root sampling used by the pairing suite: m roots redrawn until
// the root-set invariants hold.
BetheRootSet sample_offshell_roots(int n, int m, std::uint64_t seed);

}  // namespace susyx
