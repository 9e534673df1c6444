#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "susyx/linop.hpp"

namespace susyx {

using Json = nlohmann::json;

// The unit of all verification output. `pass` always equals
// residual <= tolerance.
struct CheckReport {
  std::string check_name;
  Json params = Json::object();
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

CheckReport make_report(std::string name, Json params, double residual, double tolerance);

Json to_json(const CheckReport& r);

// Complex numbers are serialized as two-element [re, im] arrays everywhere.
Json cplx_json(Complex z);
Complex cplx_from_json(const Json& j);

// Newline-delimited report stream followed by one summary object with counts.
void write_reports(std::ostream& os, const std::vector<CheckReport>& reports);
std::string reports_to_string(const std::vector<CheckReport>& reports);
bool all_pass(const std::vector<CheckReport>& reports);

// Deterministic per-task seed derivation (splitmix64 over the mixed words).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0);

// Worker count: min(hardware_concurrency, SUSYX_THREADS when set).
int worker_count();

// Runs fn(i) for i in [0, count) on up to worker_count() threads. Tasks must
// not share mutable state except through their own index; exceptions are
// rethrown on the calling thread.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace susyx
