#include "susyx/report.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

namespace susyx {

CheckReport make_report(std::string name, Json params, double residual, double tolerance) {
  CheckReport r;
  r.check_name = std::move(name);
  r.params = std::move(params);
  r.residual = residual;
  r.tolerance = tolerance;
  r.pass = residual <= tolerance;
  return r;
}

Json to_json(const CheckReport& r) {
  Json j;
  j["check_name"] = r.check_name;
  j["params"] = r.params;
  j["residual"] = r.residual;
  j["tolerance"] = r.tolerance;
  j["pass"] = r.pass;
  return j;
}

Json cplx_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex cplx_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw std::invalid_argument("complex value must be a [re, im] array, got " + j.dump());
  return Complex(j[0].get<double>(), j[1].get<double>());
}

void write_reports(std::ostream& os, const std::vector<CheckReport>& reports) {
  std::size_t passed = 0;
  for (const auto& r : reports) {
    os << to_json(r).dump() << "\n";
    if (r.pass) ++passed;
  }
  Json summary;
  summary["summary"] = {{"total", reports.size()},
                        {"passed", passed},
                        {"failed", reports.size() - passed}};
  os << summary.dump() << "\n";
}

std::string reports_to_string(const std::vector<CheckReport>& reports) {
  std::ostringstream os;
  write_reports(os, reports);
  return os.str();
}

bool all_pass(const std::vector<CheckReport>& reports) {
  for (const auto& r : reports)
    if (!r.pass) return false;
  return true;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  auto splitmix = [](std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  };
  std::uint64_t h = splitmix(seed);
  h = splitmix(h ^ a);
  h = splitmix(h ^ b);
  h = splitmix(h ^ c);
  return h;
}

int worker_count() {
  int n = int(std::thread::hardware_concurrency());
  if (n < 1) n = 1;
  if (const char* env = std::getenv("SUSYX_THREADS")) {
    char* end = nullptr;
    long cap = std::strtol(env, &end, 10);
    if (end != env && cap >= 1) n = std::min<long>(n, cap);
  }
  return n;
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
  const int workers = std::min<std::size_t>(worker_count(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto body = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(std::size_t(workers));
  for (int t = 0; t < workers; ++t) pool.emplace_back(body);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace susyx
