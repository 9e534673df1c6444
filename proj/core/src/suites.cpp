#include "susyx/suites.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include "susyx/cohomology.hpp"
#include "susyx/reflection.hpp"
#include "susyx/susy.hpp"

namespace susyx {

namespace {

double tol_for(const RunConfig& cfg, const std::string& name, double fallback) {
  auto it = cfg.tol_overrides.find(name);
  return it == cfg.tol_overrides.end() ? fallback : it->second;
}

void retolerance(CheckReport& r, const RunConfig& cfg) {
  auto it = cfg.tol_overrides.find(r.check_name);
  if (it == cfg.tol_overrides.end()) return;
  r.tolerance = it->second;
  r.pass = r.residual <= r.tolerance;
}

// Task list executed in parallel; slot order fixes the report order.
using Task = std::function<std::vector<CheckReport>()>;

std::vector<CheckReport> run_tasks(std::vector<Task> tasks, const RunConfig& cfg) {
  std::vector<std::vector<CheckReport>> slots(tasks.size());
  parallel_for(tasks.size(), [&](std::size_t i) { slots[i] = tasks[i](); });
  std::vector<CheckReport> out;
  for (auto& slot : slots)
    for (auto& r : slot) {
      retolerance(r, cfg);
      out.push_back(std::move(r));
    }
  return out;
}

void require_range(const std::string& suite, const RunConfig& cfg, int min_n) {
  if (cfg.n_lo < min_n)
    throw UsageError("suite '" + suite + "' requires n >= " + std::to_string(min_n) +
                     " (got " + std::to_string(cfg.n_lo) + ")");
}

std::vector<Task> susy_tasks(const RunConfig& cfg) {
  std::vector<Task> tasks;
  for (int n = cfg.n_lo; n <= cfg.n_hi; ++n)
    tasks.push_back([n] { return susy_identity_suite(n); });
  return tasks;
}

std::vector<Task> reflection_tasks(const RunConfig& cfg) {
  std::vector<Task> tasks;
  for (int n = cfg.n_lo; n <= cfg.n_hi; ++n) {
    for (int s = 0; s < cfg.samples; ++s) {
      tasks.push_back([n, s, seed = cfg.seed] {
        const Complex u = sample_spectral_u(mix_seed(seed, std::uint64_t(n), std::uint64_t(s)));
        const Json params{{"n", n}, {"sample", s}, {"u", cplx_json(u)}, {"seed", seed}};
        std::vector<CheckReport> out;

        const Weights w = weights(u);
        const auto [id1, id2] = weight_identity_residuals(w);
        out.push_back(make_report("weight_identities", params, std::max(id1, id2), 1e-12));

        const MonodromyBlocks direct = monodromy_direct(n, u);
        const MonodromyBlocks recursive = monodromy_recursive(n, u);
        double worst = 0.0;
        const std::pair<const LinOp*, const LinOp*> blocks[] = {
            {&direct.A, &recursive.A}, {&direct.B, &recursive.B},
            {&direct.C, &recursive.C}, {&direct.D, &recursive.D}};
        for (const auto& [lhs, rhs] : blocks) {
          const double scale = std::max({lhs->max_abs(), rhs->max_abs(), 1e-300});
          worst = std::max(worst, (*lhs - *rhs).max_abs() / scale);
        }
        out.push_back(make_report("monodromy_cross_check", params, worst, 1e-10));
        return out;
      });
    }
  }
  return tasks;
}

std::vector<Task> theorem1_tasks(const RunConfig& cfg) {
  std::vector<Task> tasks;
  for (int n = cfg.n_lo; n <= cfg.n_hi; ++n)
    for (int s = 0; s < cfg.samples; ++s)
      tasks.push_back([n, s, seed = cfg.seed] {
        const Complex u = sample_spectral_u(mix_seed(seed, std::uint64_t(n), std::uint64_t(s), 0x17));
        auto out = monodromy_susy_commutation(n, u);
        for (auto& r : out) {
          r.params["sample"] = s;
          r.params["seed"] = seed;
        }
        return out;
      });
  return tasks;
}

std::vector<Task> deltas_tasks(const RunConfig& cfg) {
  std::vector<Task> tasks;
  for (int n = cfg.n_lo; n <= cfg.n_hi; ++n)
    for (int s = 0; s < cfg.samples; ++s)
      tasks.push_back([n, s, seed = cfg.seed] {
        const Complex u = sample_spectral_u(mix_seed(seed, std::uint64_t(n), std::uint64_t(s), 0x2b));
        auto eig = pseudovacuum_deltas(n, u);
        eig.report.params["sample"] = s;
        eig.report.params["seed"] = seed;
        return std::vector<CheckReport>{std::move(eig.report)};
      });
  return tasks;
}

std::vector<Task> transfer_tasks(const RunConfig& cfg) {
  std::vector<Task> tasks;
  for (int n = cfg.n_lo; n <= cfg.n_hi; ++n) {
    tasks.push_back([n] {
      std::vector<CheckReport> out;
      const LinOp t0 = transfer(n, 0.0);
      const LinOp neg_id = Complex(-1.0) * LinOp::identity(n);
      out.push_back(make_report("transfer_at_zero", Json{{"n", n}}, (t0 - neg_id).max_abs(), 1e-12));
      out.push_back(transfer_derivative_check(n));
      return out;
    });
    for (int s = 0; s < cfg.samples; ++s) {
      tasks.push_back([n, s, seed = cfg.seed] {
        const Complex u = sample_spectral_u(mix_seed(seed, std::uint64_t(n), std::uint64_t(s), 0x3c));
        const Complex v = sample_spectral_u(mix_seed(seed, std::uint64_t(n), std::uint64_t(s), 0x3d));
        const Json params{{"n", n}, {"sample", s}, {"u", cplx_json(u)}, {"v", cplx_json(v)}, {"seed", seed}};
        std::vector<CheckReport> out;

        const LinOp tu = transfer(n, u);
        const LinOp tv = transfer(n, v);
        const double scale_uv = std::max(tu.max_abs() * tv.max_abs(), 1e-300);
        out.push_back(make_report("transfer_commutativity", params, comm_norm(tu, tv) / scale_uv, 1e-10));

        const LinOp h = hamiltonian(n);
        const double scale_h = std::max(tu.max_abs() * h.max_abs(), 1e-300);
        out.push_back(make_report("transfer_hamiltonian_commute", params, comm_norm(tu, h) / scale_h, 1e-10));

        if (n >= 2) out.push_back(transfer_susy_commutation(n, u));
        return out;
      });
    }
  }
  return tasks;
}

std::vector<Task> pairing_tasks(const RunConfig& cfg) {
  std::vector<Task> tasks;
  for (int n = cfg.n_lo; n <= cfg.n_hi; ++n) {
    tasks.push_back([n, seed = cfg.seed] {
      std::vector<CheckReport> out;
      out.push_back(q_omega_identity(n));
      // Kernel case: a single eta root.
      BetheRootSet eta_set;
      eta_set.n = n;
      eta_set.roots = {kEta};
      eta_set.contains_eta = true;
      auto kernel = susy_pairing_check(n, eta_set, mix_seed(seed, std::uint64_t(n), 0xe7a));
      for (auto& r : kernel) out.push_back(std::move(r));
      // On-shell one-root family (analytic, no solver involved).
      for (const auto& rs : m1_roots_closed_form(n)) {
        auto reports = susy_pairing_check(n, rs, mix_seed(seed, std::uint64_t(n), 0x05));
        for (auto& r : reports) out.push_back(std::move(r));
      }
      return out;
    });
    for (int s = 0; s < cfg.samples; ++s) {
      tasks.push_back([n, s, seed = cfg.seed] {
        const int m_cap = std::min(3, n - 1);
        const int m = 1 + (s % std::max(1, m_cap));
        const BetheRootSet rs = sample_offshell_roots(n, m, mix_seed(seed, std::uint64_t(n), std::uint64_t(s), 0x99));
        auto out = susy_pairing_check(n, rs, mix_seed(seed, std::uint64_t(n), std::uint64_t(s), 0x9a));
        for (auto& r : out) r.params["sample"] = s;
        return out;
      });
    }
  }
  return tasks;
}

}  // namespace

void validate(const RunConfig& cfg) {
  if (cfg.n_lo > cfg.n_hi) throw UsageError("empty n-range");
  if (cfg.n_lo < 1) throw UsageError("n must be positive");
  if (cfg.samples < 1) throw UsageError("samples must be >= 1");
}

RunConfig run_config_from_json(const Json& j) {
  RunConfig cfg;
  if (!j.is_object()) throw UsageError("config must be a JSON object");
  if (j.contains("n_range")) {
    const Json& r = j["n_range"];
    if (!r.is_array() || r.size() != 2 || !r[0].is_number_integer() || !r[1].is_number_integer())
      throw UsageError("config field 'n_range' must be [lo, hi]");
    cfg.n_lo = r[0].get<int>();
    cfg.n_hi = r[1].get<int>();
  }
  if (j.contains("samples")) cfg.samples = j["samples"].get<int>();
  if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("tol")) {
    if (!j["tol"].is_object()) throw UsageError("config field 'tol' must map check names to reals");
    for (auto it = j["tol"].begin(); it != j["tol"].end(); ++it)
      cfg.tol_overrides[it.key()] = it.value().get<double>();
  }
  if (j.contains("output_path")) cfg.output_path = j["output_path"].get<std::string>();
  return cfg;
}

const std::vector<std::string> kVerifySuites = {"susy",     "reflection", "theorem1",
                                                "deltas",   "transfer",   "pairing"};

std::vector<CheckReport> run_verify_suite(const std::string& suite, const RunConfig& cfg) {
  validate(cfg);
  if (suite == "all") {
    std::vector<CheckReport> out;
    for (const auto& s : kVerifySuites) {
      RunConfig sub = cfg;
      sub.n_lo = std::max(cfg.n_lo, (s == "susy" || s == "theorem1" || s == "pairing") ? 2 : 1);
      if (sub.n_lo > sub.n_hi) continue;
      auto reports = run_verify_suite(s, sub);
      out.insert(out.end(), std::make_move_iterator(reports.begin()),
                 std::make_move_iterator(reports.end()));
    }
    return out;
  }
  if (suite == "susy") {
    require_range(suite, cfg, 2);
    return run_tasks(susy_tasks(cfg), cfg);
  }
  if (suite == "reflection") return run_tasks(reflection_tasks(cfg), cfg);
  if (suite == "theorem1") {
    require_range(suite, cfg, 2);
    return run_tasks(theorem1_tasks(cfg), cfg);
  }
  if (suite == "deltas") return run_tasks(deltas_tasks(cfg), cfg);
  if (suite == "transfer") return run_tasks(transfer_tasks(cfg), cfg);
  if (suite == "pairing") {
    require_range(suite, cfg, 2);
    return run_tasks(pairing_tasks(cfg), cfg);
  }
  throw UsageError("unknown suite '" + suite + "'");
}

std::vector<CheckReport> run_vacuum(const RunConfig& cfg) {
  validate(cfg);
  std::vector<Task> tasks;
  for (int n = cfg.n_lo; n <= cfg.n_hi; ++n)
    tasks.push_back([n, &cfg] {
      auto singlet = vacuum_singlet(n, tol_for(cfg, "vacuum_energy", 1e-10));
      return std::vector<CheckReport>{std::move(singlet.report)};
    });
  return run_tasks(std::move(tasks), cfg);
}

std::vector<CheckReport> run_spectrum(const RunConfig& cfg) {
  validate(cfg);
  if (cfg.n_lo < 2) throw UsageError("spectrum requires n >= 2");
  std::vector<Task> tasks;
  for (int n = cfg.n_lo; n <= cfg.n_hi; ++n)
    tasks.push_back([n, &cfg] {
      std::vector<CheckReport> out;
      out.push_back(dims(n).report);
      out.push_back(spectrum_decomposition(n, tol_for(cfg, "spectrum_pairing", 1e-9)).report);
      return out;
    });
  return run_tasks(std::move(tasks), cfg);
}

BetheRootSet sample_offshell_roots(int n, int m, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> re(-1.5, 1.5);
  std::uniform_real_distribution<double> im(-std::numbers::pi, std::numbers::pi);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<Complex> roots(static_cast<std::size_t>(m));
    for (auto& r : roots) r = Complex(re(gen), im(gen));
    BetheRootSet rs = canonical_roots(n, std::move(roots));
    if (!root_set_violation(rs)) return rs;
  }
  throw std::runtime_error("failed to sample an admissible off-shell root set");
}

}  // namespace susyx
