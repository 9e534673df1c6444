#include "susyx/bethe.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>

#include "susyx/reflection.hpp"
#include "susyx/susy.hpp"

namespace susyx {

namespace {

constexpr double kTiny = 1e-300;
constexpr double kSingularFloor = 1e-8;
const Complex kSinhEta = std::sinh(kEta);

// First-order jet for analytic differentiation of the cleared Bethe terms.
struct Jet {
  Complex v{0.0};
  Complex d{0.0};
};

Jet operator+(Jet x, Jet y) { return {x.v + y.v, x.d + y.d}; }
Jet operator-(Jet x, Jet y) { return {x.v - y.v, x.d - y.d}; }
Jet operator*(Jet x, Jet y) { return {x.v * y.v, x.v * y.d + x.d * y.v}; }
Jet operator*(Complex c, Jet x) { return {c * x.v, c * x.d}; }
Jet operator+(Jet x, Complex c) { return {x.v + c, x.d}; }

Complex sinh_of(Complex z) { return std::sinh(z); }
Jet sinh_of(Jet z) { return {std::sinh(z.v), std::cosh(z.v) * z.d}; }

template <class S>
S pow_int(S base, int p) {
  S acc = base;
  for (int k = 1; k < p; ++k) acc = acc * base;
  return acc;
}

// Cleared-denominator terms for root j of a size-n set:
//   plus  = -sinh(2 l_j) Delta+(l_j) prod_{k!=j} sinh(l_j-l_k-eta) sinh(l_j+l_k)
//   minus =              Delta-(l_j) prod_{k!=j} sinh(l_j-l_k+eta) sinh(l_j+l_k+2 eta)
// The Bethe equation for root j is plus - minus = 0.
template <class S>
struct ClearedTerms {
  S plus, minus;
};

template <class S>
ClearedTerms<S> cleared_terms(int n, const std::vector<S>& lam, std::size_t j) {
  const Complex inv_sinh_eta = 1.0 / kSinhEta;
  const S lj = lam[j];
  const S a = inv_sinh_eta * sinh_of(lj + kEta);
  const S b = inv_sinh_eta * sinh_of(lj);
  const S delta_plus = pow_int(a, 2 * n) * (inv_sinh_eta * sinh_of(lj + (-kEta)));
  const S delta_minus = Complex(-1.0) * pow_int(b, 2 * n) * sinh_of(Complex(2.0) * lj) *
                        (inv_sinh_eta * sinh_of(lj + 2.0 * kEta));
  S plus = Complex(-1.0) * sinh_of(Complex(2.0) * lj) * delta_plus;
  S minus = delta_minus;
  for (std::size_t k = 0; k < lam.size(); ++k) {
    if (k == j) continue;
    plus = plus * sinh_of(lj - lam[k] + (-kEta)) * sinh_of(lj + lam[k]);
    minus = minus * sinh_of(lj - lam[k] + kEta) * sinh_of(lj + lam[k] + 2.0 * kEta);
  }
  return {plus, minus};
}

double cleared_residual_entry(const ClearedTerms<Complex>& t) {
  const double scale = std::max({std::abs(t.plus), std::abs(t.minus), kTiny});
  return std::abs(t.plus - t.minus) / scale;
}

struct NewtonOutcome {
  bool converged = false;
  std::vector<Complex> roots;
};

NewtonOutcome newton_solve(int n, std::vector<Complex> lam, int max_iter, double tol) {
  const int m = int(lam.size());
  Eigen::MatrixXcd jac(m, m);
  Eigen::VectorXcd g(m);
  for (int iter = 0; iter < max_iter; ++iter) {
    double res = 0.0;
    for (int j = 0; j < m; ++j) {
      const auto t = cleared_terms<Complex>(n, lam, std::size_t(j));
      g(j) = t.plus - t.minus;
      res = std::max(res, cleared_residual_entry(t));
    }
    if (!std::isfinite(res)) return {};
    if (res < tol) return {true, lam};

    for (int var = 0; var < m; ++var) {
      std::vector<Jet> jets(lam.size());
      for (int k = 0; k < m; ++k) jets[std::size_t(k)] = {lam[std::size_t(k)], k == var ? 1.0 : 0.0};
      for (int j = 0; j < m; ++j) {
        const auto t = cleared_terms<Jet>(n, jets, std::size_t(j));
        jac(j, var) = t.plus.d - t.minus.d;
      }
    }
    Eigen::VectorXcd step = jac.fullPivLu().solve(-g);
    if (!step.allFinite()) return {};
    for (int k = 0; k < m; ++k) {
      lam[std::size_t(k)] += step(k);
      if (std::abs(lam[std::size_t(k)]) > 30.0) return {};
    }
  }
  return {};
}

bool roots_match(const std::vector<Complex>& x, const std::vector<Complex>& y, double tol) {
  if (x.size() != y.size()) return false;
  for (std::size_t k = 0; k < x.size(); ++k)
    if (std::abs(x[k] - y[k]) > tol) return false;
  return true;
}

bool lex_less(const std::vector<Complex>& x, const std::vector<Complex>& y) {
  for (std::size_t k = 0; k < std::min(x.size(), y.size()); ++k) {
    if (x[k].real() != y[k].real()) return x[k].real() < y[k].real();
    if (x[k].imag() != y[k].imag()) return x[k].imag() < y[k].imag();
  }
  return x.size() < y.size();
}

bool near_eta(Complex lambda) { return std::abs(fold_imag(lambda - kEta)) < kSingularFloor; }

Json roots_json(const BetheRootSet& rs) {
  Json arr = Json::array();
  for (Complex r : rs.roots) arr.push_back(cplx_json(r));
  return arr;
}

// u samples for tau-based checks, kept away from the expression's poles.
Complex sample_u_for_roots(const BetheRootSet& rs, std::uint64_t seed) {
  for (std::uint64_t salt = 0; salt < 64; ++salt) {
    const Complex u = sample_spectral_u(mix_seed(seed, salt, 0x7a75));
    bool ok = std::abs(std::sinh(2.0 * u + kEta)) > 1e-3;
    for (Complex lam : rs.roots) {
      ok = ok && std::abs(std::sinh(u - lam)) > 1e-3;
      ok = ok && std::abs(std::sinh(u + lam + kEta)) > 1e-3;
      ok = ok && std::abs(std::sinh(u - lam - kEta)) > 1e-3;
    }
    if (ok) return u;
  }
  throw std::runtime_error("could not sample a pole-free spectral parameter");
}

}  // namespace

Complex fold_imag(Complex z) {
  double im = std::remainder(z.imag(), 2.0 * std::numbers::pi);
  if (im <= -std::numbers::pi) im += 2.0 * std::numbers::pi;
  return Complex(z.real(), im);
}

BetheRootSet canonical_roots(int n, std::vector<Complex> roots, bool contains_eta) {
  for (Complex& r : roots) r = fold_imag(r);
  std::sort(roots.begin(), roots.end(), [](Complex x, Complex y) {
    if (x.real() != y.real()) return x.real() < y.real();
    return x.imag() < y.imag();
  });
  BetheRootSet rs;
  rs.n = n;
  rs.roots = std::move(roots);
  rs.contains_eta = contains_eta;
  return rs;
}

std::optional<std::string> root_set_violation(const BetheRootSet& rs) {
  std::ostringstream os;
  if (rs.n < 1) return "chain length must be positive";
  if (rs.m() > rs.n) {
    os << "root count " << rs.m() << " exceeds chain length " << rs.n;
    return os.str();
  }
  for (int j = 0; j < rs.m(); ++j) {
    const Complex lj = rs.roots[std::size_t(j)];
    if (!rs.contains_eta && near_eta(lj)) {
      os << "root " << j << " equals eta (mod 2 pi i)";
      return os.str();
    }
    if (std::abs(std::sinh(2.0 * lj)) < kSingularFloor) {
      os << "sinh(2 lambda_" << j << ") is singular";
      return os.str();
    }
  }
  for (int j = 0; j < rs.m(); ++j) {
    for (int k = j + 1; k < rs.m(); ++k) {
      const Complex lj = rs.roots[std::size_t(j)], lk = rs.roots[std::size_t(k)];
      if (std::abs(std::sinh(lj - lk - kEta)) < kSingularFloor) {
        os << "sinh(lambda_" << j << " - lambda_" << k << " - eta) is singular";
        return os.str();
      }
      if (std::abs(std::sinh(lj - lk + kEta)) < kSingularFloor) {
        os << "sinh(lambda_" << j << " - lambda_" << k << " + eta) is singular";
        return os.str();
      }
      if (std::abs(std::sinh(lj + lk)) < kSingularFloor) {
        os << "sinh(lambda_" << j << " + lambda_" << k << ") is singular";
        return os.str();
      }
    }
  }
  return std::nullopt;
}

std::vector<double> bethe_residual(const BetheRootSet& rs) {
  if (auto why = root_set_violation(rs)) throw std::invalid_argument("invalid root set: " + *why);
  std::vector<double> out(std::size_t(rs.m()));
  for (std::size_t j = 0; j < out.size(); ++j)
    out[j] = cleared_residual_entry(cleared_terms<Complex>(rs.n, rs.roots, j));
  return out;
}

double bethe_residual_max(const BetheRootSet& rs) {
  double r = 0.0;
  for (double x : bethe_residual(rs)) r = std::max(r, x);
  return r;
}

std::vector<double> bethe_residual_multiplicative(const BetheRootSet& rs) {
  if (auto why = root_set_violation(rs)) throw std::invalid_argument("invalid root set: " + *why);
  std::vector<double> out(std::size_t(rs.m()));
  for (int j = 0; j < rs.m(); ++j) {
    const Complex lj = rs.roots[std::size_t(j)];
    // -sinh(2u) Delta+/Delta- collapses to (a/b)^{2n} at this eta, which
    // stays finite on the eta root where both Deltas vanish.
    const Complex lhs = pow_int(std::sinh(lj + kEta) / std::sinh(lj), 2 * rs.n);
    Complex rhs = 1.0;
    for (int k = 0; k < rs.m(); ++k) {
      if (k == j) continue;
      const Complex lk = rs.roots[std::size_t(k)];
      rhs *= std::sinh(lj - lk + kEta) * std::sinh(lj + lk + 2.0 * kEta) /
             (std::sinh(lj - lk - kEta) * std::sinh(lj + lk));
    }
    out[std::size_t(j)] = std::abs(lhs - rhs) / std::max({std::abs(lhs), std::abs(rhs), kTiny});
  }
  return out;
}

std::vector<BetheRootSet> m1_roots_closed_form(int n) {
  if (n < 1) throw std::invalid_argument("m1_roots_closed_form requires n >= 1");
  const Complex cosh_eta = std::cosh(kEta);
  std::vector<BetheRootSet> out;
  for (int k = 0; k < 2 * n; ++k) {
    if (k == n) continue;  // w = -1 gives the forbidden eta root
    const double angle = std::numbers::pi * double(k) / double(n);
    const Complex w = std::polar(1.0, angle);
    const Complex t = kSinhEta / (w - cosh_eta);
    if (std::abs(t - 1.0) < 1e-9 || std::abs(t + 1.0) < 1e-9) continue;  // root at infinity
    const Complex lambda = std::atanh(t);
    BetheRootSet rs = canonical_roots(n, {lambda});
    if (root_set_violation(rs)) continue;
    bool dup = false;
    for (const auto& prev : out) dup = dup || roots_match(prev.roots, rs.roots, kSingularFloor);
    if (!dup) out.push_back(std::move(rs));
  }
  std::sort(out.begin(), out.end(),
            [](const BetheRootSet& x, const BetheRootSet& y) { return lex_less(x.roots, y.roots); });
  return out;
}

SolveResult solve_bethe(int n, int m, const SolveConfig& cfg) {
  if (m < 1 || m > n) throw std::invalid_argument("solve_bethe requires 1 <= m <= n");
  if (cfg.starts < 1) throw std::invalid_argument("solve_bethe requires starts >= 1");

  std::vector<std::vector<Complex>> starts;
  // Warm starts from the one-root family and its unions.
  const auto family = m1_roots_closed_form(n);
  if (m == 1) {
    for (const auto& rs : family) starts.push_back(rs.roots);
  } else if (m == 2) {
    for (std::size_t i = 0; i < family.size(); ++i)
      for (std::size_t j = i + 1; j < family.size(); ++j)
        starts.push_back({family[i].roots[0], family[j].roots[0]});
  } else if (m == 3) {
    for (std::size_t i = 0; i < family.size(); ++i)
      for (std::size_t j = i + 1; j < family.size(); ++j)
        for (std::size_t k = j + 1; k < family.size(); ++k)
          starts.push_back({family[i].roots[0], family[j].roots[0], family[k].roots[0]});
  }
  for (int s = 0; s < cfg.starts; ++s) {
    std::mt19937_64 gen(mix_seed(cfg.seed, std::uint64_t(s), std::uint64_t(n), std::uint64_t(m)));
    std::uniform_real_distribution<double> re(-1.5, 1.5);
    std::uniform_real_distribution<double> im(-std::numbers::pi, std::numbers::pi);
    std::vector<Complex> lam(static_cast<std::size_t>(m));
    for (auto& x : lam) x = Complex(re(gen), im(gen));
    starts.push_back(std::move(lam));
  }

  std::vector<NewtonOutcome> outcomes(starts.size());
  parallel_for(starts.size(), [&](std::size_t i) {
    outcomes[i] = newton_solve(n, starts[i], cfg.max_iter, cfg.tol);
  });

  SolveResult result;
  for (const auto& oc : outcomes) {
    if (!oc.converged) continue;
    ++result.converged_starts;
    BetheRootSet rs = canonical_roots(n, oc.roots);
    if (root_set_violation(rs)) {
      ++result.discarded;
      continue;
    }
    bool spurious = false;
    double cleared_max = 0.0;
    for (std::size_t j = 0; j < rs.roots.size(); ++j) {
      const auto t = cleared_terms<Complex>(n, rs.roots, j);
      spurious = spurious || std::max(std::abs(t.plus), std::abs(t.minus)) < 1e-10;
      cleared_max = std::max(cleared_max, cleared_residual_entry(t));
    }
    double mult_max = 0.0;
    if (!spurious)
      for (double r : bethe_residual_multiplicative(rs)) mult_max = std::max(mult_max, r);
    if (spurious || cleared_max > 1e-10 || mult_max > 1e-6) {
      ++result.discarded;
      continue;
    }
    bool dup = false;
    for (const auto& prev : result.sets) dup = dup || roots_match(prev.roots, rs.roots, kSingularFloor);
    if (dup) continue;
    result.sets.push_back(std::move(rs));
  }

  std::sort(result.sets.begin(), result.sets.end(),
            [](const BetheRootSet& x, const BetheRootSet& y) { return lex_less(x.roots, y.roots); });

  // Annotate pairs related by the negation-shift map, without quotienting.
  result.annotations.assign(result.sets.size(), "");
  for (std::size_t i = 0; i < result.sets.size(); ++i) {
    std::vector<Complex> mapped;
    for (Complex r : result.sets[i].roots) mapped.push_back(fold_imag(-r - kEta));
    std::sort(mapped.begin(), mapped.end(), [](Complex x, Complex y) {
      if (x.real() != y.real()) return x.real() < y.real();
      return x.imag() < y.imag();
    });
    for (std::size_t j = 0; j < result.sets.size(); ++j) {
      if (!roots_match(mapped, result.sets[j].roots, 1e-7)) continue;
      result.annotations[i] = (i == j) ? "self-paired under root negation-shift"
                                       : "negation-shift partner of set " + std::to_string(j);
      break;
    }
  }
  return result;
}

StateVec bethe_state(int n, const BetheRootSet& rs) {
  if (rs.m() > n) throw std::invalid_argument("bethe_state requires m <= n");
  StateVec v = StateVec::all_up(n);
  for (int j = rs.m() - 1; j >= 0; --j) {
    const MonodromyBlocks blocks = monodromy_recursive(n, rs.roots[std::size_t(j)]);
    v = blocks.B.apply(v);
  }
  return v;
}

Complex tau_eigenvalue(int n, Complex u, const BetheRootSet& rs) {
  const Complex denom = std::sinh(2.0 * u + kEta);
  if (std::abs(denom) < kSingularFloor)
    throw std::invalid_argument("tau_eigenvalue: sinh(2u + eta) is singular");
  for (int j = 0; j < rs.m(); ++j) {
    const Complex lj = rs.roots[std::size_t(j)];
    if (std::abs(std::sinh(u - lj)) < kSingularFloor)
      throw std::invalid_argument("tau_eigenvalue: sinh(u - lambda_" + std::to_string(j) + ") is singular");
    if (std::abs(std::sinh(u + lj + kEta)) < kSingularFloor)
      throw std::invalid_argument("tau_eigenvalue: sinh(u + lambda_" + std::to_string(j) + " + eta) is singular");
  }
  const Complex d_u = std::sinh(u - kEta) / kSinhEta;
  Complex prod_plus = 1.0, prod_minus = 1.0;
  for (Complex lj : rs.roots) {
    const Complex base = std::sinh(u - lj) * std::sinh(u + lj + kEta);
    prod_plus *= std::sinh(u - lj - kEta) * std::sinh(u + lj) / base;
    prod_minus *= std::sinh(u - lj + kEta) * std::sinh(u + lj - kEta) / base;
  }
  return std::sinh(2.0 * u - kEta) * d_u * delta_plus_closed(n, u) / denom * prod_plus -
         d_u * delta_minus_closed(n, u) / denom * prod_minus;
}

Complex tau_derivative_at_zero(int n, const BetheRootSet& rs, double h) {
  auto central = [&](double step) {
    return (tau_eigenvalue(n, Complex(step, 0.0), rs) - tau_eigenvalue(n, Complex(-step, 0.0), rs)) /
           (2.0 * step);
  };
  return (4.0 * central(h / 2.0) - central(h)) / 3.0;
}

double energy_from_tau(int n, const BetheRootSet& rs) {
  const Complex dtau = tau_derivative_at_zero(n, rs);
  const Complex e = Complex(0.0, std::sqrt(3.0) / 4.0) * dtau - (1.0 - double(n)) / 2.0;
  return e.real();
}

CheckReport onshell_check(int n, const BetheRootSet& rs, int n_samples, std::uint64_t seed) {
  const double residual_in = bethe_residual_max(rs);
  if (residual_in >= 1e-9)
    throw std::invalid_argument("onshell_check: root set is not on-shell (residual " +
                                std::to_string(residual_in) + ")");
  const double tol_transfer = 1e-8;
  const double tol_energy = 1e-6;
  Json params{{"n", n}, {"m", rs.m()}, {"seed", seed}, {"roots", roots_json(rs)}};

  const StateVec state = bethe_state(n, rs);
  const double state_norm = state.amps.cwiseAbs().maxCoeff();
  if (state_norm < 1e-14) {
    params["state_vanished"] = true;
    return make_report("onshell_check", std::move(params), std::numeric_limits<double>::max(), 1.0);
  }

  double transfer_residual = 0.0;
  for (int s = 0; s < n_samples; ++s) {
    const Complex u = sample_u_for_roots(rs, mix_seed(seed, std::uint64_t(s), std::uint64_t(n)));
    const Complex tau = tau_eigenvalue(n, u, rs);
    const Vector defect = transfer(n, u).apply(state.amps) - tau * state.amps;
    transfer_residual = std::max(transfer_residual, defect.cwiseAbs().maxCoeff() / state_norm);
  }

  const double energy = energy_from_tau(n, rs);
  const Vector hdefect = hamiltonian(n).apply(state.amps) - Complex(energy) * state.amps;
  const double energy_residual = hdefect.cwiseAbs().maxCoeff() / state_norm;

  params["energy"] = energy;
  params["transfer_residual"] = transfer_residual;
  params["transfer_tolerance"] = tol_transfer;
  params["energy_residual"] = energy_residual;
  params["energy_tolerance"] = tol_energy;
  const double combined = std::max(transfer_residual / tol_transfer, energy_residual / tol_energy);
  return make_report("onshell_check", std::move(params), combined, 1.0);
}

CheckReport q_omega_identity(int n, double tol) {
  if (n < 2) throw std::invalid_argument("q_omega_identity requires n >= 2");
  const Vector lhs = susy_lower(n).apply(StateVec::all_up(n).amps);
  const Complex sign = (n % 2 == 0) ? 1.0 : -1.0;
  const Vector rhs =
      sign * monodromy_recursive(n - 1, kEta).B.apply(StateVec::all_up(n - 1).amps);
  return make_report("pseudovacuum_image_identity", Json{{"n", n}},
                     (lhs - rhs).cwiseAbs().maxCoeff(), tol);
}

std::vector<CheckReport> susy_pairing_check(int n, const BetheRootSet& rs, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("susy_pairing_check requires n >= 2");
  {
    BetheRootSet relaxed = rs;
    relaxed.contains_eta = true;  // eta roots handled by the kernel branch
    if (auto why = root_set_violation(relaxed))
      throw std::invalid_argument("invalid root set: " + *why);
  }
  std::vector<CheckReport> out;
  const Json base_params{{"n", n}, {"m", rs.m()}, {"seed", seed}, {"roots", roots_json(rs)}};

  const StateVec state = bethe_state(n, rs);
  const LinOp q = susy_lower(n);
  const Vector image = q.apply(state.amps);
  const double state_norm = std::max(state.amps.cwiseAbs().maxCoeff(), kTiny);

  bool has_eta_root = false;
  for (Complex lam : rs.roots) has_eta_root = has_eta_root || near_eta(lam);

  if (has_eta_root) {
    // d(lambda)^2 kills the image, so the state sits in the kernel.
    out.push_back(make_report("pairing_kernel_image", base_params,
                              image.cwiseAbs().maxCoeff() / state_norm, 1e-12));
    return out;
  }

  BetheRootSet augmented;
  augmented.n = n - 1;
  augmented.roots = rs.roots;
  augmented.roots.push_back(kEta);  // applied first, next to the pseudovacuum
  augmented.contains_eta = true;

  // Image relation under the charge, valid on- and off-shell.
  {
    Complex factor = (n % 2 == 0) ? 1.0 : -1.0;
    for (Complex lam : rs.roots) {
      const Complex d = std::sinh(lam - kEta) / kSinhEta;
      factor *= d * d;
    }
    Vector rhs;
    if (augmented.m() <= n - 1) {
      rhs = factor * bethe_state(n - 1, augmented).amps;
    } else {
      rhs = Vector::Zero(SpinConfig::dim(n - 1));  // too many lowering operators
    }
    const double lhs_norm = image.cwiseAbs().maxCoeff();
    const double rhs_norm = rhs.cwiseAbs().maxCoeff();
    double scale = std::max({lhs_norm, rhs_norm, kTiny});
    if (scale < 1e-12 * state_norm) scale = state_norm;  // both sides vanish
    out.push_back(make_report("pairing_offshell_image", base_params,
                              (image - rhs).cwiseAbs().maxCoeff() / scale, 1e-9));
  }

  const bool on_shell = rs.m() == 0 || bethe_residual_max(rs) < 1e-9;

  if (on_shell && augmented.m() <= n - 1) {
    Json params = base_params;
    const auto residuals = bethe_residual_multiplicative(augmented);
    double worst = 0.0;
    for (double r : residuals) worst = std::max(worst, r);
    params["augmented_residuals"] = residuals;
    out.push_back(make_report("pairing_augmented_bethe", std::move(params), worst, 1e-8));
  }

  {
    double worst = 0.0;
    for (int s = 0; s < 5; ++s) {
      const Complex u =
          sample_u_for_roots(augmented, mix_seed(seed, std::uint64_t(s), std::uint64_t(n), 0xc3));
      const Complex lhs = tau_eigenvalue(n, u, rs);
      const Complex d = std::sinh(u - kEta) / kSinhEta;
      const Complex rhs = d * d * tau_eigenvalue(n - 1, u, augmented);
      worst = std::max(worst, std::abs(lhs - rhs) / std::max({std::abs(lhs), std::abs(rhs), kTiny}));
    }
    out.push_back(make_report("pairing_tau_relation", base_params, worst, 1e-9));
  }

  if (on_shell) {
    const double e_big = energy_from_tau(n, rs);
    const double e_small = energy_from_tau(n - 1, augmented);
    Json params = base_params;
    params["energy_n"] = e_big;
    params["energy_below"] = e_small;
    out.push_back(make_report("pairing_energy_match", std::move(params),
                              std::abs(e_big - e_small), 1e-6));
  }
  return out;
}

void write_root_sets(std::ostream& os, const std::vector<BetheRootSet>& sets,
                     const std::vector<std::string>* annotations) {
  Json arr = Json::array();
  for (std::size_t i = 0; i < sets.size(); ++i) {
    Json obj;
    obj["n"] = sets[i].n;
    obj["m"] = sets[i].m();
    obj["roots"] = roots_json(sets[i]);
    if (sets[i].contains_eta) obj["contains_eta"] = true;
    if (annotations && i < annotations->size() && !(*annotations)[i].empty())
      obj["note"] = (*annotations)[i];
    arr.push_back(std::move(obj));
  }
  os << arr.dump(2) << "\n";
}

std::vector<BetheRootSet> read_root_sets(std::istream& is) {
  Json doc;
  try {
    doc = Json::parse(is);
  } catch (const Json::parse_error& e) {
    throw std::runtime_error(std::string("root file parse error: ") + e.what());
  }
  if (doc.is_object()) doc = Json::array({doc});
  if (!doc.is_array()) throw std::runtime_error("root file must hold an object or an array of objects");
  std::vector<BetheRootSet> out;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const Json& obj = doc[i];
    const std::string where = "root set " + std::to_string(i);
    if (!obj.is_object()) throw std::runtime_error(where + ": expected an object");
    if (!obj.contains("n") || !obj["n"].is_number_integer() || obj["n"].get<int>() < 1)
      throw std::runtime_error(where + ": field 'n' must be a positive integer");
    if (!obj.contains("roots") || !obj["roots"].is_array())
      throw std::runtime_error(where + ": field 'roots' must be an array of [re, im] pairs");
    std::vector<Complex> roots;
    for (std::size_t k = 0; k < obj["roots"].size(); ++k) {
      try {
        roots.push_back(cplx_from_json(obj["roots"][k]));
      } catch (const std::exception& e) {
        throw std::runtime_error(where + ", roots[" + std::to_string(k) + "]: " + e.what());
      }
    }
    if (obj.contains("m") &&
        (!obj["m"].is_number_integer() || obj["m"].get<int>() != int(roots.size())))
      throw std::runtime_error(where + ": field 'm' does not match the number of roots");
    const bool has_eta = obj.value("contains_eta", false);
    out.push_back(canonical_roots(obj["n"].get<int>(), std::move(roots), has_eta));
  }
  return out;
}

}  // namespace susyx
