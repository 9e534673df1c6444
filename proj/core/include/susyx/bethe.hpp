#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "susyx/linop.hpp"
#include "susyx/report.hpp"

namespace susyx {

// Rapidities attached to one chain. Canonical form folds imaginary parts
// into (-pi, pi] and sorts by (Re, Im); construction helpers below keep the
// stored order, which is the order creation operators are applied in.
struct BetheRootSet {
  int n = 0;
  std::vector<Complex> roots;
  // A root equal to eta (mod 2*pi*i) is normally an invariant violation;
  // augmented sets produced by the SUSY pairing carry it deliberately.
  bool contains_eta = false;

  int m() const { return int(roots.size()); }
};

// Folds the imaginary part into (-pi, pi].
Complex fold_imag(Complex z);

BetheRootSet canonical_roots(int n, std::vector<Complex> roots, bool contains_eta = false);

// Returns a description of the first violated invariant (singular
// denominator, eta collision, ...) or nullopt when the set is admissible.
std::optional<std::string> root_set_violation(const BetheRootSet& rs);

// Cleared-denominator residual of the Bethe equations, one entry per root,
// each normalized by the larger of the two cleared terms. Rejects sets that
// violate the invariants.
std::vector<double> bethe_residual(const BetheRootSet& rs);
double bethe_residual_max(const BetheRootSet& rs);

// Multiplicative form of the Bethe equations, denominator-free at this eta;
// well defined for augmented sets containing the eta root.
std::vector<double> bethe_residual_multiplicative(const BetheRootSet& rs);

// All finite one-root solutions: tanh(lambda) = sinh(eta)/(w - cosh(eta))
// over the 2n-th roots of unity w, excluding w = -1 (the eta root) and the
// values where the solution escapes to infinity.
std::vector<BetheRootSet> m1_roots_closed_form(int n);

struct SolveConfig {
  int starts = 200;  // random starts, on top of the deterministic warm starts
  std::uint64_t seed = 1;
  int max_iter = 80;
  double tol = 1e-11;
};

struct SolveResult {
  std::vector<BetheRootSet> sets;
  std::vector<std::string> annotations;  // parallel to sets; may be empty strings
  int converged_starts = 0;
  int discarded = 0;
};

// Multi-start Newton iteration on the cleared-form residual vector with an
// analytically differentiated Jacobian. Converged solutions are
// canonicalized, deduplicated at 1e-8, and filtered against the root-set
// invariants, spurious zeros of the clearing, and the multiplicative form.
SolveResult solve_bethe(int n, int m, const SolveConfig& cfg = {});

// Applies the creation operators for the listed rapidities (rightmost root
// applied first) to the all-up state.
StateVec bethe_state(int n, const BetheRootSet& rs);

// Transfer-matrix eigenvalue attached to a root set; rejects u too close to
// a pole of the expression, naming the singular factor.
Complex tau_eigenvalue(int n, Complex u, const BetheRootSet& rs);

// d(tau)/du at u = 0 by Richardson-extrapolated central differences, and
// the energy obtained from it through the transfer-derivative relation.
Complex tau_derivative_at_zero(int n, const BetheRootSet& rs, double h = 1e-4);
double energy_from_tau(int n, const BetheRootSet& rs);

// For an on-shell set: t(u) state = tau(u) state at n_samples random u, and
// H state = E state with E extracted from tau'(0). Component residuals are
// scaled by their own tolerances, so the combined report passes at 1.
CheckReport onshell_check(int n, const BetheRootSet& rs, int n_samples, std::uint64_t seed);

// Q Omega^{(n)} = (-1)^n B^{(n-1)}(eta) Omega^{(n-1)}, entrywise.
CheckReport q_omega_identity(int n, double tol = 1e-12);

// The SUSY pairing bundle for a root set: image relation under the charge
// (or the kernel case when an eta root is present), augmented Bethe
// equations one size below when on-shell, the tau relation at 5 sampled u,
// and the energy match when on-shell.
std::vector<CheckReport> susy_pairing_check(int n, const BetheRootSet& rs, std::uint64_t seed);

// Root-set files: a JSON array of {"n": int, "m": int, "roots": [[re, im], ...]}
// objects (a single object is accepted on read). Complex numbers are always
// [re, im] pairs.
void write_root_sets(std::ostream& os, const std::vector<BetheRootSet>& sets,
                     const std::vector<std::string>* annotations = nullptr);
std::vector<BetheRootSet> read_root_sets(std::istream& is);

}  // namespace susyx
