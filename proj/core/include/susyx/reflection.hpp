#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "susyx/linop.hpp"
#include "susyx/report.hpp"

namespace susyx {

// Fixed anisotropy point 2*pi*i/3, used throughout the library. The weight
// functions stay meromorphic in u; only eta is pinned.
extern const Complex kEta;

// Vertex weights at spectral parameter u.
struct Weights {
  Complex u;
  Complex a, b, c, d;
};

Weights weights(Complex u);

// Residuals of a + b + d and a^2 + b^2 - c^2 + a*b, which vanish
// identically at this eta.
std::pair<double, double> weight_identity_residuals(const Weights& w);

LinOp r_matrix(Complex u);  // two-site vertex operator
LinOp k_minus(Complex u);   // boundary matrix diag(d(u), -a(u))
LinOp k_plus(Complex u);    // k_minus(u + eta)

// Auxiliary-space blocks of the double-row monodromy matrix on n sites.
// B lowers the chain magnetization by one (the creation operator of the
// Bethe ansatz), C raises it; A and D are the diagonal blocks.
struct MonodromyBlocks {
  int n = 0;
  Complex u;
  LinOp A, B, C, D;
};

// Direct contraction: sweeps the ordered R-factors and the boundary matrix
// over (auxiliary x chain) basis vectors, column by column, then slices the
// auxiliary index. No use of the size recursion.
MonodromyBlocks monodromy_direct(int n, Complex u);

// Size recursion: builds blocks on k+1 sites from blocks on k sites by
// tensoring one-site elementary operators onto the new leftmost site.
// Base case n = 1 is taken from the direct construction.
MonodromyBlocks monodromy_recursive(int n, Complex u);

// Transfer matrix t(u) = [sinh(u) A(u) - sinh(u+2eta) D(u)] / sinh(eta).
// Satisfies [t(u), t(v)] = 0 and t(0) = -identity.
LinOp transfer(int n, Complex u);
LinOp transfer_from_blocks(const MonodromyBlocks& blocks);

// dt/du at u = 0 by Richardson-extrapolated central differences.
LinOp transfer_derivative_at_zero(int n, double h = 1e-4);

// Verifies t'(0) = (-4i/sqrt(3)) [H + (1-n)/2 I].
CheckReport transfer_derivative_check(int n, double tol = 1e-6);

Complex delta_plus_closed(int n, Complex u);
Complex delta_minus_closed(int n, Complex u);

struct PseudovacuumEigs {
  Complex delta_plus;
  Complex delta_minus;
  CheckReport report;
};

// Extracts the pseudovacuum eigenvalues of A(u) and of
// sinh(2u+eta) D(u) - sinh(eta) A(u) from the matrix action on the all-up
// state, compares them with the closed forms, and checks the size
// recursions delta+ -> a^2 delta+, delta- -> b^2 delta-.
PseudovacuumEigs pseudovacuum_deltas(int n, Complex u, double tol = 1e-10);

// The four commutation relations between the length-lowering SUSY charge
// and the monodromy blocks (n >= 2), as relative residuals.
std::vector<CheckReport> monodromy_susy_commutation(int n, Complex u, double tol = 1e-10);

// Corollary at the transfer-matrix level: Q t^{(n)}(u) = d(u)^2 t^{(n-1)}(u) Q.
CheckReport transfer_susy_commutation(int n, Complex u, double tol = 1e-10);

// Deterministic spectral-parameter sampling: uniform on
// [0.2, 1.2] x [-0.4, 0.4]i, resampled while |sinh(2u+eta)| or |sinh(u)|
// is below 1e-3.
Complex sample_spectral_u(std::uint64_t seed);

}  // namespace susyx
