#pragma once

#include "susyx/linop.hpp"
#include "susyx/report.hpp"

namespace susyx {

// Predicted kernel/image dimensions of the length-lowering charge on n
// sites: dim Im = ceil((2/3)(2^{n-1}-1)), dim Ker = ceil((2/3)(2^n-1)) + 1.
Index image_dim_formula(int n);
Index kernel_dim_formula(int n);

// Exact rank over the integers by fraction-free sparse row elimination
// (GMP arithmetic). Entries must be integers up to 1e-9 rounding.
Index exact_integer_rank(const LinOp& m);

struct DimReport {
  int n = 0;
  Index kappa = 0;          // measured dim Ker
  Index iota = 0;           // measured dim Im (SVD rank)
  Index iota_exact = 0;     // integer-elimination rank
  Index kappa_formula = 0;
  Index iota_formula = 0;
  CheckReport report;       // passes iff every count matches exactly
};

DimReport dims(int n, double tol = 1e-10);

struct VacuumSinglet {
  StateVec state;            // normalized, largest component real positive
  Index intersection_dim = 0;
  int sector = 0;            // total sigma^z eigenvalue
  double energy_residual = 0.0;
  CheckReport report;
};

// The zero-energy singlet: the intersection of the kernel of the lowering
// charge with the orthogonal complement of the raising charge's image,
// cross-checked against the zero eigenvector of the Hamiltonian.
VacuumSinglet vacuum_singlet(int n, double tol = 1e-10);

struct SpectrumDecomposition {
  int n = 0;
  Index singlet_count = 0;
  Index paired_up = 0;    // partner lives one size up
  Index paired_down = 0;  // partner lives one size down
  double pairing_tolerance = 0.0;
  CheckReport report;
};

// Classifies the eigenbasis of H by the action of the lowering charge,
// rotating inside degenerate blocks so kernel vectors split off cleanly,
// and spot-checks the partner energies one size below.
SpectrumDecomposition spectrum_decomposition(int n, double tol = 1e-9);

}  // namespace susyx
