#pragma once

#include <vector>

#include "susyx/linop.hpp"
#include "susyx/report.hpp"

namespace susyx {

// Local supercharge: merges two adjacent up spins into one down spin
// (2 sites -> 1 site). Its adjoint splits a down spin into two up spins.
LinOp pair_annihilator();
LinOp pair_creator();

// Length-lowering SUSY charge on an n-site chain (n >= 2): the alternating
// sum over bonds of the embedded local supercharge. Maps n sites to n-1.
LinOp susy_lower(int n);
// Its adjoint (n-1 sites -> n sites); real matrix, equal to the transpose.
LinOp susy_raise(int n);

// Open-chain Hamiltonian with boundary fields and constant shift; real
// symmetric with entries in quarter-integer steps, assembled exactly.
LinOp hamiltonian(int n);

// Residual checks for the SUSY algebra on an n-site chain (n >= 2):
// nilpotency of both charges, the Hamiltonian decomposition
// H = Q^dag Q + Q Q^dag, the intertwining relations, and associativity /
// coassociativity of the local supercharge.
std::vector<CheckReport> susy_identity_suite(int n, double tol = 1e-12);

}  // namespace susyx
