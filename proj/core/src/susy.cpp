#include "susyx/susy.hpp"

#include <stdexcept>

namespace susyx {

LinOp pair_annihilator() {
  // v+ (x) v+  ->  v-, all other basis states -> 0
  DenseMat m = DenseMat::Zero(2, 4);
  m(1, 0) = 1.0;
  return LinOp::from_dense(1, 2, std::move(m));
}

LinOp pair_creator() { return pair_annihilator().adjoint(); }

LinOp susy_lower(int n) {
  if (n < 2) throw std::invalid_argument("susy_lower requires n >= 2");
  const LinOp q = pair_annihilator();
  LinOp sum = embed_pair(q, 1, n);
  for (int i = 2; i <= n - 1; ++i) {
    const Complex sign = (i % 2 == 1) ? 1.0 : -1.0;
    sum = sum + sign * embed_pair(q, i, n);
  }
  return sum;
}

LinOp susy_raise(int n) { return susy_lower(n).adjoint(); }

LinOp hamiltonian(int n) {
  if (n < 1) throw std::invalid_argument("hamiltonian requires n >= 1");
  const Index d = SpinConfig::dim(n);
  std::vector<Triplet> ts;
  // All couplings are integer multiples of 1/4, kept exact in double.
  for (Index s = 0; s < d; ++s) {
    long quarters = 3L * n - 1;  // constant shift
    for (int i = 1; i <= n - 1; ++i) {
      const int lo = int((s >> (i - 1)) & 1);
      const int hi = int((s >> i) & 1);
      quarters += (lo == hi) ? 1 : -1;  // +(1/4) sigma^z sigma^z
      if (lo != hi) {
        // -(1/2)(sigma^x sigma^x + sigma^y sigma^y) swaps the pair
        const Index partner = s ^ (Index(3) << (i - 1));
        ts.emplace_back(partner, s, Complex(-1.0));
      }
    }
    const int sz_first = (s & 1) ? -1 : 1;
    const int sz_last = ((s >> (n - 1)) & 1) ? -1 : 1;
    quarters -= sz_first + sz_last;  // boundary fields
    if (quarters != 0) ts.emplace_back(s, s, Complex(double(quarters) / 4.0));
  }
  return LinOp::from_triplets(n, n, ts);
}

std::vector<CheckReport> susy_identity_suite(int n, double tol) {
  if (n < 2) throw std::invalid_argument("susy_identity_suite requires n >= 2");
  std::vector<CheckReport> out;
  const Json params = Json{{"n", n}};

  // Charges one size below/above; the length-1 charge is the empty sum.
  const LinOp q_n = susy_lower(n);
  const LinOp q_below = (n == 2) ? LinOp::zero(0, 1) : susy_lower(n - 1);
  const LinOp q_above = susy_lower(n + 1);

  out.push_back(make_report("susy_nilpotency_lower", params, (q_below * q_n).max_abs(), tol));
  out.push_back(make_report("susy_nilpotency_raise", params,
                            (q_above.adjoint() * q_n.adjoint()).max_abs(), tol));

  const LinOp h_n = hamiltonian(n);
  const LinOp decomposition = q_n.adjoint() * q_n + q_above * q_above.adjoint();
  out.push_back(make_report("hamiltonian_susy_decomposition", params,
                            (h_n - decomposition).max_abs(), tol));

  const LinOp h_below = hamiltonian(n - 1);
  out.push_back(make_report("susy_intertwine_lower", params,
                            (h_below * q_n - q_n * h_n).max_abs(), tol));
  out.push_back(make_report("susy_intertwine_raise", params,
                            (h_n * q_n.adjoint() - q_n.adjoint() * h_below).max_abs(), tol));

  const LinOp q = pair_annihilator();
  const LinOp qd = pair_creator();
  const LinOp one = LinOp::identity(1);
  out.push_back(make_report("pair_associativity", params,
                            (q * kron(q, one) - q * kron(one, q)).max_abs(), tol));
  out.push_back(make_report("pair_coassociativity", params,
                            (kron(qd, one) * qd - kron(one, qd) * qd).max_abs(), tol));
  return out;
}

}  // namespace susyx
