#pragma once

#include <complex>
#include <cstdint>
#include <variant>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace susyx {

using Complex = std::complex<double>;
using DenseMat = Eigen::MatrixXcd;
using SparseMat = Eigen::SparseMatrix<Complex>;
using Triplet = Eigen::Triplet<Complex>;
using Vector = Eigen::VectorXcd;
using Index = Eigen::Index;

// Two-state site. `up` is encoded as bit value 0, `down` as bit value 1.
enum class Spin : int { up = 0, down = 1 };

// Bit-encoded configuration of n_sites two-state sites. Site 1 is the least
// significant bit, so a basis index read as binary lists the sites from
// left (site n) to right (site 1).
struct SpinConfig {
  int n_sites;
  std::uint64_t bits;

  SpinConfig(int n_sites, std::uint64_t bits);

  Spin site(int i) const;  // 1-based site index
  SpinConfig with_site(int i, Spin s) const;

  static Index dim(int n);  // 2^n, rejects n outside [0, 30]
};

// Dense amplitude vector over the 2^n_sites basis of SpinConfig indices.
struct StateVec {
  int n_sites = 0;
  Vector amps;

  StateVec() = default;
  StateVec(int n_sites, Vector amps);

  // Basis state |c>.
  static StateVec basis(const SpinConfig& c);
  // All spins up.
  static StateVec all_up(int n_sites);

  Index dim() const { return amps.size(); }
  double norm() const { return amps.norm(); }
};

// Rectangular operator V^(x)n_in -> V^(x)n_out over two-state sites, stored
// either dense or sparse behind the same interface. All instances are
// immutable after construction and safe to share across threads.
class LinOp {
 public:
  LinOp() : n_in_(0), n_out_(0), storage_(DenseMat::Identity(1, 1)) {}

  static LinOp identity(int n_sites);  // sparse
  static LinOp zero(int n_out, int n_in);
  static LinOp from_dense(int n_out, int n_in, DenseMat m);
  static LinOp from_triplets(int n_out, int n_in, const std::vector<Triplet>& ts);
  static LinOp from_sparse(int n_out, int n_in, SparseMat m);

  int n_in() const { return n_in_; }
  int n_out() const { return n_out_; }
  Index rows() const;
  Index cols() const;
  bool is_sparse() const { return std::holds_alternative<SparseMat>(storage_); }

  DenseMat dense() const;  // materializes sparse storage
  const SparseMat& sparse() const;
  LinOp to_dense() const;
  LinOp to_sparse() const;

  Complex coeff(Index r, Index c) const;
  LinOp adjoint() const;
  LinOp transpose() const;

  // Max-absolute-entry norm; the norm used for all reported residuals.
  double max_abs() const;
  Index nonzeros() const;

  Vector apply(const Vector& v) const;
  StateVec apply(const StateVec& v) const;

  // Operator composition; rejects shape mismatches (lhs.n_in != rhs.n_out).
  friend LinOp operator*(const LinOp& a, const LinOp& b);
  friend LinOp operator*(Complex s, const LinOp& a);
  friend LinOp operator+(const LinOp& a, const LinOp& b);
  friend LinOp operator-(const LinOp& a, const LinOp& b);

 private:
  LinOp(int n_out, int n_in, std::variant<DenseMat, SparseMat> s)
      : n_in_(n_in), n_out_(n_out), storage_(std::move(s)) {}

  int n_in_;
  int n_out_;
  std::variant<DenseMat, SparseMat> storage_;
};

// Tensor product. Factor `a` occupies the high-order sites, so kron(a, b)
// acts with `a` on the leftmost slots of the V_n (x) ... (x) V_1 layout.
LinOp kron(const LinOp& a, const LinOp& b);

// Embeds a two-site operator on sites (i, i+1) of an n-site chain, identity
// elsewhere; 1 <= i <= n-1. Within `op`, local bit 0 is site i and local
// bit 1 is site i+1. If op maps two sites to one, the merged site sits at
// position i of the shortened chain and the remaining sites keep their
// relative order.
LinOp embed_pair(const LinOp& op, int i, int n);

struct RankNullspace {
  Index rank = 0;
  std::vector<StateVec> null_basis;  // orthonormal, spans Ker(m)
};

// SVD rank with relative threshold tol * sigma_max plus an orthonormal
// null-space basis of the domain.
RankNullspace rank_nullspace(const LinOp& m, double tol);

struct EigenSystem {
  Eigen::VectorXd values;  // ascending
  DenseMat vectors;        // orthonormal columns
  int n_sites = 0;

  StateVec state(Index k) const { return StateVec(n_sites, vectors.col(k)); }
};

// Dense Hermitian eigendecomposition; rejects operators with
// ||h - h^dagger|| beyond 1e-12 relative, reporting the defect norm.
EigenSystem eig_hermitian(const LinOp& h);

// ||ab - ba|| in the max-absolute-entry norm; rejects shape mismatches.
double comm_norm(const LinOp& a, const LinOp& b);

// Elementary one-site operators (dense).
LinOp bra(Spin s);                       // <s| : V -> C
LinOp ket(Spin s);                       // |s> : C -> V
LinOp transition(Spin to, Spin from);    // |to><from|
LinOp sigma_z();                         // diag(+1, -1) in the (up, down) basis
LinOp sigma_minus();                     // lowers up -> down
LinOp sigma_z_total(int n);              // sum of sigma_z over all n sites (sparse)

}  // namespace susyx
