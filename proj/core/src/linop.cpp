#include "susyx/linop.hpp"

#include <bit>
#include <sstream>
#include <stdexcept>

#include <unsupported/Eigen/KroneckerProduct>

namespace susyx {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

std::string shape_str(const LinOp& a) {
  std::ostringstream os;
  os << "(" << a.n_out() << " sites <- " << a.n_in() << " sites)";
  return os.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// SpinConfig / StateVec
// ---------------------------------------------------------------------------

Index SpinConfig::dim(int n) {
  if (n < 0 || n > 30) fail("site count out of supported range [0, 30]");
  return Index(1) << n;
}

SpinConfig::SpinConfig(int n, std::uint64_t b) : n_sites(n), bits(b) {
  if (n < 1) fail("SpinConfig needs at least one site");
  if (bits >= std::uint64_t(dim(n))) fail("SpinConfig bits out of range");
}

Spin SpinConfig::site(int i) const {
  if (i < 1 || i > n_sites) throw std::out_of_range("site index out of range");
  return static_cast<Spin>((bits >> (i - 1)) & 1u);
}

SpinConfig SpinConfig::with_site(int i, Spin s) const {
  if (i < 1 || i > n_sites) throw std::out_of_range("site index out of range");
  std::uint64_t mask = std::uint64_t(1) << (i - 1);
  return SpinConfig(n_sites, s == Spin::down ? (bits | mask) : (bits & ~mask));
}

StateVec::StateVec(int n, Vector a) : n_sites(n), amps(std::move(a)) {
  if (amps.size() != SpinConfig::dim(n_sites)) fail("StateVec length must be 2^n_sites");
}

StateVec StateVec::basis(const SpinConfig& c) {
  Vector v = Vector::Zero(SpinConfig::dim(c.n_sites));
  v(Index(c.bits)) = 1.0;
  return StateVec(c.n_sites, std::move(v));
}

StateVec StateVec::all_up(int n) { return basis(SpinConfig(n, 0)); }

// ---------------------------------------------------------------------------
// LinOp
// ---------------------------------------------------------------------------

LinOp LinOp::identity(int n) {
  Index d = SpinConfig::dim(n);
  SparseMat m(d, d);
  m.setIdentity();
  return LinOp(n, n, std::move(m));
}

LinOp LinOp::zero(int n_out, int n_in) {
  return LinOp(n_out, n_in, SparseMat(SpinConfig::dim(n_out), SpinConfig::dim(n_in)));
}

LinOp LinOp::from_dense(int n_out, int n_in, DenseMat m) {
  if (m.rows() != SpinConfig::dim(n_out) || m.cols() != SpinConfig::dim(n_in))
    fail("matrix shape must be (2^n_out, 2^n_in)");
  return LinOp(n_out, n_in, std::move(m));
}

LinOp LinOp::from_triplets(int n_out, int n_in, const std::vector<Triplet>& ts) {
  SparseMat m(SpinConfig::dim(n_out), SpinConfig::dim(n_in));
  m.setFromTriplets(ts.begin(), ts.end());
  m.makeCompressed();
  return LinOp(n_out, n_in, std::move(m));
}

LinOp LinOp::from_sparse(int n_out, int n_in, SparseMat m) {
  if (m.rows() != SpinConfig::dim(n_out) || m.cols() != SpinConfig::dim(n_in))
    fail("matrix shape must be (2^n_out, 2^n_in)");
  m.makeCompressed();
  return LinOp(n_out, n_in, std::move(m));
}

Index LinOp::rows() const { return SpinConfig::dim(n_out_); }
Index LinOp::cols() const { return SpinConfig::dim(n_in_); }

DenseMat LinOp::dense() const {
  if (is_sparse()) return DenseMat(std::get<SparseMat>(storage_));
  return std::get<DenseMat>(storage_);
}

const SparseMat& LinOp::sparse() const {
  if (!is_sparse()) fail("operator is stored dense");
  return std::get<SparseMat>(storage_);
}

LinOp LinOp::to_dense() const { return LinOp(n_out_, n_in_, dense()); }

LinOp LinOp::to_sparse() const {
  if (is_sparse()) return *this;
  SparseMat m = std::get<DenseMat>(storage_).sparseView();
  m.makeCompressed();
  return LinOp(n_out_, n_in_, std::move(m));
}

Complex LinOp::coeff(Index r, Index c) const {
  if (is_sparse()) return std::get<SparseMat>(storage_).coeff(r, c);
  return std::get<DenseMat>(storage_)(r, c);
}

LinOp LinOp::adjoint() const {
  if (is_sparse()) {
    SparseMat m = std::get<SparseMat>(storage_).adjoint();
    return LinOp(n_in_, n_out_, std::move(m));
  }
  return LinOp(n_in_, n_out_, DenseMat(std::get<DenseMat>(storage_).adjoint()));
}

LinOp LinOp::transpose() const {
  if (is_sparse()) {
    SparseMat m = std::get<SparseMat>(storage_).transpose();
    return LinOp(n_in_, n_out_, std::move(m));
  }
  return LinOp(n_in_, n_out_, DenseMat(std::get<DenseMat>(storage_).transpose()));
}

double LinOp::max_abs() const {
  if (is_sparse()) {
    const SparseMat& m = std::get<SparseMat>(storage_);
    double r = 0.0;
    for (int k = 0; k < m.outerSize(); ++k)
      for (SparseMat::InnerIterator it(m, k); it; ++it) r = std::max(r, std::abs(it.value()));
    return r;
  }
  const DenseMat& m = std::get<DenseMat>(storage_);
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

Index LinOp::nonzeros() const {
  if (is_sparse()) return std::get<SparseMat>(storage_).nonZeros();
  return (std::get<DenseMat>(storage_).cwiseAbs().array() > 0.0).count();
}

Vector LinOp::apply(const Vector& v) const {
  if (v.size() != cols()) fail("vector length does not match operator domain " + shape_str(*this));
  if (is_sparse()) return std::get<SparseMat>(storage_) * v;
  return std::get<DenseMat>(storage_) * v;
}

StateVec LinOp::apply(const StateVec& v) const {
  if (v.n_sites != n_in_) fail("state has " + std::to_string(v.n_sites) + " sites, operator expects " + std::to_string(n_in_));
  return StateVec(n_out_, apply(v.amps));
}

LinOp operator*(const LinOp& a, const LinOp& b) {
  if (a.n_in_ != b.n_out_)
    fail("composition mismatch: lhs " + shape_str(a) + " applied to rhs " + shape_str(b));
  if (a.is_sparse() && b.is_sparse()) {
    SparseMat m = std::get<SparseMat>(a.storage_) * std::get<SparseMat>(b.storage_);
    return LinOp(a.n_out_, b.n_in_, std::move(m));
  }
  return LinOp(a.n_out_, b.n_in_, DenseMat(a.dense() * b.dense()));
}

LinOp operator*(Complex s, const LinOp& a) {
  if (a.is_sparse()) {
    SparseMat m = s * std::get<SparseMat>(a.storage_);
    return LinOp(a.n_out_, a.n_in_, std::move(m));
  }
  return LinOp(a.n_out_, a.n_in_, DenseMat(s * std::get<DenseMat>(a.storage_)));
}

LinOp operator+(const LinOp& a, const LinOp& b) {
  if (a.n_in_ != b.n_in_ || a.n_out_ != b.n_out_)
    fail("sum mismatch: " + shape_str(a) + " vs " + shape_str(b));
  if (a.is_sparse() && b.is_sparse()) {
    SparseMat m = std::get<SparseMat>(a.storage_) + std::get<SparseMat>(b.storage_);
    return LinOp(a.n_out_, a.n_in_, std::move(m));
  }
  return LinOp(a.n_out_, a.n_in_, DenseMat(a.dense() + b.dense()));
}

LinOp operator-(const LinOp& a, const LinOp& b) { return a + (Complex(-1.0) * b); }

// ---------------------------------------------------------------------------
// Tensor assembly
// ---------------------------------------------------------------------------

LinOp kron(const LinOp& a, const LinOp& b) {
  int n_out = a.n_out() + b.n_out();
  int n_in = a.n_in() + b.n_in();
  SpinConfig::dim(n_out);
  SpinConfig::dim(n_in);
  if (a.is_sparse() && b.is_sparse()) {
    SparseMat m = Eigen::kroneckerProduct(a.sparse(), b.sparse());
    return LinOp::from_sparse(n_out, n_in, std::move(m));
  }
  DenseMat m = Eigen::kroneckerProduct(a.dense(), b.dense());
  return LinOp::from_dense(n_out, n_in, std::move(m));
}

LinOp embed_pair(const LinOp& op, int i, int n) {
  if (op.n_in() != 2 || (op.n_out() != 1 && op.n_out() != 2))
    fail("embed_pair expects a two-site operator with one- or two-site output");
  if (i < 1 || i > n - 1)
    throw std::out_of_range("embed_pair site " + std::to_string(i) + " out of range for chain length " + std::to_string(n));

  const int n_out = (op.n_out() == 2) ? n : n - 1;
  const DenseMat local = op.dense();
  const std::uint64_t low_mask = (std::uint64_t(1) << (i - 1)) - 1;
  std::vector<Triplet> ts;
  for (std::uint64_t s = 0; s < std::uint64_t(SpinConfig::dim(n)); ++s) {
    const Index loc_in = Index(((s >> i) & 1u) << 1 | ((s >> (i - 1)) & 1u));
    for (Index r = 0; r < local.rows(); ++r) {
      const Complex v = local(r, loc_in);
      if (v == Complex(0.0)) continue;
      std::uint64_t out;
      if (op.n_out() == 2) {
        out = (s & ~(std::uint64_t(3) << (i - 1))) | (std::uint64_t(r) << (i - 1));
      } else {
        out = (s & low_mask) | (std::uint64_t(r) << (i - 1)) | ((s >> (i + 1)) << i);
      }
      ts.emplace_back(Index(out), Index(s), v);
    }
  }
  return LinOp::from_triplets(n_out, n, ts);
}

// ---------------------------------------------------------------------------
// Decompositions
// ---------------------------------------------------------------------------

RankNullspace rank_nullspace(const LinOp& m, double tol) {
  if (!(tol > 0.0)) fail("rank_nullspace requires tol > 0");
  DenseMat a = m.dense();
  Eigen::BDCSVD<DenseMat> svd(a, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cutoff = sv.size() > 0 ? tol * sv(0) : 0.0;
  Index rank = 0;
  for (Index k = 0; k < sv.size(); ++k)
    if (sv(k) > cutoff && sv(k) > 0.0) ++rank;
  RankNullspace out;
  out.rank = rank;
  const DenseMat& v = svd.matrixV();
  for (Index k = rank; k < a.cols(); ++k) out.null_basis.emplace_back(m.n_in(), v.col(k));
  return out;
}

EigenSystem eig_hermitian(const LinOp& h) {
  if (h.n_in() != h.n_out()) fail("eig_hermitian expects a square operator");
  DenseMat a = h.dense();
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  const double defect = (a - a.adjoint().eval()).cwiseAbs().maxCoeff();
  if (defect > 1e-12 * scale)
    fail("operator is not Hermitian: ||h - h^dagger|| = " + std::to_string(defect));
  Eigen::SelfAdjointEigenSolver<DenseMat> es(a);
  if (es.info() != Eigen::Success) fail("Hermitian eigensolver failed to converge");
  EigenSystem out;
  out.values = es.eigenvalues();
  out.vectors = es.eigenvectors();
  out.n_sites = h.n_in();
  return out;
}

double comm_norm(const LinOp& a, const LinOp& b) {
  if (a.n_in() != a.n_out() || b.n_in() != b.n_out() || a.n_in() != b.n_in())
    fail("comm_norm expects square operators on the same space");
  return (a * b - b * a).max_abs();
}

// ---------------------------------------------------------------------------
// Elementary operators
// ---------------------------------------------------------------------------

LinOp bra(Spin s) {
  DenseMat m = DenseMat::Zero(1, 2);
  m(0, static_cast<int>(s)) = 1.0;
  return LinOp::from_dense(0, 1, std::move(m));
}

LinOp ket(Spin s) {
  DenseMat m = DenseMat::Zero(2, 1);
  m(static_cast<int>(s), 0) = 1.0;
  return LinOp::from_dense(1, 0, std::move(m));
}

LinOp transition(Spin to, Spin from) {
  DenseMat m = DenseMat::Zero(2, 2);
  m(static_cast<int>(to), static_cast<int>(from)) = 1.0;
  return LinOp::from_dense(1, 1, std::move(m));
}

LinOp sigma_z() {
  DenseMat m = DenseMat::Zero(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = -1.0;
  return LinOp::from_dense(1, 1, std::move(m));
}

LinOp sigma_minus() { return transition(Spin::down, Spin::up); }

LinOp sigma_z_total(int n) {
  std::vector<Triplet> ts;
  const Index d = SpinConfig::dim(n);
  ts.reserve(std::size_t(d));
  for (Index s = 0; s < d; ++s) {
    const int down = std::popcount(std::uint64_t(s));
    ts.emplace_back(s, s, Complex(double(n - 2 * down)));
  }
  return LinOp::from_triplets(n, n, ts);
}

}  // namespace susyx
