#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "testing.hpp"

#include "susyx/susy.hpp"

using namespace susyx;
using testing::mat_diff;
using testing::random_dense;
using testing::random_hermitian;

TEST_CASE("spin configs index sites from the least significant bit") {
  SpinConfig c(3, 0b011);
  CHECK(c.site(1) == Spin::down);
  CHECK(c.site(2) == Spin::down);
  CHECK(c.site(3) == Spin::up);
  CHECK(c.with_site(3, Spin::down).bits == 0b111);
  CHECK_THROWS_AS(SpinConfig(2, 4), std::invalid_argument);
  CHECK_THROWS_AS(c.site(4), std::out_of_range);
}

TEST_CASE("kron of identities is the identity") {
  CHECK(mat_diff(kron(LinOp::identity(1), LinOp::identity(1)), LinOp::identity(2)) == 0.0);
}

TEST_CASE("kron places the left factor on the high-order site") {
  // E^+_- on site 2, identity on site 1: flips |++> to |-+>.
  const LinOp op = kron(transition(Spin::down, Spin::up), LinOp::identity(1));
  Vector in = StateVec::basis(SpinConfig(2, 0b00)).amps;
  Vector expect = StateVec::basis(SpinConfig(2, 0b10)).amps;
  CHECK(testing::vec_diff(op.apply(in), expect) == 0.0);
}

TEST_CASE("kron with the pair annihilator, all eight basis inputs") {
  // q on sites (3,2), identity on site 1. Fires iff sites 3 and 2 are both
  // up, lands on (merged down, site 1 unchanged).
  const LinOp op = kron(pair_annihilator(), LinOp::identity(1));
  REQUIRE(op.n_in() == 3);
  REQUIRE(op.n_out() == 2);
  for (std::uint64_t s = 0; s < 8; ++s) {
    const Vector out = op.apply(StateVec::basis(SpinConfig(3, s)).amps);
    DenseMat expect = DenseMat::Zero(4, 1);
    if (((s >> 1) & 1) == 0 && ((s >> 2) & 1) == 0) expect(Index(2 | (s & 1)), 0) = 1.0;
    CHECK(testing::vec_diff(out, expect.col(0)) == 0.0);
  }
  // The spec'd case: v+ (x) v+ (x) v-  ->  v- (x) v-.
  const Vector out = op.apply(StateVec::basis(SpinConfig(3, 0b001)).amps);
  CHECK(out(3) == Complex(1.0));
}

TEST_CASE("kron is associative") {
  const LinOp a = random_dense(1, 1, 11);
  const LinOp b = random_dense(1, 2, 12);
  const LinOp c = random_dense(2, 1, 13);
  CHECK(mat_diff(kron(kron(a, b), c), kron(a, kron(b, c))) < 1e-14);
}

TEST_CASE("elementary operator split: contraction x transition") {
  // E^{e1 e2}_{e3} = E^{e1} (x) E^{e2}_{e3} = E^{e1}_{e3} (x) E^{e2}.
  for (Spin e1 : {Spin::up, Spin::down})
    for (Spin e2 : {Spin::up, Spin::down})
      for (Spin e3 : {Spin::up, Spin::down})
        CHECK(mat_diff(kron(bra(e1), transition(e3, e2)), kron(transition(e3, e1), bra(e2))) == 0.0);
}

TEST_CASE("embed_pair on a two-site chain is the operator itself") {
  CHECK(mat_diff(embed_pair(pair_annihilator(), 1, 2), pair_annihilator()) == 0.0);
}

TEST_CASE("embed_pair of the two-site identity is the identity") {
  for (int n : {2, 3, 5})
    for (int i = 1; i < n; ++i)
      CHECK(mat_diff(embed_pair(LinOp::identity(2), i, n), LinOp::identity(n)) == 0.0);
}

TEST_CASE("embed_pair merging sites 2,3 of a three-site chain, all cases") {
  const LinOp op = embed_pair(pair_annihilator(), 2, 3);
  REQUIRE(op.n_out() == 2);
  for (std::uint64_t s = 0; s < 8; ++s) {
    const Vector out = op.apply(StateVec::basis(SpinConfig(3, s)).amps);
    DenseMat expect = DenseMat::Zero(4, 1);
    // Fires iff sites 2 and 3 are up; the merged down spin sits at
    // position 2, site 1 (the low bit) is untouched.
    if (((s >> 1) & 1) == 0 && ((s >> 2) & 1) == 0) expect(Index(2 | (s & 1)), 0) = 1.0;
    CHECK(testing::vec_diff(out, expect.col(0)) == 0.0);
  }
}

TEST_CASE("embed_pair rejects out-of-range bonds") {
  CHECK_THROWS_AS(embed_pair(pair_annihilator(), 0, 3), std::out_of_range);
  CHECK_THROWS_AS(embed_pair(pair_annihilator(), 3, 3), std::out_of_range);
}

TEST_CASE("length-lowering embeddings compose with shrinking chains") {
  const LinOp q = pair_annihilator();
  const LinOp first = embed_pair(q, 2, 5);
  const LinOp second = embed_pair(q, 1, 4);
  const LinOp chained = second * first;
  CHECK(chained.n_in() == 5);
  CHECK(chained.n_out() == 3);
}

TEST_CASE("composition and application reject shape mismatches") {
  const LinOp q = pair_annihilator();
  CHECK_THROWS_AS(q * q, std::invalid_argument);
  Vector wrong(2);
  wrong.setZero();
  CHECK_THROWS_AS(q.apply(wrong), std::invalid_argument);
}

TEST_CASE("rank_nullspace on the identity and the pair annihilator") {
  const auto full = rank_nullspace(LinOp::identity(2), 1e-10);
  CHECK(full.rank == 4);
  CHECK(full.null_basis.empty());

  const auto rq = rank_nullspace(pair_annihilator(), 1e-10);
  CHECK(rq.rank == 1);
  CHECK(rq.null_basis.size() == 3);
  for (const auto& v : rq.null_basis) CHECK(v.norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("rank_nullspace on the zero matrix and rank-nullity bookkeeping") {
  const auto rz = rank_nullspace(LinOp::zero(2, 2), 1e-10);
  CHECK(rz.rank == 0);
  CHECK(rz.null_basis.size() == 4);

  for (std::uint64_t seed : {21, 22, 23}) {
    const LinOp m = random_dense(2, 3, seed);
    const auto rn = rank_nullspace(m, 1e-10);
    CHECK(rn.rank + Index(rn.null_basis.size()) == m.cols());
    for (const auto& v : rn.null_basis) CHECK(m.apply(v.amps).norm() < 1e-10);
  }
  CHECK_THROWS_AS(rank_nullspace(pair_annihilator(), 0.0), std::invalid_argument);
}

TEST_CASE("eig_hermitian handles the zero matrix and reconstructs") {
  const auto ez = eig_hermitian(LinOp::zero(1, 1));
  CHECK(ez.values(0) == 0.0);
  CHECK(ez.values(1) == 0.0);

  const LinOp h = random_hermitian(3, 31);
  const auto es = eig_hermitian(h);
  DenseMat rebuilt = es.vectors * es.values.asDiagonal().toDenseMatrix().cast<Complex>() *
                     es.vectors.adjoint();
  CHECK((h.dense() - rebuilt).cwiseAbs().maxCoeff() < 1e-10 * h.max_abs());
  for (Index k = 0; k + 1 < es.values.size(); ++k) CHECK(es.values(k) <= es.values(k + 1));
  for (Index k = 0; k < es.values.size(); ++k) {
    const Vector defect = h.apply(Vector(es.vectors.col(k))) - Complex(es.values(k)) * es.vectors.col(k);
    CHECK(defect.cwiseAbs().maxCoeff() < 1e-10 * std::max(1.0, h.max_abs()));
  }
}

TEST_CASE("eig_hermitian rejects non-Hermitian input with a diagnostic") {
  const LinOp skew = random_dense(2, 2, 41);
  CHECK_THROWS_WITH_AS(eig_hermitian(skew), doctest::Contains("not Hermitian"),
                       std::invalid_argument);
}

TEST_CASE("comm_norm basics") {
  const LinOp x = random_dense(2, 2, 51);
  CHECK(comm_norm(LinOp::identity(2), x) < 1e-15);
  const LinOp z1 = kron(LinOp::identity(1), sigma_z());
  const LinOp z2 = kron(sigma_z(), LinOp::identity(1));
  CHECK(comm_norm(z1, z2) == 0.0);
  CHECK_THROWS_AS(comm_norm(pair_annihilator(), pair_annihilator()), std::invalid_argument);
}

TEST_CASE("dense and sparse storage agree through the same interface") {
  const LinOp dense = random_dense(2, 2, 61);
  const LinOp sparse = dense.to_sparse();
  CHECK(sparse.is_sparse());
  CHECK(mat_diff(dense, sparse) == 0.0);
  CHECK(mat_diff(dense * dense, sparse * sparse) < 1e-12);
  CHECK(mat_diff(dense + sparse, Complex(2.0) * dense) < 1e-12);
  CHECK(mat_diff(kron(dense, sparse), kron(dense, dense)) < 1e-12);
  CHECK(dense.max_abs() == sparse.max_abs());
}

TEST_CASE("sigma_z_total counts up minus down spins") {
  const LinOp z = sigma_z_total(3);
  CHECK(z.coeff(0, 0) == Complex(3.0));
  CHECK(z.coeff(0b111, 0b111) == Complex(-3.0));
  CHECK(z.coeff(0b001, 0b001) == Complex(1.0));
}
