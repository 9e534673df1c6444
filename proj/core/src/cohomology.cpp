#include "susyx/cohomology.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "susyx/susy.hpp"

namespace susyx {

namespace {

Index ceil_two_thirds(Index k) { return (2 * k + 2) / 3; }

LinOp lowering_charge(int n) { return n >= 2 ? susy_lower(n) : LinOp::zero(0, 1); }

// Sparse integer row, columns sorted ascending.
using IntRow = std::vector<std::pair<Index, mpz_class>>;

void normalize_row(IntRow& row) {
  mpz_class g = 0;
  for (const auto& [c, v] : row) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
  if (g > 1)
    for (auto& [c, v] : row) v /= g;
}

// r1 <- s1 * r1 + s2 * r2, dropping the leading column (known to cancel).
IntRow combine_rows(const IntRow& r1, const mpz_class& s1, const IntRow& r2, const mpz_class& s2) {
  IntRow out;
  out.reserve(r1.size() + r2.size());
  std::size_t i = 0, j = 0;
  while (i < r1.size() || j < r2.size()) {
    if (j == r2.size() || (i < r1.size() && r1[i].first < r2[j].first)) {
      out.emplace_back(r1[i].first, s1 * r1[i].second);
      ++i;
    } else if (i == r1.size() || r2[j].first < r1[i].first) {
      out.emplace_back(r2[j].first, s2 * r2[j].second);
      ++j;
    } else {
      mpz_class v = s1 * r1[i].second + s2 * r2[j].second;
      if (v != 0) out.emplace_back(r1[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  normalize_row(out);
  return out;
}

}  // namespace

Index image_dim_formula(int n) { return ceil_two_thirds((Index(1) << (n - 1)) - 1); }
Index kernel_dim_formula(int n) { return ceil_two_thirds((Index(1) << n) - 1) + 1; }

Index exact_integer_rank(const LinOp& m) {
  const DenseMat a = m.dense();
  std::vector<IntRow> rows;
  rows.reserve(std::size_t(a.rows()));
  for (Index r = 0; r < a.rows(); ++r) {
    IntRow row;
    for (Index c = 0; c < a.cols(); ++c) {
      const Complex z = a(r, c);
      const double rounded = std::round(z.real());
      if (std::abs(z.imag()) > 1e-9 || std::abs(z.real() - rounded) > 1e-9)
        throw std::invalid_argument("exact_integer_rank requires integer entries");
      if (rounded != 0.0) row.emplace_back(c, mpz_class(long(rounded)));
    }
    if (!row.empty()) {
      normalize_row(row);
      rows.push_back(std::move(row));
    }
  }

  Index rank = 0;
  std::size_t n_pivots = 0;
  while (n_pivots < rows.size()) {
    // Pivot: smallest leading column, then fewest entries.
    std::size_t best = n_pivots;
    for (std::size_t i = n_pivots + 1; i < rows.size(); ++i) {
      if (rows[i][0].first < rows[best][0].first ||
          (rows[i][0].first == rows[best][0].first && rows[i].size() < rows[best].size()))
        best = i;
    }
    std::swap(rows[n_pivots], rows[best]);
    const IntRow& pivot = rows[n_pivots];
    const Index lead = pivot[0].first;
    ++rank;

    std::vector<IntRow> survivors;
    survivors.reserve(rows.size() - n_pivots - 1);
    for (std::size_t i = n_pivots + 1; i < rows.size(); ++i) {
      if (rows[i][0].first != lead) {
        survivors.push_back(std::move(rows[i]));
        continue;
      }
      IntRow combined = combine_rows(rows[i], pivot[0].second, pivot, -rows[i][0].second);
      if (!combined.empty()) survivors.push_back(std::move(combined));
    }
    rows.resize(n_pivots + 1);
    for (auto& r : survivors) rows.push_back(std::move(r));
    ++n_pivots;
  }
  return rank;
}

DimReport dims(int n, double tol) {
  if (n < 2) throw std::invalid_argument("dims requires n >= 2");
  const LinOp q = susy_lower(n);
  const RankNullspace rn = rank_nullspace(q, tol);
  DimReport out;
  out.n = n;
  out.iota = rn.rank;
  out.kappa = Index(rn.null_basis.size());
  out.iota_exact = exact_integer_rank(q);
  out.iota_formula = image_dim_formula(n);
  out.kappa_formula = kernel_dim_formula(n);
  const Index mismatch = std::abs(out.iota - out.iota_formula) +
                         std::abs(out.kappa - out.kappa_formula) +
                         std::abs(out.iota_exact - out.iota_formula) +
                         std::abs((out.kappa + out.iota) - SpinConfig::dim(n));
  out.report = make_report("kernel_image_dims",
                           Json{{"n", n},
                                {"kernel_dim", out.kappa},
                                {"image_dim", out.iota},
                                {"image_dim_exact", out.iota_exact},
                                {"kernel_dim_formula", out.kappa_formula},
                                {"image_dim_formula", out.iota_formula}},
                           double(mismatch), 0.0);
  return out;
}

VacuumSinglet vacuum_singlet(int n, double tol) {
  if (n < 1) throw std::invalid_argument("vacuum_singlet requires n >= 1");
  const LinOp lower = lowering_charge(n);

  // Stack [Q^(n); Q^(n+1)^T]: its kernel is Ker Q intersected with the
  // orthogonal complement of Im Q^(n+1).
  const Index d = SpinConfig::dim(n);
  DenseMat stacked(lower.rows() + SpinConfig::dim(n + 1), d);
  stacked.topRows(lower.rows()) = lower.dense();
  stacked.bottomRows(SpinConfig::dim(n + 1)) = susy_lower(n + 1).dense().transpose();
  Eigen::BDCSVD<DenseMat> svd(stacked, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cutoff = sv.size() > 0 ? 1e-10 * sv(0) : 0.0;
  Index stacked_rank = 0;
  for (Index s = 0; s < sv.size(); ++s)
    if (sv(s) > cutoff && sv(s) > 0.0) ++stacked_rank;
  RankNullspace rn;
  rn.rank = stacked_rank;
  for (Index s = stacked_rank; s < d; ++s) rn.null_basis.emplace_back(n, svd.matrixV().col(s));

  VacuumSinglet out;
  out.intersection_dim = Index(rn.null_basis.size());
  Json params{{"n", n}, {"intersection_dim", out.intersection_dim}};

  if (out.intersection_dim != 1) {
    out.state = StateVec::all_up(n);
    out.report = make_report("vacuum_singlet", std::move(params), 2.0, 1.0);
    return out;
  }

  Vector omega = rn.null_basis[0].amps;
  Index peak = 0;
  omega.cwiseAbs().maxCoeff(&peak);
  omega *= std::abs(omega[peak]) / omega[peak];  // deterministic phase
  omega /= omega.norm();
  out.state = StateVec(n, omega);

  const LinOp h = hamiltonian(n);
  out.energy_residual = h.apply(omega).cwiseAbs().maxCoeff();

  const Vector zv = sigma_z_total(n).apply(omega);
  const double sector_value = (omega.adjoint() * zv).value().real();
  out.sector = int(std::lround(sector_value));
  const double sector_residual = (zv - Complex(double(out.sector)) * omega).cwiseAbs().maxCoeff();

  // Cross-extraction: the zero eigenvector of H.
  const EigenSystem es = eig_hermitian(h);
  Index zero_idx = 0;
  for (Index k = 0; k < es.values.size(); ++k)
    if (std::abs(es.values(k)) < std::abs(es.values(zero_idx))) zero_idx = k;
  const double overlap = std::abs((es.vectors.col(zero_idx).adjoint() * omega).value());
  const double overlap_defect = 1.0 - overlap;

  params["sector"] = out.sector;
  params["sector_matches_n_mod_2"] = (out.sector == n % 2);
  params["energy_residual"] = out.energy_residual;
  params["sector_residual"] = sector_residual;
  params["spectral_overlap_defect"] = overlap_defect;
  const double combined = std::max({out.energy_residual / tol, sector_residual / tol,
                                    overlap_defect / 1e-10});
  out.report = make_report("vacuum_singlet", std::move(params), combined, 1.0);
  return out;
}

SpectrumDecomposition spectrum_decomposition(int n, double tol) {
  if (n < 2) throw std::invalid_argument("spectrum_decomposition requires n >= 2");
  const LinOp h = hamiltonian(n);
  const EigenSystem es = eig_hermitian(h);
  const LinOp q = susy_lower(n);
  const LinOp h_below = hamiltonian(n - 1);
  const Index d = SpinConfig::dim(n);

  SpectrumDecomposition out;
  out.n = n;
  out.pairing_tolerance = tol;

  double worst_pair_residual = 0.0;
  int pairs_checked = 0;

  Index k = 0;
  while (k < d) {
    // Degenerate block: classification is by eigenvectors, never by
    // eigenvalue multiplicity.
    Index end = k + 1;
    while (end < d && es.values(end) - es.values(end - 1) < 1e-8) ++end;
    const Index g = end - k;
    const DenseMat block = es.vectors.middleCols(k, g);
    const DenseMat images = q.dense() * block;
    Eigen::BDCSVD<DenseMat> svd(images, Eigen::ComputeFullU);
    const auto& sv = svd.singularValues();
    const double cutoff = (sv.size() > 0 && sv(0) > 0.0) ? 1e-10 * std::max(sv(0), 1.0) : 1.0;
    Index block_rank = 0;
    for (Index s = 0; s < sv.size(); ++s)
      if (sv(s) > cutoff) ++block_rank;

    const double energy = es.values(k);
    if (std::abs(energy) < 1e-8) {
      out.singlet_count += g - block_rank;
      out.paired_down += block_rank;
    } else {
      out.paired_down += block_rank;
      out.paired_up += g - block_rank;
    }

    for (Index s = 0; s < block_rank && pairs_checked < 5; ++s, ++pairs_checked) {
      Vector w = svd.matrixU().col(s);  // normalized image direction
      const Vector defect = h_below.apply(w) - Complex(energy) * w;
      worst_pair_residual = std::max(worst_pair_residual, defect.cwiseAbs().maxCoeff());
    }
    k = end;
  }

  const Index expect_up = kernel_dim_formula(n) - 1;
  const Index expect_down = image_dim_formula(n);
  const Index mismatch = std::abs(out.singlet_count - 1) + std::abs(out.paired_up - expect_up) +
                         std::abs(out.paired_down - expect_down);
  Json params{{"n", n},
              {"singlet_count", out.singlet_count},
              {"paired_up", out.paired_up},
              {"paired_down", out.paired_down},
              {"paired_up_formula", expect_up},
              {"paired_down_formula", expect_down},
              {"pair_energy_residual", worst_pair_residual},
              {"pairs_checked", pairs_checked}};
  const double combined = std::max(double(mismatch) * 2.0, worst_pair_residual / tol);
  out.report = make_report("spectrum_decomposition", std::move(params), combined, 1.0);
  return out;
}

}  // namespace susyx
