#include <doctest.h>

#include <random>

#include "sourcecount/errors.hpp"
#include "sourcecount/spectra.hpp"
#include "spiked_oracle.hpp"
#include "test_helpers.hpp"

using namespace sourcecount;
using namespace sourcecount::testing;

namespace {

SnapshotBlock block_from(std::initializer_list<std::initializer_list<cdouble>> columns) {
  const int n = static_cast<int>(columns.size());
  const int p = static_cast<int>(columns.begin()->size());
  SnapshotBlock b{SnapshotMatrix(p, n)};
  int t = 0;
  for (const auto &col : columns) {
    int i = 0;
    for (cdouble v : col) {
      b.data(i++, t) = v;
    }
    ++t;
  }
  return b;
}

HermitianMatrix diag(std::initializer_list<double> d) {
  RVector v(static_cast<Eigen::Index>(d.size()));
  int i = 0;
  for (double x : d) {
    v[i++] = x;
  }
  return HermitianMatrix::from_trusted(v.cast<cdouble>().asDiagonal());
}

void check_eigensystem(const HermitianMatrix &m, const EigenSystem &e) {
  const int p = m.dim();
  const double fro = m.frobenius_norm();
  for (int i = 0; i < p; ++i) {
    CHECK((m.matrix() * e.vectors.col(i) - e.values[i] * e.vectors.col(i)).norm() <=
          1e-8 * fro);
    if (i > 0) {
      CHECK(e.values[i - 1] >= e.values[i]);
    }
  }
  const CMatrix gram = e.vectors.adjoint() * e.vectors;
  CHECK((gram - CMatrix::Identity(p, p)).cwiseAbs().maxCoeff() <= 1e-10);
  const CMatrix recon = e.vectors * e.values.cast<cdouble>().asDiagonal() * e.vectors.adjoint();
  CHECK((m.matrix() - recon).norm() <= 1e-8 * fro);
  CHECK(e.values.sum() == doctest::Approx(m.trace()).epsilon(1e-9));
}

} // namespace

TEST_CASE("sample_covariance examples") {
  const HermitianMatrix one = sample_covariance(block_from({{1.0, cdouble(0, 1)}}));
  CMatrix expected(2, 2);
  expected << 1.0, cdouble(0, -1), cdouble(0, 1), 1.0;
  CHECK((one.matrix() - expected).norm() < 1e-15);

  const HermitianMatrix two = sample_covariance(block_from({{1.0, 0.0}, {0.0, 1.0}}));
  CHECK((two.matrix() - 0.5 * CMatrix::Identity(2, 2)).norm() < 1e-15);
}

TEST_CASE("sample_covariance matches X X^H / N and its trace identity") {
  std::mt19937_64 eng(21);
  for (int p : {2, 5, 10}) {
    for (int n : {1, 3, 257}) {
      const CMatrix x = random_complex(p, n, eng);
      SnapshotBlock b{SnapshotMatrix(x)};
      const HermitianMatrix r = sample_covariance(b);
      const CMatrix ref = x * x.adjoint() / static_cast<double>(n);
      CHECK((r.matrix() - ref).norm() <= 1e-12 * ref.norm());
      CHECK(r.trace() == doctest::Approx(x.squaredNorm() / n).epsilon(1e-13));
      CHECK((r.matrix() - r.matrix().adjoint()).norm() == 0.0);
    }
  }
}

TEST_CASE("eig_hermitian examples") {
  const EigenSystem i3 = eig_hermitian(diag({1, 1, 1}));
  CHECK(i3.values[0] == doctest::Approx(1.0));
  CHECK(i3.values[2] == doctest::Approx(1.0));

  const EigenSystem d = eig_hermitian(diag({1, 3}));
  CHECK(d.values[0] == doctest::Approx(3.0));
  CHECK(d.values[1] == doctest::Approx(1.0));
  CHECK(std::abs(d.vectors(1, 0)) == doctest::Approx(1.0));

  CMatrix m(2, 2);
  m << 2, 1, 1, 2;
  const EigenSystem e = eig_hermitian(HermitianMatrix(m));
  CHECK(e.values[0] == doctest::Approx(3.0));
  CHECK(e.values[1] == doctest::Approx(1.0));
  // Eigenvectors are defined up to a phase.
  CHECK(std::abs(e.vectors.col(0).dot(CVector::Constant(2, 1.0 / std::sqrt(2.0)))) ==
        doctest::Approx(1.0));
  CVector minus(2);
  minus << 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0);
  CHECK(std::abs(e.vectors.col(1).dot(minus)) == doctest::Approx(1.0));
}

TEST_CASE("eig_hermitian invariants on random matrices") {
  std::mt19937_64 eng(22);
  for (int trial = 0; trial < 100; ++trial) {
    const int p = 2 + trial % 9;
    const HermitianMatrix m = trial % 2 ? random_hermitian(p, eng) : random_psd(p, eng);
    check_eigensystem(m, eig_hermitian(m));
  }
  // Degenerate spectrum: any orthonormal basis is fine.
  check_eigensystem(diag({2, 2, 2, 1}), eig_hermitian(diag({2, 2, 2, 1})));
}

TEST_CASE("project_truncated_spectrum examples") {
  const SpikedApproximation a = project_truncated_spectrum(diag({5, 5, 5, 5}), 0, 1e-12);
  CHECK(a.sigma2 == doctest::Approx(5.0));
  CHECK(a.lowrank.frobenius_norm() == 0.0);

  const SpikedApproximation b = project_truncated_spectrum(diag({3, 1, 1}), 1, 1e-12);
  CHECK(b.sigma2 == doctest::Approx(1.0));
  CHECK((b.lowrank.matrix() - diag({2, 0, 0}).matrix()).norm() < 1e-12);

  CHECK_THROWS_AS(project_truncated_spectrum(diag({1, 1}), 2, 1e-12), ConfigError);
  CHECK_THROWS_AS(project_truncated_spectrum(diag({1, 1}), -1, 1e-12), ConfigError);
}

TEST_CASE("project_truncated_spectrum applies the noise floor") {
  // Rank-1 PSD matrix: trailing eigenvalues are zero.
  CVector v = CVector::Constant(3, 1.0);
  const HermitianMatrix m = HermitianMatrix::from_trusted(v * v.adjoint());
  const SpikedApproximation s = project_truncated_spectrum(m, 1, 0.25);
  CHECK(s.sigma2 == 0.25);
  const EigenSystem e = eig_hermitian(s.lowrank);
  CHECK(e.values[0] == doctest::Approx(3.0 - 0.25));
  CHECK(std::abs(e.values[1]) < 1e-12);
}

TEST_CASE("project_truncated_spectrum output structure") {
  std::mt19937_64 eng(23);
  for (int trial = 0; trial < 60; ++trial) {
    const int p = 3 + trial % 6;
    const int q = trial % p;
    const HermitianMatrix m = random_psd(p, eng);
    const SpikedApproximation s = project_truncated_spectrum(m, q, 1e-12);
    const EigenSystem e = eig_hermitian(s.lowrank);
    int rank = 0;
    for (int i = 0; i < p; ++i) {
      CHECK(e.values[i] >= -1e-12);
      rank += e.values[i] > 1e-10;
    }
    CHECK(rank <= q);
    CHECK(s.sigma2 > 0.0);
  }
}

TEST_CASE("random Hermitian q=2: randomized optimality oracle") {
  std::mt19937_64 eng(24);
  const HermitianMatrix m = random_psd(6, eng);
  const SpikedApproximation s = project_truncated_spectrum(m, 2, 1e-12);
  const double err = (m.matrix() - s.lowrank.matrix() - s.sigma2 * CMatrix::Identity(6, 6))
                         .squaredNorm();
  const double best = best_family_error(m, 2, 10000, eng);
  CHECK(best >= err - 1e-9);
}
