#include <doctest.h>

#include <cmath>
#include <cstring>
#include <sstream>

#include "sourcecount/errors.hpp"
#include "sourcecount/presets.hpp"
#include "sourcecount/signal_gen.hpp"
#include "sourcecount/snapshot_io.hpp"
#include "sourcecount/spectra.hpp"

using namespace sourcecount;

namespace {

ScenarioConfig single_source(SourceDistribution dist) {
  ScenarioConfig cfg;
  cfg.p = 2;
  cfg.sources = {{0.0, 1.0}};
  cfg.noise = {1.0, {0.0, 0.0}};
  cfg.distribution = dist;
  return cfg;
}

} // namespace

TEST_CASE("steering_vector examples") {
  const CVector a0 = steering_vector(0.0, 4);
  for (int k = 0; k < 4; ++k) {
    CHECK(std::abs(a0[k] - cdouble(1.0, 0.0)) < 1e-15);
  }
  const CVector a90 = steering_vector(90.0, 2);
  CHECK(std::abs(a90[0] - cdouble(1.0, 0.0)) < 1e-15);
  CHECK(std::abs(a90[1] - cdouble(-1.0, 0.0)) < 1e-15);

  // pi * sin(5.7 deg), evaluated to 30 digits offline.
  const double phase = 0.312022196150993085178;
  const CVector a = steering_vector(5.7, 10);
  CHECK(std::abs(a[1] - std::polar(1.0, phase)) < 1e-14);
  CHECK(std::abs(a[9] - std::polar(1.0, 9 * phase)) < 1e-13);
  for (int k = 0; k < 10; ++k) {
    CHECK(std::abs(a[k]) == doctest::Approx(1.0).epsilon(1e-15));
  }
}

TEST_CASE("Gaussian sources have the configured power") {
  RngStream rng(3, 0);
  const SnapshotMatrix s = sample_sources(single_source(SourceDistribution::Gaussian), 100000, rng);
  REQUIRE(s.rows() == 1);
  REQUIRE(s.cols() == 100000);
  const double power = s.row(0).squaredNorm() / 100000.0;
  CHECK(power >= 0.98);
  CHECK(power <= 1.02);
  CHECK(std::abs(s.row(0).mean()) < 0.02);
}

TEST_CASE("Laplacian sources: unit power and Laplace kurtosis") {
  RngStream rng(4, 0);
  const int n = 100000;
  const SnapshotMatrix s = sample_sources(single_source(SourceDistribution::Laplacian), n, rng);
  const double power = s.row(0).squaredNorm() / n;
  CHECK(power >= 0.97);
  CHECK(power <= 1.03);

  double m2 = 0.0, m4 = 0.0, mean = 0.0;
  for (int t = 0; t < n; ++t) {
    mean += s(0, t).real();
  }
  mean /= n;
  for (int t = 0; t < n; ++t) {
    const double d = s(0, t).real() - mean;
    m2 += d * d;
    m4 += d * d * d * d;
  }
  m2 /= n;
  m4 /= n;
  const double excess = m4 / (m2 * m2) - 3.0;
  // Sampling sd of the kurtosis estimate is ~0.16 at this N.
  CHECK(excess == doctest::Approx(3.0).epsilon(0.2));
}

TEST_CASE("N = 1 yields a single finite column") {
  for (auto dist : {SourceDistribution::Gaussian, SourceDistribution::Laplacian}) {
    RngStream rng(5, 1);
    const SnapshotBlock b = generate_snapshots(three_source_scenario(0.1, 0.0, dist), 1, rng);
    CHECK(b.n_snapshots() == 1);
    CHECK(b.sensors() == 10);
    CHECK(b.data.allFinite());
  }
  RngStream rng(5, 2);
  CHECK(sample_noise({1.0, {0.0, 0.0, 0.0}}, 1, rng).cols() == 1);
  CHECK_THROWS_AS(sample_noise({1.0, {0.0}}, 0, rng), ConfigError);
}

TEST_CASE("noise rows carry per-sensor power") {
  SUBCASE("white") {
    RngStream rng(6, 0);
    const SnapshotMatrix x = sample_noise({1.0, std::vector<double>(4, 0.0)}, 100000, rng);
    for (int i = 0; i < 4; ++i) {
      const double pw = x.row(i).squaredNorm() / 100000.0;
      CHECK(pw >= 0.98);
      CHECK(pw <= 1.02);
    }
  }
  SUBCASE("unidentifiable example profile") {
    RngStream rng(6, 1);
    const SnapshotMatrix x = sample_noise({10.25, {0.75, 0.25, -0.75, -0.25}}, 100000, rng);
    const double expected[] = {11.0, 10.5, 9.5, 10.0};
    for (int i = 0; i < 4; ++i) {
      // 4 sd of the power estimate is 4/sqrt(N) relative.
      CHECK(x.row(i).squaredNorm() / 100000.0 ==
            doctest::Approx(expected[i]).epsilon(4.0 / std::sqrt(100000.0)));
    }
  }
}

TEST_CASE("generate_snapshots without sources is pure noise") {
  ScenarioConfig cfg;
  cfg.p = 3;
  cfg.noise = {2.0, {0.5, 0.0, -0.5}};
  RngStream a(9, 4);
  RngStream b(9, 4);
  const SnapshotBlock block = generate_snapshots(cfg, 50, a);
  const SnapshotMatrix noise = sample_noise(cfg.noise, 50, b);
  CHECK(block.data == noise);
}

TEST_CASE("assemble_snapshots computes A s + n exactly") {
  const ScenarioConfig cfg = three_source_scenario(0.5);
  const CMatrix a = steering_matrix(cfg);
  SnapshotMatrix s(3, 5);
  SnapshotMatrix n(10, 5);
  for (int t = 0; t < 5; ++t) {
    for (int k = 0; k < 3; ++k) {
      s(k, t) = cdouble(k + 1.0, -t * 0.5);
    }
    for (int i = 0; i < 10; ++i) {
      n(i, t) = cdouble(0.1 * i, 0.01 * t);
    }
  }
  const SnapshotBlock block = assemble_snapshots(a, s, n);
  const CMatrix expected = a * CMatrix(s) + CMatrix(n);
  CHECK((CMatrix(block.data) - expected).cwiseAbs().maxCoeff() < 1e-13);

  CHECK_THROWS_AS(assemble_snapshots(a, s, SnapshotMatrix(9, 5)), ConfigError);
}

TEST_CASE("identical (seed, stream) reproduce bit-identical blocks") {
  const ScenarioConfig cfg = three_source_scenario(0.1, 0.0, SourceDistribution::Laplacian);
  RngStream a(42, 17);
  RngStream b(42, 17);
  RngStream c(42, 18);
  const SnapshotBlock x = generate_snapshots(cfg, 300, a);
  const SnapshotBlock y = generate_snapshots(cfg, 300, b);
  const SnapshotBlock z = generate_snapshots(cfg, 300, c);
  CHECK(x.data == y.data);
  CHECK(x.data != z.data);
}

TEST_CASE("sample covariance converges to the true covariance") {
  const ScenarioConfig cfg = three_source_scenario(0.0);
  const CMatrix truth = build_true_covariance(cfg).matrix();
  int within = 0;
  const int runs = 20;
  for (int run = 0; run < runs; ++run) {
    RngStream rng(100, static_cast<std::uint64_t>(run));
    const HermitianMatrix r = sample_covariance(generate_snapshots(cfg, 100000, rng));
    within += (r.matrix() - truth).norm() <= 0.05 * truth.norm();
  }
  CHECK(within >= 19);
}

TEST_CASE("snapshot dump layout and round trip") {
  RngStream rng(1, 1);
  const SnapshotBlock block = generate_snapshots(three_source_scenario(0.5), 7, rng);
  std::stringstream buf;
  write_snapshots(buf, block);
  const std::string bytes = buf.str();
  REQUIRE(bytes.size() == 16 + 10 * 7 * 16);
  CHECK(bytes.substr(0, 4) == "SCSN");
  std::uint32_t p = 0;
  std::uint64_t n = 0;
  double first_re = 0.0, second_im = 0.0;
  std::memcpy(&p, bytes.data() + 4, 4);
  std::memcpy(&n, bytes.data() + 8, 8);
  std::memcpy(&first_re, bytes.data() + 16, 8);
  std::memcpy(&second_im, bytes.data() + 16 + 24, 8);
  CHECK(p == 10);
  CHECK(n == 7);
  CHECK(first_re == block.data(0, 0).real());
  CHECK(second_im == block.data(0, 1).imag());

  const SnapshotBlock back = read_snapshots(buf);
  CHECK(back.data == block.data);

  std::stringstream bad("XXXX0000000000000000");
  CHECK_THROWS_AS(read_snapshots(bad), ConfigError);
  std::stringstream truncated(bytes.substr(0, 40));
  CHECK_THROWS_AS(read_snapshots(truncated), ConfigError);
}
