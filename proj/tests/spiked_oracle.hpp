#pragma once

// Randomized optimality oracle for the "rank-q PSD + scaled identity"
// projection. It searches the structural family
//   X = sum_{i<q} l_i c_i c_i^H + l sum_{i>=q} c_i c_i^H,   l_i >= l >= 0
// over random orthonormal frames {c_i} and levels, and never calls the
// projection under test.

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

#include "test_helpers.hpp"

namespace sourcecount::testing {

inline double family_error(const CMatrix &m, const CMatrix &frame, const RVector &levels) {
  return (m - frame * levels.asDiagonal() * frame.adjoint()).squaredNorm();
}

/// Levels for a fixed frame: Rayleigh quotients, trailing ones averaged,
/// leading ones clamped to stay >= the trailing level.
inline RVector rayleigh_levels(const CMatrix &m, const CMatrix &frame, int q) {
  const int p = static_cast<int>(m.rows());
  RVector r(p);
  for (int i = 0; i < p; ++i) {
    r[i] = (frame.col(i).adjoint() * m * frame.col(i))(0, 0).real();
  }
  const double level = std::max(0.0, r.tail(p - q).mean());
  RVector out(p);
  for (int i = 0; i < p; ++i) {
    out[i] = i < q ? std::max(r[i], level) : level;
  }
  return out;
}

/// Smallest squared Frobenius error found over `candidates` draws.
inline double best_family_error(const HermitianMatrix &hm, int q, int candidates,
                                std::mt19937_64 &eng) {
  const CMatrix &m = hm.matrix();
  const int p = hm.dim();
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m);
  const CMatrix v = es.eigenvectors().rowwise().reverse();
  const RVector lam = es.eigenvalues().reverse();
  const double top = std::max(1e-12, std::abs(lam[0]));

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> kind(0, 9);
  double best = std::numeric_limits<double>::infinity();
  for (int c = 0; c < candidates; ++c) {
    const int k = kind(eng);
    CMatrix frame;
    RVector levels(p);
    if (k < 4) {
      frame = random_unitary(p, eng);
      levels = rayleigh_levels(m, frame, q);
    } else if (k < 6) {
      frame = random_unitary(p, eng);
      const double level = top * unit(eng);
      for (int i = 0; i < p; ++i) {
        levels[i] = i < q ? level + top * unit(eng) : level;
      }
    } else {
      // Small rotation of the eigenframe, either with Rayleigh levels or
      // with jittered versions of them.
      const double eps = std::pow(10.0, -6.0 + 5.0 * unit(eng));
      Eigen::HouseholderQR<CMatrix> qr(CMatrix::Identity(p, p) + eps * random_complex(p, p, eng));
      frame = v * (qr.householderQ() * CMatrix::Identity(p, p));
      levels = rayleigh_levels(m, frame, q);
      if (k >= 8) {
        const double level = std::max(0.0, levels[p - 1] + eps * top * (unit(eng) - 0.5));
        for (int i = 0; i < p; ++i) {
          levels[i] = i < q ? std::max(level, levels[i] + eps * top * (unit(eng) - 0.5)) : level;
        }
      }
    }
    best = std::min(best, family_error(m, frame, levels));
  }
  return best;
}

} // namespace sourcecount::testing
