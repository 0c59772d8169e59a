#pragma once

#include "sourcecount/model.hpp"
#include "sourcecount/rng.hpp"
#include "sourcecount/types.hpp"

namespace sourcecount {

/// p x N block of array output; column t is x(t) = A s(t) + n(t).
struct SnapshotBlock {
  SnapshotMatrix data;

  int sensors() const { return static_cast<int>(data.rows()); }
  int n_snapshots() const { return static_cast<int>(data.cols()); }
};

/// Half-wavelength ULA response: element k (0-based) is exp(i pi k sin(theta)).
CVector steering_vector(double doa_deg, int p);

/// p x q matrix whose columns are the steering vectors of cfg.sources.
CMatrix steering_matrix(const ScenarioConfig &cfg);

/// q x N source samples with E|s_k|^2 = sources[k].power.
///
/// Gaussian: circular CN(0, power). Laplacian: independent real and
/// imaginary parts, each Laplace(0, alpha) with alpha = sqrt(power)/2.
SnapshotMatrix sample_sources(const ScenarioConfig &cfg, int n, RngStream &rng);

/// p x N noise; row i is i.i.d. CN(0, sigma2 + w[i]).
SnapshotMatrix sample_noise(const NoiseProfile &noise, int n, RngStream &rng);

/// data = steering * sources + noise. Shapes must agree.
SnapshotBlock assemble_snapshots(const CMatrix &steering,
                                 const SnapshotMatrix &sources,
                                 const SnapshotMatrix &noise);

/// Draws sources then noise from `rng` and assembles the block.
SnapshotBlock generate_snapshots(const ScenarioConfig &cfg, int n, RngStream &rng);

} // namespace sourcecount
