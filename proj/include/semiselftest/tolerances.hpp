#pragma once

namespace semiselftest {

/// Numerical tolerances threaded through every operation. Defaults are sized
/// for double precision at dimensions up to a few dozen; override per call
/// when looser thresholds are needed (e.g. certifying noisy experimental data).
struct Tolerances {
  double herm = 1e-9;   ///< max-abs deviation from M = M^dagger
  double psd = 1e-9;    ///< most negative eigenvalue still treated as rounding noise
  double eig = 1e-8;    ///< residual for eigendecompositions and reconstruction checks
  double rank = 1e-10;  ///< eigenvalues at or below this count as zero (rank decisions)
  double norm = 1e-9;   ///< deviation from unit norm / unit sum
  double cert = 1e-8;   ///< pass/fail threshold for certification and structure matching
};

}  // namespace semiselftest
