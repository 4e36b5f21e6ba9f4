#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>

#include "semiselftest/errors.hpp"
#include "semiselftest/tolerances.hpp"

namespace semiselftest {

/// An m x m matrix of joint outcome probabilities: entries nonnegative and
/// summing to one. `clipped_count`/`max_clipped` carry diagnostics from
/// measurement simulation (tiny negative traces rounded up to zero) and are
/// not part of the value: they do not serialize and do not affect equality.
struct Correlation {
  Eigen::MatrixXd entries;
  int clipped_count = 0;
  double max_clipped = 0.0;

  Correlation() = default;
  explicit Correlation(Eigen::MatrixXd e, const Tolerances& tol = {}) : entries(std::move(e)) {
    if (entries.rows() != entries.cols() || entries.rows() < 1)
      throw InvalidCorrelation("entries must form a square matrix of size >= 1");
    if (entries.minCoeff() < 0.0)
      throw InvalidCorrelation("entries must be nonnegative");
    if (std::abs(entries.sum() - 1.0) > tol.norm)
      throw InvalidCorrelation("entries must sum to 1 within tol.norm");
  }

  int size() const { return static_cast<int>(entries.rows()); }
};

/// Parameters (a, z) of the 3d x 3d designed correlation, together with the
/// canonical diagonal gamma_i = sqrt(a/d) + sqrt(d/a)*(d+1)*z_i they induce.
struct ProtocolParameters {
  int d = 0;
  double a = 0.0;
  Eigen::VectorXd z;
  Eigen::VectorXd gamma;

  void validate(const Tolerances& tol = {}) const {
    if (d < 2) throw InvalidParameters("d must be >= 2");
    if (!(a > 0.0 && a < 1.0)) throw InvalidParameters("a must lie strictly between 0 and 1");
    if (z.size() != d || gamma.size() != d)
      throw InvalidParameters("z and gamma must have length d");
    if (z.minCoeff() <= 0.0) throw InvalidParameters("all entries of z must be positive");
    const double root_ad = std::sqrt(a / d);
    const double root_da = std::sqrt(d / a);
    for (int i = 0; i < d; ++i)
      if (std::abs(gamma[i] - (root_ad + root_da * (d + 1) * z[i])) > tol.eig)
        throw InvalidParameters("gamma is inconsistent with (a, z)");
    const double total =
        a + 2.0 * (d + 1) * z.sum() + (d * (d + 1.0) * (d + 1.0) / a) * z.squaredNorm();
    if (std::abs(total - 1.0) > tol.norm)
      throw InvalidParameters("normalization a + 2(d+1)|z|_1 + (d(d+1)^2/a)|z|_2^2 != 1");
  }
};

inline void validate_spectrum(const Eigen::VectorXd& lambdas, int d, const Tolerances& tol = {}) {
  if (d < 2) throw InvalidSpectrum("d must be >= 2");
  if (lambdas.size() != d) throw InvalidSpectrum("spectrum must have length d");
  if (lambdas.minCoeff() <= 0.0)
    throw InvalidSpectrum("all Schmidt weights must be strictly positive (full Schmidt rank)");
  for (int i = 0; i + 1 < d; ++i)
    if (lambdas[i] < lambdas[i + 1]) throw InvalidSpectrum("spectrum must be nonincreasing");
  if (std::abs(lambdas.sum() - 1.0) > tol.norm)
    throw InvalidSpectrum("spectrum must sum to 1 within tol.norm");
}

// The 2d x 2d correlation certifying the maximally entangled state, in block
// form (overall factor 1/(d(d+1)^2)):
//
//     [ d^2 I     e e^T ]
//     [ e e^T     I     ]
inline Correlation build_P(int d, const Tolerances& tol = {}) {
  if (d < 2) throw InvalidArgument("build_P requires d >= 2");
  const double c = 1.0 / (d * (d + 1.0) * (d + 1.0));
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(2 * d, 2 * d);
  p.topLeftCorner(d, d) = (d * d * c) * Eigen::MatrixXd::Identity(d, d);
  p.topRightCorner(d, d).setConstant(c);
  p.bottomLeftCorner(d, d).setConstant(c);
  p.bottomRightCorner(d, d) = c * Eigen::MatrixXd::Identity(d, d);
  return Correlation(std::move(p), tol);
}

/// Protocol parameters realizing a target Schmidt spectrum:
///   a   = (d/4) * lambda_d
///   z_i = (sqrt(lambda_d)/2) * (sqrt(lambda_i) - sqrt(lambda_d)/2) / (d+1)
/// which make gamma_i = sqrt(lambda_i) exactly.
inline ProtocolParameters solve_parameters(const Eigen::VectorXd& lambdas, int d,
                                           const Tolerances& tol = {}) {
  validate_spectrum(lambdas, d, tol);
  ProtocolParameters params;
  params.d = d;
  const double lam_min = lambdas[d - 1];
  params.a = 0.25 * d * lam_min;
  params.z.resize(d);
  const double half_root = 0.5 * std::sqrt(lam_min);
  for (int i = 0; i < d; ++i)
    params.z[i] = half_root * (std::sqrt(lambdas[i]) - half_root) / (d + 1);
  if (params.z.minCoeff() <= 0.0)
    throw InvalidSpectrum("derived z has a nonpositive entry; spectrum is not usable");
  params.gamma.resize(d);
  const double root_ad = std::sqrt(params.a / d);
  const double root_da = std::sqrt(d / params.a);
  for (int i = 0; i < d; ++i) params.gamma[i] = root_ad + root_da * (d + 1) * params.z[i];
  params.validate(tol);
  return params;
}

namespace detail {

// Q assembled from raw (d, a, z) with no invariant checks; recover_spectrum
// rebuilds candidate structures from noisy data through this path.
inline Eigen::MatrixXd build_q_entries(int d, double a, const Eigen::VectorXd& z) {
  const int m = 3 * d;
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(m, m);
  const double c = 1.0 / (d * (d + 1.0) * (d + 1.0));
  q.block(0, 0, d, d) = (a * d * d * c) * Eigen::MatrixXd::Identity(d, d);
  q.block(0, d, d, d).setConstant(a * c);
  q.block(d, 0, d, d).setConstant(a * c);
  q.block(d, d, d, d) = (a * c) * Eigen::MatrixXd::Identity(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      q(i, 2 * d + j) = z[j];  // e z^T
      q(2 * d + i, j) = z[i];  // z e^T
    }
    q(d + i, 2 * d + i) = z[i];  // diag(z), both off-diagonal blocks
    q(2 * d + i, d + i) = z[i];
    q(2 * d + i, 2 * d + i) = (d * (d + 1.0) * (d + 1.0) / a) * z[i] * z[i];
  }
  return q;
}

}  // namespace detail

// The 3d x 3d designed correlation, in block form:
//
//     [ a P          e z^T        ]
//     [              diag(z)      ]
//     [ z e^T  diag(z)  (d(d+1)^2/a) diag(z)^2 ]
inline Correlation build_Q(const ProtocolParameters& params, const Tolerances& tol = {}) {
  params.validate(tol);
  return Correlation(detail::build_q_entries(params.d, params.a, params.z), tol);
}

struct SpectrumRecovery {
  Eigen::VectorXd lambdas;  ///< sorted descending
  double residual = 0.0;    ///< max-abs rebuild error, including the spread of a estimates
};

/// Inverts the block structure of a designed correlation: z is read off the
/// diag(z) block, a from the bottom-right diagonal (averaged over the d
/// per-index estimates), and the spectrum follows from gamma. The residual
/// reports how well the rebuilt correlation matches the input.
inline SpectrumRecovery recover_spectrum(const Correlation& q, int d, const Tolerances& tol = {}) {
  if (d < 2) throw InvalidArgument("recover_spectrum requires d >= 2");
  if (q.size() != 3 * d) throw DimensionMismatch("correlation must have size 3d");
  Eigen::VectorXd z(d);
  for (int i = 0; i < d; ++i) {
    z[i] = q.entries(d + i, 2 * d + i);
    if (z[i] <= 0.0) throw StructureMismatch("diag(z) block has a nonpositive entry");
  }
  Eigen::VectorXd a_estimates(d);
  for (int i = 0; i < d; ++i) {
    const double denom = q.entries(2 * d + i, 2 * d + i);
    if (denom <= 0.0) throw StructureMismatch("bottom-right diagonal has a vanishing entry");
    a_estimates[i] = d * (d + 1.0) * (d + 1.0) * z[i] * z[i] / denom;
  }
  const double a = a_estimates.mean();
  const double spread = (a_estimates.array() - a).abs().maxCoeff();
  if (spread > tol.cert)
    throw StructureMismatch("per-index estimates of a disagree beyond tol.cert");
  const double rebuild_err =
      (detail::build_q_entries(d, a, z) - q.entries).cwiseAbs().maxCoeff();
  SpectrumRecovery out;
  out.residual = std::max(rebuild_err, spread);
  out.lambdas.resize(d);
  const double root_ad = std::sqrt(a / d);
  const double root_da = std::sqrt(d / a);
  for (int i = 0; i < d; ++i) {
    const double gamma = root_ad + root_da * (d + 1) * z[i];
    out.lambdas[i] = gamma * gamma;
  }
  std::sort(out.lambdas.data(), out.lambdas.data() + d, std::greater<double>());
  return out;
}

/// Bhattacharyya coefficient sum_xy sqrt(P_xy) sqrt(Q_xy). By Cauchy-Schwarz
/// it is at most 1, with equality exactly when P = Q.
inline double bhattacharyya(const Correlation& p, const Correlation& q) {
  if (p.size() != q.size()) throw DimensionMismatch("correlations must have equal size");
  const double value = (p.entries.cwiseSqrt().cwiseProduct(q.entries.cwiseSqrt())).sum();
  return std::clamp(value, 0.0, 1.0);
}

}  // namespace semiselftest
