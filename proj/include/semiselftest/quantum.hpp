#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "semiselftest/correlation.hpp"
#include "semiselftest/linalg.hpp"

namespace semiselftest {

/// A pure state as a unit-norm amplitude vector.
struct PureState {
  Vector amplitudes;

  PureState() = default;
  explicit PureState(Vector amps, const Tolerances& tol = {}) : amplitudes(std::move(amps)) {
    if (amplitudes.size() < 1) throw DimensionMismatch("state needs at least one amplitude");
    if (std::abs(amplitudes.norm() - 1.0) > tol.norm)
      throw NotNormalized("pure state amplitudes must have unit norm");
  }

  int dim() const { return static_cast<int>(amplitudes.size()); }
};

/// A density matrix: Hermitian, PSD within tol.psd, unit trace within tol.norm.
struct DensityMatrix {
  Matrix matrix;

  DensityMatrix() = default;
  explicit DensityMatrix(Matrix m, const Tolerances& tol = {}) : matrix(std::move(m)) {
    Eigendecomposition eig = hermitian_eig(matrix, tol);  // throws NotHermitian
    if (eig.eigenvalues.minCoeff() < -tol.psd)
      throw NotPositiveSemidefinite("density matrix has a negative eigenvalue");
    if (std::abs(matrix.trace().real() - 1.0) > tol.norm)
      throw NotNormalized("density matrix must have unit trace");
  }

  static DensityMatrix pure(const PureState& psi, const Tolerances& tol = {}) {
    return DensityMatrix(psi.amplitudes * psi.amplitudes.adjoint(), tol);
  }

  int dim() const { return static_cast<int>(matrix.rows()); }
};

/// A measurement: PSD operators, one per outcome, summing to the identity.
struct Povm {
  std::vector<Matrix> elements;

  Povm() = default;
  explicit Povm(std::vector<Matrix> elems, const Tolerances& tol = {})
      : elements(std::move(elems)) {
    if (elements.empty()) throw InvalidPovm("a POVM needs at least one element");
    const Eigen::Index d = elements.front().rows();
    Matrix sum = Matrix::Zero(d, d);
    for (const Matrix& e : elements) {
      if (e.rows() != d || e.cols() != d)
        throw InvalidPovm("all elements must be square with a common dimension");
      Eigendecomposition eig = hermitian_eig(e, tol);
      if (eig.eigenvalues.minCoeff() < -tol.psd)
        throw InvalidPovm("element has a negative eigenvalue");
      sum += e;
    }
    if (max_abs(sum - Matrix::Identity(d, d)) > tol.eig)
      throw InvalidPovm("elements must sum to the identity");
  }

  int dim() const { return static_cast<int>(elements.front().rows()); }
  int outcomes() const { return static_cast<int>(elements.size()); }
};

/// Joint outcome distribution P_xy = tr(rho (A_x ⊗ B_y)). Entries in
/// [-tol.psd, 0) are rounding noise, clipped to zero and reported in the
/// result's diagnostics fields.
inline Correlation correlation_from_measurement(const DensityMatrix& rho, const Povm& povm_a,
                                                const Povm& povm_b, const Tolerances& tol = {}) {
  if (rho.dim() != povm_a.dim() * povm_b.dim())
    throw DimensionMismatch("state dimension must equal dim(A) * dim(B)");
  const int m_a = povm_a.outcomes();
  const int m_b = povm_b.outcomes();
  Eigen::MatrixXd entries(m_a, m_b);
  int clipped = 0;
  double max_clipped = 0.0;
  for (int x = 0; x < m_a; ++x) {
    for (int y = 0; y < m_b; ++y) {
      double p = (rho.matrix * kron(povm_a.elements[x], povm_b.elements[y])).trace().real();
      if (p < 0.0) {
        if (p < -tol.psd)
          throw NotPositiveSemidefinite("outcome probability below -tol.psd");
        max_clipped = std::max(max_clipped, -p);
        ++clipped;
        p = 0.0;
      }
      entries(x, y) = p;
    }
  }
  Correlation out(std::move(entries), tol);
  out.clipped_count = clipped;
  out.max_clipped = max_clipped;
  return out;
}

/// |Phi_d> = (1/sqrt(d)) sum_i |ii>.
inline PureState maximally_entangled(int d, const Tolerances& tol = {}) {
  if (d < 2) throw InvalidArgument("maximally_entangled requires d >= 2");
  Vector amps = Vector::Zero(static_cast<Eigen::Index>(d) * d);
  const double c = 1.0 / std::sqrt(static_cast<double>(d));
  for (int i = 0; i < d; ++i) amps[i * d + i] = c;
  return PureState(std::move(amps), tol);
}

/// sum_i sqrt(lambda_i) |ii> for a valid spectrum (positive, descending, sum 1).
inline PureState schmidt_state(const Eigen::VectorXd& lambdas, int d, const Tolerances& tol = {}) {
  validate_spectrum(lambdas, d, tol);
  Vector amps = Vector::Zero(static_cast<Eigen::Index>(d) * d);
  for (int i = 0; i < d; ++i) amps[i * d + i] = std::sqrt(lambdas[i]);
  return PureState(std::move(amps), tol);
}

/// <psi| rho |psi>, clipped into [0, 1].
inline double fidelity_with_pure(const DensityMatrix& rho, const PureState& psi,
                                 const Tolerances& tol = {}) {
  if (rho.dim() != psi.dim()) throw DimensionMismatch("state dimensions differ");
  const Complex value = psi.amplitudes.adjoint() * rho.matrix * psi.amplitudes;
  if (std::abs(value.imag()) > tol.herm)
    throw NotHermitian("fidelity has a non-negligible imaginary part");
  return std::clamp(value.real(), 0.0, 1.0);
}

/// rho -> (1-p) rho + p I/dim.
inline DensityMatrix depolarize(const DensityMatrix& rho, double p, const Tolerances& tol = {}) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidProbability("p must lie in [0, 1]");
  const int d = rho.dim();
  Matrix out = (1.0 - p) * rho.matrix + (p / d) * Matrix::Identity(d, d);
  return DensityMatrix(std::move(out), tol);
}

/// Mixes each element with identity weighted by its own trace,
/// A_x -> (1-p) A_x + p (tr A_x / dim) I, which preserves completeness exactly.
inline Povm perturb_povm(const Povm& povm, double p, const Tolerances& tol = {}) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidProbability("p must lie in [0, 1]");
  const int d = povm.dim();
  std::vector<Matrix> elems;
  elems.reserve(povm.elements.size());
  for (const Matrix& e : povm.elements)
    elems.push_back((1.0 - p) * e + (p * e.trace().real() / d) * Matrix::Identity(d, d));
  return Povm(std::move(elems), tol);
}

}  // namespace semiselftest
