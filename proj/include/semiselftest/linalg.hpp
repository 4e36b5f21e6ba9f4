#pragma once

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <complex>
#include <string>

#include "semiselftest/errors.hpp"
#include "semiselftest/tolerances.hpp"

namespace semiselftest {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

// Conventions, fixed once for the whole library:
//  * matrix entries are addressed (row, col); serialized row by row;
//  * a bipartite vector on dimensions (dA, dB) stores the coefficient of
//    |i>|j> at index i*dB + j;
//  * complex scalars serialize as [re, im] pairs.

inline double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

inline bool is_hermitian(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return max_abs(m - m.adjoint()) <= tol;
}

/// Eigendecomposition of a Hermitian matrix: M = V diag(e) V^dagger.
struct Eigendecomposition {
  RealVector eigenvalues;  ///< nondecreasing
  Matrix eigenvectors;     ///< unitary, columns match eigenvalue order
};

inline Eigendecomposition hermitian_eig(const Matrix& m, const Tolerances& tol = {}) {
  if (!is_hermitian(m, tol.herm))
    throw NotHermitian("matrix differs from its conjugate transpose by more than tol.herm");
  // Symmetrize before factoring so rounding noise in the input cannot leak
  // into the eigenvectors.
  Matrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  if (solver.info() != Eigen::Success)
    throw Error("hermitian_eig: eigensolver failed to converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

/// Fractional power of a PSD matrix: eigenvalues are mapped lambda -> lambda^p,
/// eigenvectors kept. Eigenvalues in [-tol.psd, 0) are rounding noise and are
/// clipped to 0 first; anything more negative is rejected.
inline Matrix psd_power(const Matrix& m, double p, const Tolerances& tol = {}) {
  Eigendecomposition eig = hermitian_eig(m, tol);
  const double min_eig = eig.eigenvalues.minCoeff();
  if (min_eig < -tol.psd)
    throw NotPositiveSemidefinite("minimum eigenvalue " + std::to_string(min_eig) +
                                  " is below -tol.psd");
  if (p < 0.0 && min_eig <= tol.rank)
    throw SingularMatrix("negative power of a rank-deficient matrix");
  RealVector powered = eig.eigenvalues;
  for (Eigen::Index i = 0; i < powered.size(); ++i) {
    double lambda = std::max(powered[i], 0.0);
    powered[i] = (lambda == 0.0 && p > 0.0) ? 0.0 : std::pow(lambda, p);
  }
  return eig.eigenvectors * powered.asDiagonal() * eig.eigenvectors.adjoint();
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

enum class Subsystem { A, B };

/// Partial trace of a (dA*dB)x(dA*dB) matrix. keep == Subsystem::A traces out
/// B and returns a dA x dA matrix; keep == Subsystem::B the other way around.
inline Matrix partial_trace(const Matrix& m, int dim_a, int dim_b, Subsystem keep) {
  if (dim_a < 1 || dim_b < 1 || m.rows() != m.cols() ||
      m.rows() != static_cast<Eigen::Index>(dim_a) * dim_b)
    throw DimensionMismatch("partial_trace expects a square matrix of dimension dA*dB");
  if (keep == Subsystem::A) {
    Matrix out = Matrix::Zero(dim_a, dim_a);
    for (int i = 0; i < dim_a; ++i)
      for (int j = 0; j < dim_a; ++j)
        for (int b = 0; b < dim_b; ++b)
          out(i, j) += m(i * dim_b + b, j * dim_b + b);
    return out;
  }
  Matrix out = Matrix::Zero(dim_b, dim_b);
  for (int i = 0; i < dim_b; ++i)
    for (int j = 0; j < dim_b; ++j)
      for (int a = 0; a < dim_a; ++a)
        out(i, j) += m(a * dim_b + i, a * dim_b + j);
  return out;
}

/// Schmidt decomposition of a unit vector on dimensions (dA, dB):
/// v = sum_k coeffs_k (basis_a.col(k) ⊗ basis_b.col(k)) with coeffs
/// nonnegative and nonincreasing, local bases orthonormal.
struct SchmidtDecomposition {
  RealVector coeffs;
  Matrix basis_a;
  Matrix basis_b;
};

inline SchmidtDecomposition schmidt_decompose(const Vector& v, int dim_a, int dim_b,
                                              const Tolerances& tol = {}) {
  if (dim_a < 1 || dim_b < 1 || v.size() != static_cast<Eigen::Index>(dim_a) * dim_b)
    throw DimensionMismatch("schmidt_decompose expects a vector of length dA*dB");
  if (std::abs(v.norm() - 1.0) > tol.norm)
    throw NotNormalized("input vector does not have unit norm");
  Matrix reshaped(dim_a, dim_b);
  for (int i = 0; i < dim_a; ++i)
    for (int j = 0; j < dim_b; ++j) reshaped(i, j) = v[i * dim_b + j];
  Eigen::JacobiSVD<Matrix> svd(reshaped, Eigen::ComputeThinU | Eigen::ComputeThinV);
  // v_ij = sum_k s_k U_ik conj(V_jk), so Bob's basis is the conjugated V.
  return {svd.singularValues(), svd.matrixU(), svd.matrixV().conjugate()};
}

}  // namespace semiselftest
