#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "semiselftest/linalg.hpp"

namespace semiselftest {

/// Deterministic random source. Uniform and normal variates are derived from
/// raw mt19937_64 output by fixed arithmetic, so a seed reproduces the same
/// stream on every platform (std::normal_distribution would not).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform() {  // [0, 1)
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double normal() {
    // Box-Muller; consumes two uniforms per pair, caches the second.
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u = 0.0;
    do { u = uniform(); } while (u == 0.0);
    const double r = std::sqrt(-2.0 * std::log(u));
    const double theta = 2.0 * M_PI * uniform();
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

  Complex complex_normal() {
    const double re = normal();
    const double im = normal();
    return {re, im};
  }

  Matrix complex_gaussian(int rows, int cols) {
    Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) m(i, j) = complex_normal();
    return m;
  }

 private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

/// Haar-random unitary via QR of a complex Gaussian matrix with the phase
/// ambiguity fixed by the sign of R's diagonal.
inline Matrix random_unitary(int dim, Rng& rng) {
  Matrix g = rng.complex_gaussian(dim, dim);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < dim; ++i) {
    Complex diag = r(i, i);
    q.col(i) *= (std::abs(diag) > 0.0) ? diag / std::abs(diag) : Complex(1.0, 0.0);
  }
  return q;
}

inline Vector random_unit_vector(int dim, Rng& rng) {
  Vector v(dim);
  for (int i = 0; i < dim; ++i) v[i] = rng.complex_normal();
  return v / v.norm();
}

inline Matrix random_psd(int dim, Rng& rng) {
  Matrix g = rng.complex_gaussian(dim, dim);
  return g * g.adjoint();
}

/// Random invertible matrix with bounded condition number, for gauge
/// transformations that keep double precision honest.
inline Matrix random_invertible(int dim, Rng& rng, double max_condition = 100.0) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    Matrix g = rng.complex_gaussian(dim, dim);
    Eigen::JacobiSVD<Matrix> svd(g);
    const double smin = svd.singularValues().minCoeff();
    if (smin > 0.0 && svd.singularValues().maxCoeff() / smin <= max_condition) return g;
  }
  throw Error("random_invertible: no well-conditioned sample found");
}

}  // namespace semiselftest
