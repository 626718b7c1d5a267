#pragma once

#include <array>
#include <complex>

namespace qsl {

using complexd = std::complex<double>;

/// 2x2 complex matrix, row-major.
struct Mat2c {
  complexd m00{}, m01{}, m10{}, m11{};

  complexd trace() const { return m00 + m11; }

  Mat2c adjoint() const {
    return {std::conj(m00), std::conj(m10), std::conj(m01), std::conj(m11)};
  }

  friend Mat2c operator+(const Mat2c& a, const Mat2c& b) {
    return {a.m00 + b.m00, a.m01 + b.m01, a.m10 + b.m10, a.m11 + b.m11};
  }
  friend Mat2c operator-(const Mat2c& a, const Mat2c& b) {
    return {a.m00 - b.m00, a.m01 - b.m01, a.m10 - b.m10, a.m11 - b.m11};
  }
  friend Mat2c operator*(const Mat2c& a, const Mat2c& b) {
    return {a.m00 * b.m00 + a.m01 * b.m10, a.m00 * b.m01 + a.m01 * b.m11,
            a.m10 * b.m00 + a.m11 * b.m10, a.m10 * b.m01 + a.m11 * b.m11};
  }
  friend Mat2c operator*(complexd s, const Mat2c& a) {
    return {s * a.m00, s * a.m01, s * a.m10, s * a.m11};
  }
};

/// Eigenvalues of a Hermitian 2x2 matrix, descending. Closed form from
/// trace and determinant; the Hermitian part of the input is used as-is.
std::array<double, 2> hermitian_eigenvalues(const Mat2c& m);

/// Spin density matrix: Hermitian, unit trace, positive semidefinite.
struct QubitState {
  Mat2c m;

  static QubitState from_matrix(const Mat2c& m);  // validates invariants
  double purity() const;                          // tr(rho^2), real
};

/// max |entry difference| between two matrices, for test tolerances.
double max_abs_diff(const Mat2c& a, const Mat2c& b);

}  // namespace qsl
