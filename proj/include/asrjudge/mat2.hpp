#pragma once

#include <array>

namespace asrjudge {

/// Row-major 2x2 real matrix.
struct Mat2 {
  double a00 = 0, a01 = 0, a10 = 0, a11 = 0;

  static constexpr Mat2 identity() { return {1, 0, 0, 1}; }

  constexpr Mat2 transposed() const { return {a00, a10, a01, a11}; }
  constexpr double det() const { return a00 * a11 - a01 * a10; }
  constexpr std::array<double, 2> row(int i) const { return i == 0 ? std::array{a00, a01} : std::array{a10, a11}; }

  friend constexpr Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {x.a00 * y.a00 + x.a01 * y.a10, x.a00 * y.a01 + x.a01 * y.a11,
            x.a10 * y.a00 + x.a11 * y.a10, x.a10 * y.a01 + x.a11 * y.a11};
  }
  friend constexpr bool operator==(const Mat2&, const Mat2&) = default;
};

/// Eigen-decomposition of a symmetric 2x2 matrix [[a, b], [b, c]].
/// values[0] >= values[1]; vectors are the matching unit eigenvectors stored
/// as columns of `vectors`.
struct SymEigen2 {
  std::array<double, 2> values;
  Mat2 vectors;
};

SymEigen2 eigen_symmetric(double a, double b, double c);

/// (M M^T)^(-1/2) M : nearest matrix with orthonormal rows.
Mat2 symmetric_decorrelation(const Mat2& m);

}  // namespace asrjudge
