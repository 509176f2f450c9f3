#include "asrjudge/mat2.hpp"

#include <cmath>

#include "asrjudge/error.hpp"

namespace asrjudge {

SymEigen2 eigen_symmetric(double a, double b, double c) {
  const double mean = 0.5 * (a + c);
  const double half_diff = 0.5 * (a - c);
  const double radius = std::hypot(half_diff, b);
  SymEigen2 out;
  out.values = {mean + radius, mean - radius};
  if (b == 0.0) {
    // Already diagonal; keep axis order matched to the sorted eigenvalues.
    out.vectors = a >= c ? Mat2{1, 0, 0, 1} : Mat2{0, 1, 1, 0};
    return out;
  }
  // Eigenvector for the larger value, computed on the better-conditioned branch.
  double vx, vy;
  if (half_diff >= 0) {
    vx = half_diff + radius;
    vy = b;
  } else {
    vx = b;
    vy = radius - half_diff;
  }
  const double norm = std::hypot(vx, vy);
  vx /= norm;
  vy /= norm;
  out.vectors = {vx, -vy, vy, vx};
  return out;
}

Mat2 symmetric_decorrelation(const Mat2& m) {
  const Mat2 g = m * m.transposed();
  const SymEigen2 e = eigen_symmetric(g.a00, g.a01, g.a11);
  if (!(e.values[1] > 0.0)) throw DegenerateInput("cannot decorrelate a singular unmixing matrix");
  const double s0 = 1.0 / std::sqrt(e.values[0]);
  const double s1 = 1.0 / std::sqrt(e.values[1]);
  const Mat2& v = e.vectors;
  const Mat2 inv_sqrt{v.a00 * v.a00 * s0 + v.a01 * v.a01 * s1, v.a00 * v.a10 * s0 + v.a01 * v.a11 * s1,
                      v.a10 * v.a00 * s0 + v.a11 * v.a01 * s1, v.a10 * v.a10 * s0 + v.a11 * v.a11 * s1};
  return inv_sqrt * m;
}

}  // namespace asrjudge
