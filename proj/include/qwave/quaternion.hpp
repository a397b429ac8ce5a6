#pragma once

#include <array>
#include <complex>

namespace qwave {

using cplx = std::complex<double>;
using Vec4 = std::array<double, 4>;   // first `dim` entries meaningful
using Mat4 = std::array<double, 16>;  // row-major 4x4

// Quaternion q = q0 + q1*i + q2*j + q3*k stored by real components.
// The complex views pair (q0,q3) and (q2,q1): z1 = q0 + i q3, z2 = q2 + i q1,
// and the 2x2 complex view is [[z1, -conj z2], [z2, conj z1]].
struct Quaternion {
  double q0 = 0.0, q1 = 0.0, q2 = 0.0, q3 = 0.0;

  cplx z1() const { return {q0, q3}; }
  cplx z2() const { return {q2, q1}; }
  static Quaternion from_z(cplx z1, cplx z2) {
    return {z1.real(), z2.imag(), z2.real(), z1.imag()};
  }

  double norm2() const { return q0 * q0 + q1 * q1 + q2 * q2 + q3 * q3; }
  double norm() const;

  // Row-major 2x2 complex view.
  std::array<cplx, 4> matrix2() const {
    return {z1(), -std::conj(z2()), z2(), std::conj(z1())};
  }

  // Canonical R^4 vector layout (q0, q3, q2, q1).
  Vec4 to_vec() const { return {q0, q3, q2, q1}; }
  static Quaternion from_vec(const Vec4& v) { return {v[0], v[3], v[2], v[1]}; }
};

Quaternion qadd(const Quaternion& a, const Quaternion& b);
Quaternion qsub(const Quaternion& a, const Quaternion& b);
Quaternion qscale(const Quaternion& a, double c);
Quaternion qmul(const Quaternion& a, const Quaternion& b);
Quaternion qconj(const Quaternion& a);
// Throws std::domain_error("non-invertible") on the zero quaternion.
Quaternion qinv(const Quaternion& a);

// 4x4 left-multiplication matrix in the canonical vector layout:
// mat4_apply(to_matrix4(a), x.to_vec()) == qmul(a, x).to_vec().
Mat4 to_matrix4(const Quaternion& a);

// Rotation-dilation form of an invertible quaternion: two planar
// rotation-dilation pairs (lambda1, theta1), (lambda2, theta2) with
// lambda1^2 + lambda2^2 > 0. Doubles as the 2D rotation-dilation when
// lambda2 = 0 (only the first pair is meaningful then).
struct DihedralSimilitude {
  double lambda1 = 1.0, lambda2 = 0.0;
  double theta1 = 0.0, theta2 = 0.0;

  double scale2() const { return lambda1 * lambda1 + lambda2 * lambda2; }
  void validate() const;  // throws std::domain_error("non-invertible") if scale2() == 0

  // Block matrix [[l1 R(t1), -l2 R(-t2)], [l2 R(t2), l1 R(-t1)]].
  Mat4 realize() const;
  // The realized matrix satisfies A^T A = scale2() * I, so the inverse is
  // just the scaled transpose.
  Mat4 realize_inverse() const;

  // Apply realize() (or its transpose / inverse) without forming the matrix.
  // dim = 2 uses the upper-left block l1 R(t1) on (v0, v1).
  Vec4 apply(const Vec4& v, int dim) const;
  Vec4 apply_transpose(const Vec4& v, int dim) const;
  Vec4 apply_inverse(const Vec4& v, int dim) const;
};

DihedralSimilitude polar_decompose(const Quaternion& a);  // throws on |a| = 0
Quaternion recompose(const DihedralSimilitude& d);

Mat4 mat4_mul(const Mat4& a, const Mat4& b);
Vec4 mat4_apply(const Mat4& a, const Vec4& v);

}  // namespace qwave
