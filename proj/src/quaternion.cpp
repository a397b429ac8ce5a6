#include "qwave/quaternion.hpp"

#include <cmath>
#include <stdexcept>

namespace qwave {

double Quaternion::norm() const { return std::sqrt(norm2()); }

Quaternion qadd(const Quaternion& a, const Quaternion& b) {
  return {a.q0 + b.q0, a.q1 + b.q1, a.q2 + b.q2, a.q3 + b.q3};
}

Quaternion qsub(const Quaternion& a, const Quaternion& b) {
  return {a.q0 - b.q0, a.q1 - b.q1, a.q2 - b.q2, a.q3 - b.q3};
}

Quaternion qscale(const Quaternion& a, double c) {
  return {a.q0 * c, a.q1 * c, a.q2 * c, a.q3 * c};
}

Quaternion qmul(const Quaternion& a, const Quaternion& b) {
  return {a.q0 * b.q0 - a.q1 * b.q1 - a.q2 * b.q2 - a.q3 * b.q3,
          a.q0 * b.q1 + a.q1 * b.q0 + a.q2 * b.q3 - a.q3 * b.q2,
          a.q0 * b.q2 - a.q1 * b.q3 + a.q2 * b.q0 + a.q3 * b.q1,
          a.q0 * b.q3 + a.q1 * b.q2 - a.q2 * b.q1 + a.q3 * b.q0};
}

Quaternion qconj(const Quaternion& a) { return {a.q0, -a.q1, -a.q2, -a.q3}; }

Quaternion qinv(const Quaternion& a) {
  const double n2 = a.norm2();
  if (!(n2 > 0.0)) throw std::domain_error("non-invertible");
  return qscale(qconj(a), 1.0 / n2);
}

Mat4 to_matrix4(const Quaternion& a) {
  return {a.q0, -a.q3, -a.q2, -a.q1,
          a.q3,  a.q0,  a.q1, -a.q2,
          a.q2, -a.q1,  a.q0,  a.q3,
          a.q1,  a.q2, -a.q3,  a.q0};
}

void DihedralSimilitude::validate() const {
  if (!(scale2() > 0.0)) throw std::domain_error("non-invertible");
}

Mat4 DihedralSimilitude::realize() const {
  return to_matrix4(recompose(*this));
}

Mat4 DihedralSimilitude::realize_inverse() const {
  const double inv_s2 = 1.0 / scale2();
  const Mat4 m = realize();
  Mat4 r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r[4 * i + j] = m[4 * j + i] * inv_s2;
  return r;
}

Vec4 DihedralSimilitude::apply(const Vec4& v, int dim) const {
  const double c1 = std::cos(theta1), s1 = std::sin(theta1);
  if (dim == 2) {
    return {lambda1 * (c1 * v[0] - s1 * v[1]),
            lambda1 * (s1 * v[0] + c1 * v[1]), 0.0, 0.0};
  }
  const double c2 = std::cos(theta2), s2 = std::sin(theta2);
  const double a0 = lambda1 * c1, a3 = lambda1 * s1;
  const double a2 = lambda2 * c2, a1 = lambda2 * s2;
  return {a0 * v[0] - a3 * v[1] - a2 * v[2] - a1 * v[3],
          a3 * v[0] + a0 * v[1] + a1 * v[2] - a2 * v[3],
          a2 * v[0] - a1 * v[1] + a0 * v[2] + a3 * v[3],
          a1 * v[0] + a2 * v[1] - a3 * v[2] + a0 * v[3]};
}

Vec4 DihedralSimilitude::apply_transpose(const Vec4& v, int dim) const {
  const double c1 = std::cos(theta1), s1 = std::sin(theta1);
  if (dim == 2) {
    return {lambda1 * (c1 * v[0] + s1 * v[1]),
            lambda1 * (-s1 * v[0] + c1 * v[1]), 0.0, 0.0};
  }
  const double c2 = std::cos(theta2), s2 = std::sin(theta2);
  const double a0 = lambda1 * c1, a3 = lambda1 * s1;
  const double a2 = lambda2 * c2, a1 = lambda2 * s2;
  return {a0 * v[0] + a3 * v[1] + a2 * v[2] + a1 * v[3],
          -a3 * v[0] + a0 * v[1] - a1 * v[2] + a2 * v[3],
          -a2 * v[0] + a1 * v[1] + a0 * v[2] - a3 * v[3],
          -a1 * v[0] - a2 * v[1] + a3 * v[2] + a0 * v[3]};
}

Vec4 DihedralSimilitude::apply_inverse(const Vec4& v, int dim) const {
  const double s2 = (dim == 2) ? lambda1 * lambda1 : scale2();
  if (!(s2 > 0.0)) throw std::domain_error("non-invertible");
  Vec4 r = apply_transpose(v, dim);
  for (double& x : r) x /= s2;
  return r;
}

DihedralSimilitude polar_decompose(const Quaternion& a) {
  if (!(a.norm2() > 0.0)) throw std::domain_error("non-invertible");
  DihedralSimilitude d;
  d.lambda1 = std::hypot(a.q0, a.q3);
  d.lambda2 = std::hypot(a.q1, a.q2);
  d.theta1 = d.lambda1 > 0.0 ? std::atan2(a.q3, a.q0) : 0.0;
  d.theta2 = d.lambda2 > 0.0 ? std::atan2(a.q1, a.q2) : 0.0;
  return d;
}

Quaternion recompose(const DihedralSimilitude& d) {
  return {d.lambda1 * std::cos(d.theta1), d.lambda2 * std::sin(d.theta2),
          d.lambda2 * std::cos(d.theta2), d.lambda1 * std::sin(d.theta1)};
}

Mat4 mat4_mul(const Mat4& a, const Mat4& b) {
  Mat4 r{};
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) {
      const double aik = a[4 * i + k];
      for (int j = 0; j < 4; ++j) r[4 * i + j] += aik * b[4 * k + j];
    }
  return r;
}

Vec4 mat4_apply(const Mat4& a, const Vec4& v) {
  Vec4 r{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r[i] += a[4 * i + j] * v[j];
  return r;
}

}  // namespace qwave
