#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qwave/field.hpp"

namespace qwave {

double BoxSpec::freq(int ax, int p) const {
  return 2.0 * std::numbers::pi * double(signed_bin(ax, p)) / side[ax];
}

bool BoxSpec::same_shape(const BoxSpec& o) const {
  if (dim != o.dim) return false;
  for (int ax = 0; ax < dim; ++ax)
    if (n[ax] != o.n[ax] || side[ax] != o.side[ax]) return false;
  return true;
}

void require_same_box(const BoxSpec& a, const BoxSpec& b) {
  if (!a.same_shape(b)) throw std::invalid_argument("box mismatch");
}

cplx inner(const SampledField& f, const SampledField& g) {
  require_same_box(f.box, g.box);
  cplx acc = 0;
  for (std::size_t i = 0; i < f.values.size(); ++i)
    acc += std::conj(f.values[i]) * g.values[i];
  return acc * f.box.cellvol();
}

double norm2(const SampledField& f) {
  double acc = 0;
  for (const cplx& v : f.values) acc += std::norm(v);
  return acc * f.box.cellvol();
}

double norm2(const QuaternionField& F) { return norm2(F.f1) + norm2(F.f2); }

Quaternion qinner(const QuaternionField& F, const QuaternionField& G) {
  require_same_box(F.f1.box, F.f2.box);
  require_same_box(F.f1.box, G.f1.box);
  require_same_box(F.f1.box, G.f2.box);
  cplx z1 = 0, z2 = 0;
  for (std::size_t i = 0; i < F.f1.values.size(); ++i) {
    const cplx a1 = F.f1.values[i], a2 = F.f2.values[i];
    const cplx b1 = G.f1.values[i], b2 = G.f2.values[i];
    z1 += std::conj(a1) * b1 + std::conj(a2) * b2;
    z2 += a1 * b2 - a2 * b1;
  }
  const double dv = F.f1.box.cellvol();
  return Quaternion::from_z(z1 * dv, z2 * dv);
}

QuaternionField right_scale(const QuaternionField& F, const Quaternion& q) {
  const cplx z1 = q.z1(), z2 = q.z2();
  QuaternionField out(F.f1.box);
  for (std::size_t i = 0; i < F.f1.values.size(); ++i) {
    const cplx a1 = F.f1.values[i], a2 = F.f2.values[i];
    out.f1.values[i] = a1 * z1 - std::conj(a2) * z2;
    out.f2.values[i] = a2 * z1 + std::conj(a1) * z2;
  }
  return out;
}

QuaternionField rank_one_apply(const QuaternionField& F, const QuaternionField& G,
                               const QuaternionField& H) {
  require_same_box(F.f1.box, G.f1.box);
  require_same_box(F.f1.box, H.f1.box);
  return right_scale(F, qinner(G, H));
}

}  // namespace qwave
