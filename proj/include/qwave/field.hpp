#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include "qwave/quaternion.hpp"

namespace qwave {

// Uniform periodic sampling box in R^2 or R^4.  Row-major storage, axis 0
// slowest; sample m on axis ax sits at x = side[ax]*m/n[ax] (corner origin).
struct BoxSpec {
  int dim = 2;
  std::array<double, 4> side{};
  std::array<int, 4> n{};

  std::size_t total() const {
    std::size_t t = 1;
    for (int ax = 0; ax < dim; ++ax) t *= std::size_t(n[ax]);
    return t;
  }
  double cellvol() const {
    double v = 1;
    for (int ax = 0; ax < dim; ++ax) v *= side[ax] / n[ax];
    return v;
  }
  double volume() const {
    double v = 1;
    for (int ax = 0; ax < dim; ++ax) v *= side[ax];
    return v;
  }
  double coord(int ax, int m) const { return side[ax] * double(m) / double(n[ax]); }
  // frequency bin p in [0, n) carries the signed index in [-n/2, n/2)
  int signed_bin(int ax, int p) const { return p < n[ax] / 2 ? p : p - n[ax]; }
  double freq(int ax, int p) const;
  std::size_t rank(const int* m) const {
    std::size_t idx = 0;
    for (int ax = 0; ax < dim; ++ax) idx = idx * std::size_t(n[ax]) + std::size_t(m[ax]);
    return idx;
  }
  void unrank(std::size_t idx, int* m) const {
    for (int ax = dim - 1; ax >= 0; --ax) {
      m[ax] = int(idx % std::size_t(n[ax]));
      idx /= std::size_t(n[ax]);
    }
  }
  bool same_shape(const BoxSpec& o) const;
};

void require_same_box(const BoxSpec& a, const BoxSpec& b);

struct SampledField {
  BoxSpec box;
  std::vector<cplx> values;
  // cached unitary DFT of values; cleared by anything that rewrites values
  std::optional<std::vector<cplx>> spectrum;

  SampledField() = default;
  explicit SampledField(const BoxSpec& b) : box(b), values(b.total()) {}

  const std::vector<cplx>& ensure_spectrum();
};

// In-place unitary DFT over all axes of the box; sign is -1 forward, +1 inverse.
void dft_inplace(std::vector<cplx>& data, const BoxSpec& box, int sign);

SampledField fft(const SampledField& f);
SampledField ifft(const SampledField& f);

cplx inner(const SampledField& f, const SampledField& g);
double norm2(const SampledField& f);

// Pair (f1, f2) standing for the matrix field [[f1, -conj f2], [f2, conj f1]].
struct QuaternionField {
  SampledField f1, f2;

  QuaternionField() = default;
  explicit QuaternionField(const BoxSpec& b) : f1(b), f2(b) {}
};

double norm2(const QuaternionField& F);

// Quaternion-valued pairing: the 2x2 matrix integral of F(x)^dag G(x).
Quaternion qinner(const QuaternionField& F, const QuaternionField& G);

// Pointwise right multiplication by q's 2x2 view; preserves the pair form.
QuaternionField right_scale(const QuaternionField& F, const Quaternion& q);

// |F)(G| applied to H.
QuaternionField rank_one_apply(const QuaternionField& F, const QuaternionField& G,
                               const QuaternionField& H);

}  // namespace qwave
