#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "qwave/wavelet.hpp"

namespace qwave {

using std::numbers::pi;

namespace {

double sq(double x) { return x * x; }

double abs2_vec(const Vec4& v, int dim) {
  double s = 0;
  for (int ax = 0; ax < dim; ++ax) s += v[ax] * v[ax];
  return s;
}

}  // namespace

MotherWavelet laplacian_gaussian(int dim) {
  MotherWavelet w;
  w.dim = dim;
  w.name = "log";
  w.spectrum_fn = [dim](const Vec4& k) -> cplx {
    const double r2 = abs2_vec(k, dim);
    return r2 * std::exp(-0.5 * r2);
  };
  const double c = std::pow(2.0 * pi, -0.5 * dim);
  w.space_fn = [dim, c](const Vec4& x) -> cplx {
    const double r2 = abs2_vec(x, dim);
    return c * (double(dim) - r2) * std::exp(-0.5 * r2);
  };
  w.radial_abs2 = [](double r) { return sq(sq(r)) * std::exp(-r * r); };
  return w;
}

MotherWavelet morlet(int dim, double k0) {
  MotherWavelet w;
  w.dim = dim;
  w.name = "morlet";
  w.spectrum_fn = [dim, k0](const Vec4& k) -> cplx {
    const double r2 = abs2_vec(k, dim);
    double shifted = sq(k[0] - k0);
    for (int ax = 1; ax < dim; ++ax) shifted += k[ax] * k[ax];
    return std::exp(-0.5 * shifted) - std::exp(-0.5 * (r2 + k0 * k0));
  };
  const double c = std::pow(2.0 * pi, -0.5 * dim);
  w.space_fn = [dim, c, k0](const Vec4& x) -> cplx {
    const double r2 = abs2_vec(x, dim);
    const cplx carrier = std::exp(cplx(0.0, k0 * x[0]));
    return c * std::exp(-0.5 * r2) * (carrier - std::exp(-0.5 * k0 * k0));
  };
  return w;
}

MotherWavelet gaussian_bump(int dim) {
  MotherWavelet w;
  w.dim = dim;
  w.name = "gaussian";
  w.spectrum_fn = [dim](const Vec4& k) -> cplx { return std::exp(-0.5 * abs2_vec(k, dim)); };
  const double c = std::pow(2.0 * pi, -0.5 * dim);
  w.space_fn = [dim, c](const Vec4& x) -> cplx {
    return c * std::exp(-0.5 * abs2_vec(x, dim));
  };
  w.radial_abs2 = [](double r) { return std::exp(-r * r); };
  return w;
}

double atom_prefactor_space(const Atom& a) {
  const double s2 = a.A.scale2();
  if (!(s2 > 0)) throw std::domain_error("non-invertible");
  if (a.norm == Normalization::l1) return 1.0 / s2;
  // l2: det^{-1/2} = scale^{-dim/2}
  return std::pow(s2, -0.25 * a.mother.dim);
}

double atom_prefactor_freq(const Atom& a) {
  const double s2 = a.A.scale2();
  if (!(s2 > 0)) throw std::domain_error("non-invertible");
  if (a.norm == Normalization::l1) return std::pow(s2, 0.5 * a.mother.dim - 1.0);
  return std::pow(s2, 0.25 * a.mother.dim);
}

cplx atom_spectrum(const Atom& a, const Vec4& k) {
  const int dim = a.mother.dim;
  double phase = 0;
  for (int ax = 0; ax < dim; ++ax) phase -= k[ax] * a.b[ax];
  const Vec4 kt = a.A.apply_transpose(k, dim);
  return atom_prefactor_freq(a) * std::exp(cplx(0.0, phase)) * a.mother.spectrum_fn(kt);
}

cplx atom_space(const Atom& a, const Vec4& x) {
  const int dim = a.mother.dim;
  if (!a.mother.space_fn) throw std::domain_error("mother wavelet has no space form");
  Vec4 v{};
  for (int ax = 0; ax < dim; ++ax) v[ax] = x[ax] - a.b[ax];
  return atom_prefactor_space(a) * a.mother.space_fn(a.A.apply_inverse(v, dim));
}

SampledField sample_atom_space(const Atom& a, const BoxSpec& box) {
  const int dim = a.mother.dim;
  if (box.dim != dim) throw std::invalid_argument("box mismatch");
  if (!a.mother.space_fn) throw std::domain_error("mother wavelet has no space form");
  const double pref = atom_prefactor_space(a);
  const double s = std::sqrt(a.A.scale2());
  const double radius = a.mother.space_cutoff * s;
  const double r2max = radius * radius;

  // the inverse map is linear, so its action on the translation lattice can be
  // hoisted out of the per-image recursion
  Vec4 step[4];
  for (int ax = 0; ax < dim; ++ax) {
    Vec4 e{};
    e[ax] = box.side[ax];
    step[ax] = a.A.apply_inverse(e, dim);
  }

  SampledField f(box);
  int m[4];
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    box.unrank(i, m);
    Vec4 d0{};
    for (int ax = 0; ax < dim; ++ax) d0[ax] = box.coord(ax, m[ax]) - a.b[ax];
    cplx acc = 0;
    // image sum over box translates within the decay radius, pruned by the
    // cumulative squared distance; y tracks the inverse-mapped point
    auto image = [&](auto&& self, int ax, double partial, const Vec4& y) -> void {
      if (ax == dim) {
        acc += a.mother.space_fn(y);
        return;
      }
      const double T = box.side[ax];
      const int wlo = int(std::ceil((d0[ax] - radius) / T));
      const int whi = int(std::floor((d0[ax] + radius) / T));
      for (int w = wlo; w <= whi; ++w) {
        const double c = d0[ax] - w * T;
        const double p = partial + c * c;
        if (p > r2max) continue;
        Vec4 y2 = y;
        if (w != 0)
          for (int j = 0; j < dim; ++j) y2[j] -= w * step[ax][j];
        self(self, ax + 1, p, y2);
      }
    };
    image(image, 0, 0.0, a.A.apply_inverse(d0, dim));
    f.values[i] = pref * acc;
  }
  return f;
}

SampledField sample_atom_spectrum(const Atom& a, const BoxSpec& box) {
  const int dim = a.mother.dim;
  if (box.dim != dim) throw std::invalid_argument("box mismatch");
  const double K = std::sqrt(double(box.total())) / box.volume();
  SampledField f(box);
  int p[4];
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    box.unrank(i, p);
    Vec4 k{};
    for (int ax = 0; ax < dim; ++ax) k[ax] = box.freq(ax, p[ax]);
    f.values[i] = K * atom_spectrum(a, k);
  }
  return f;
}

namespace {

// lattice sum at spacing h over the box, zero bin excluded
double duflo_level_generic(const MotherWavelet& psi, double h, int n) {
  const int dim = psi.dim;
  const double wconst = std::pow(2.0 * pi, dim);
  const int half = n / 2;
  double acc = 0;
  int idx[4] = {};
  Vec4 k{};
  auto loop = [&](auto&& self, int ax) -> void {
    if (ax == dim) {
      double r2 = 0;
      for (int a = 0; a < dim; ++a) r2 += k[a] * k[a];
      if (r2 == 0) return;
      acc += std::norm(psi.spectrum_fn(k)) / std::pow(r2, 0.5 * dim);
      return;
    }
    for (idx[ax] = -half; idx[ax] < half; ++idx[ax]) {
      k[ax] = h * idx[ax];
      self(self, ax + 1);
    }
  };
  loop(loop, 0);
  return wconst * acc * std::pow(h, dim);
}

// radial-modulus fast path for dim 4: bucket lattice points by |i|^2 using
// r4(s) = 8 * sum of divisors of s not divisible by 4
double duflo_level_radial4(const MotherWavelet& psi, double h, int n) {
  const int half = n / 2;
  const int smax = half * half;  // ball of radius box_half inscribed in the box
  std::vector<double> r4(std::size_t(smax) + 1, 0.0);
  for (int d = 1; d <= smax; ++d) {
    if (d % 4 == 0) continue;
    for (int s = d; s <= smax; s += d) r4[std::size_t(s)] += 8.0 * d;
  }
  const double wconst = std::pow(2.0 * pi, 4);
  double acc = 0;
  for (int s = 1; s <= smax; ++s) {
    const double r2 = h * h * double(s);
    acc += r4[std::size_t(s)] * psi.radial_abs2(std::sqrt(r2)) / (r2 * r2);
  }
  return wconst * acc * std::pow(h, 4);
}

}  // namespace

DufloMoore duflo_moore(const MotherWavelet& psi, const DufloMooreOptions& opts) {
  Vec4 zero{};
  if (std::abs(psi.spectrum_fn(zero)) > 1e-12)
    throw std::domain_error("inadmissible: nonvanishing DC");

  DufloMoore out;
  double prev = 0;
  int n = opts.n0;
  for (int level = 0; level < opts.max_levels; ++level, n *= 2) {
    const double h = 2.0 * opts.box_half / n;
    const double v = (psi.dim == 4 && psi.radial_abs2) ? duflo_level_radial4(psi, h, n)
                                                       : duflo_level_generic(psi, h, n);
    out.value = v;
    out.levels = level + 1;
    if (level > 0) {
      out.last_rel_change = std::abs(v - prev) / std::max(std::abs(v), 1e-300);
      if (out.last_rel_change < opts.rel_tol) {
        out.converged = true;
        break;
      }
    }
    prev = v;
  }
  return out;
}

double duflo_moore_norm(const MotherWavelet& psi) {
  const DufloMoore r = duflo_moore(psi);
  if (!r.converged) throw std::runtime_error("admissibility integral diverges");
  return r.value;
}

}  // namespace qwave
