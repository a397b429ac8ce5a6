#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <stdexcept>

#include "qwave/wavelet.hpp"

using namespace qwave;
using std::numbers::pi;

namespace {

BoxSpec make_box(int dim, double side, int n) {
  BoxSpec b;
  b.dim = dim;
  for (int ax = 0; ax < dim; ++ax) {
    b.side[ax] = side;
    b.n[ax] = n;
  }
  return b;
}

// Simpson quadrature of the admissibility integrand in polar/spherical
// coordinates: weight (2pi)^d |psi_hat|^2 / r^d times the sphere measure.
double radial_oracle(int dim, double rmax, int steps) {
  const double surf = dim == 2 ? 2 * pi : 2 * pi * pi;  // |S^1| r, |S^3| r^3
  auto f = [&](double r) {
    if (r == 0) return 0.0;
    const double abs2 = std::pow(r, 4.0) * std::exp(-r * r);  // |k|^2 e^{-|k|^2/2} squared
    return std::pow(2 * pi, dim) * abs2 / std::pow(r, dim) * surf * std::pow(r, dim - 1);
  };
  const double h = rmax / steps;
  double acc = f(0) + f(rmax);
  for (int i = 1; i < steps; ++i) acc += f(i * h) * (i % 2 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

double rel_err(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_SUITE("wavelet") {

TEST_CASE("admissibility integral: isotropic second-derivative wavelet") {
  const DufloMoore d2 = duflo_moore(laplacian_gaussian(2));
  CHECK(d2.converged);
  CHECK(rel_err(d2.value, 4.0 * pi * pi * pi) < 1e-3);
  CHECK(rel_err(d2.value, radial_oracle(2, 12.0, 24000)) < 1e-3);

  const DufloMoore d4 = duflo_moore(laplacian_gaussian(4));
  CHECK(d4.converged);
  CHECK(rel_err(d4.value, std::pow(2 * pi, 4.0) * pi * pi) < 1e-3);
  CHECK(rel_err(d4.value, radial_oracle(4, 12.0, 24000)) < 1e-3);
}

TEST_CASE("admissibility rejects nonvanishing DC") {
  CHECK_THROWS_WITH_AS(duflo_moore(gaussian_bump(2)), "inadmissible: nonvanishing DC",
                       std::domain_error);
  CHECK_THROWS_WITH_AS(duflo_moore(gaussian_bump(4)), "inadmissible: nonvanishing DC",
                       std::domain_error);
}

TEST_CASE("admissibility scales quadratically with the amplitude") {
  const cplx c{1.7, -0.4};
  MotherWavelet base = laplacian_gaussian(2);
  MotherWavelet scaled = base;
  scaled.spectrum_fn = [base, c](const Vec4& k) { return c * base.spectrum_fn(k); };
  scaled.radial_abs2 = [base, c](double r) { return std::norm(c) * base.radial_abs2(r); };
  const double v0 = duflo_moore(base).value;
  const double v1 = duflo_moore(scaled).value;
  CHECK(rel_err(v1, std::norm(c) * v0) < 1e-12);
}

TEST_CASE("admissibility flags a non-integrable inverse-modulus profile") {
  MotherWavelet w;
  w.dim = 2;
  w.name = "divergent";
  w.spectrum_fn = [](const Vec4& k) -> cplx {
    const double r = std::hypot(k[0], k[1]);
    return r == 0 ? 0.0 : std::exp(-0.5 * r * r) / r;
  };
  const DufloMoore d = duflo_moore(w);
  CHECK_FALSE(d.converged);
  CHECK(d.last_rel_change > 1e-3);
  CHECK_THROWS_AS(duflo_moore_norm(w), std::runtime_error);
}

TEST_CASE("directional wavelet is admissible; weight depends on |k| only") {
  const DufloMoore d2 = duflo_moore(morlet(2));
  CHECK(d2.converged);
  CHECK(d2.value > 0);

  // same bump along the other axis: identical integral (lattice is symmetric)
  MotherWavelet swapped = morlet(2);
  const MotherWavelet orig = morlet(2);
  swapped.spectrum_fn = [orig](const Vec4& k) {
    return orig.spectrum_fn(Vec4{k[1], k[0], 0, 0});
  };
  CHECK(rel_err(duflo_moore(swapped).value, d2.value) < 1e-13);

  const DufloMoore d4 = duflo_moore(morlet(4));
  CHECK(d4.converged);
  CHECK(d4.value > 0);
}

TEST_CASE("atom prefactors") {
  std::mt19937 gen(42);
  std::uniform_real_distribution<double> lam(0.3, 2.0), ang(0.0, 2 * pi);
  for (int dim : {2, 4})
    for (Normalization nm : {Normalization::l1, Normalization::l2})
      for (int it = 0; it < 50; ++it) {
        Atom a;
        a.mother = laplacian_gaussian(dim);
        a.A = dim == 2 ? DihedralSimilitude{lam(gen), 0.0, ang(gen), 0.0}
                       : DihedralSimilitude{lam(gen), lam(gen), ang(gen), ang(gen)};
        a.norm = nm;
        const double det = dim == 2 ? a.A.scale2() : a.A.scale2() * a.A.scale2();
        CHECK(rel_err(atom_prefactor_freq(a), atom_prefactor_space(a) * det) < 1e-13);
        if (nm == Normalization::l1)
          CHECK(rel_err(atom_prefactor_space(a), 1.0 / a.A.scale2()) < 1e-14);
        else
          CHECK(rel_err(atom_prefactor_space(a), std::pow(det, -0.5)) < 1e-14);
      }
  // the 2d frame normalization carries no frequency-side constant
  Atom flat;
  flat.mother = laplacian_gaussian(2);
  flat.A = DihedralSimilitude{1.7, 0.0, 0.3, 0.0};
  CHECK(atom_prefactor_freq(flat) == 1.0);
}

TEST_CASE("atom_spectrum: identity case and translation-invariant modulus") {
  for (int dim : {2, 4}) {
    Atom a;
    a.mother = laplacian_gaussian(dim);
    a.A = DihedralSimilitude{1.0, 0.0, 0.0, 0.0};
    std::mt19937 gen(7);
    std::normal_distribution<double> nd(0.0, 2.0);
    for (int it = 0; it < 100; ++it) {
      Vec4 k{};
      for (int ax = 0; ax < dim; ++ax) k[ax] = nd(gen);
      CHECK(std::abs(atom_spectrum(a, k) - a.mother.spectrum_fn(k)) <= 1e-15);

      Atom shifted = a;
      shifted.A = dim == 2 ? DihedralSimilitude{1.3, 0.0, 0.8, 0.0}
                           : DihedralSimilitude{1.3, 0.6, 0.8, 2.1};
      const double m0 = std::abs(atom_spectrum(shifted, k));
      for (int ax = 0; ax < dim; ++ax) shifted.b[ax] = nd(gen);
      CHECK(rel_err(std::abs(atom_spectrum(shifted, k)) + 1e-300, m0 + 1e-300) < 1e-12);
    }
  }
}

TEST_CASE("atom_spectrum concentrates at the transported peak frequency") {
  const BoxSpec box = make_box(2, 14.0, 64);
  Atom a;
  a.mother = morlet(2);  // peak at k0 e0 = (5, 0)
  a.A = DihedralSimilitude{0.9, 0.0, 2 * pi / 3, 0.0};
  a.b = {1.0, -2.0, 0, 0};
  const SampledField s = sample_atom_spectrum(a, box);
  std::size_t best = 0;
  for (std::size_t i = 1; i < s.values.size(); ++i)
    if (std::abs(s.values[i]) > std::abs(s.values[best])) best = i;
  int p[4];
  box.unrank(best, p);
  // peak should appear at A^{-T} (5,0) = (5/lambda) (cos t, sin t)
  const double kx = 5.0 / 0.9 * std::cos(2 * pi / 3);
  const double ky = 5.0 / 0.9 * std::sin(2 * pi / 3);
  const double bin = 2 * pi / 14.0;
  CHECK(std::abs(box.freq(0, p[0]) - kx) <= bin * 1.001);
  CHECK(std::abs(box.freq(1, p[1]) - ky) <= bin * 1.001);
}

TEST_CASE("atom_space: identity parameters reproduce the mother") {
  for (int dim : {2, 4}) {
    Atom a;
    a.mother = laplacian_gaussian(dim);
    a.A = DihedralSimilitude{1.0, 0.0, 0.0, 0.0};
    std::mt19937 gen(3);
    std::normal_distribution<double> nd(0.0, 1.5);
    for (int it = 0; it < 100; ++it) {
      Vec4 x{};
      for (int ax = 0; ax < dim; ++ax) x[ax] = nd(gen);
      CHECK(std::abs(atom_space(a, x) - a.mother.space_fn(x)) <= 1e-15);
    }
  }
}

TEST_CASE("l2-normalized atoms preserve the norm") {
  // 2d: lambda in a range where neither the spatial tail nor the spectral
  // tail leaks on a 14 x 14, 64^2 box
  const BoxSpec box2 = make_box(2, 14.0, 64);
  Atom m2;
  m2.mother = laplacian_gaussian(2);
  m2.A = DihedralSimilitude{1.0, 0.0, 0.0, 0.0};
  m2.norm = Normalization::l2;
  const double ref2 = norm2(sample_atom_space(m2, box2));
  CHECK(rel_err(ref2, 1.0 / (2 * pi)) < 1e-10);  // (2pi)^-2 \int |k|^4 e^{-|k|^2} d^2k

  std::mt19937 gen(11);
  std::uniform_real_distribution<double> lam(0.65, 1.1), ang(0.0, 2 * pi), tr(-5.0, 5.0);
  for (int it = 0; it < 5; ++it) {
    Atom a = m2;
    a.A = DihedralSimilitude{lam(gen), 0.0, ang(gen), 0.0};
    a.b = {tr(gen), tr(gen), 0, 0};
    CHECK(rel_err(norm2(sample_atom_space(a, box2)), ref2) < 1e-8);
  }

  // 4d on a 6.4^4, 32^4 box with the overall scale pinned near 0.52
  const BoxSpec box4 = make_box(4, 6.4, 32);
  Atom m4;
  m4.mother = laplacian_gaussian(4);
  m4.A = DihedralSimilitude{0.3, 0.42, 0.0, 0.0};
  m4.norm = Normalization::l2;
  const double ref4 = norm2(sample_atom_space(m4, box4));
  for (int it = 0; it < 2; ++it) {
    Atom a = m4;
    a.A = DihedralSimilitude{0.42, 0.3, ang(gen), ang(gen)};
    a.b = {tr(gen) * 0.3, tr(gen) * 0.3, tr(gen) * 0.3, tr(gen) * 0.3};
    CHECK(rel_err(norm2(sample_atom_space(a, box4)), ref4) < 1e-8);
  }
}

TEST_CASE("successive dilations and translations compose") {
  std::mt19937 gen(17);
  std::uniform_real_distribution<double> lam(0.6, 1.5), ang(0.0, 2 * pi), tr(-2.0, 2.0);
  std::normal_distribution<double> nd(0.0, 2.0);
  for (int dim : {2, 4})
    for (Normalization nm : {Normalization::l1, Normalization::l2})
      for (int it = 0; it < 20; ++it) {
        const DihedralSimilitude A =
            dim == 2 ? DihedralSimilitude{lam(gen), 0.0, ang(gen), 0.0}
                     : DihedralSimilitude{lam(gen), lam(gen), ang(gen), ang(gen)};
        const DihedralSimilitude Ap =
            dim == 2 ? DihedralSimilitude{lam(gen), 0.0, ang(gen), 0.0}
                     : DihedralSimilitude{lam(gen), lam(gen), ang(gen), ang(gen)};
        Vec4 b{}, bp{};
        for (int ax = 0; ax < dim; ++ax) {
          b[ax] = tr(gen);
          bp[ax] = tr(gen);
        }

        Atom inner_atom;
        inner_atom.mother = laplacian_gaussian(dim);
        inner_atom.A = Ap;
        inner_atom.b = bp;
        inner_atom.norm = nm;

        Atom composed = inner_atom;
        composed.A = polar_decompose(qmul(recompose(A), recompose(Ap)));
        const Vec4 Abp = A.apply(bp, dim);
        for (int ax = 0; ax < dim; ++ax) composed.b[ax] = b[ax] + Abp[ax];

        Atom outer;
        outer.mother = inner_atom.mother;
        outer.A = A;
        outer.norm = nm;
        const double pref = atom_prefactor_space(outer);

        for (int px = 0; px < 10; ++px) {
          Vec4 x{};
          for (int ax = 0; ax < dim; ++ax) x[ax] = nd(gen);
          Vec4 y{};
          for (int ax = 0; ax < dim; ++ax) y[ax] = x[ax] - b[ax];
          const cplx lhs = pref * atom_space(inner_atom, A.apply_inverse(y, dim));
          const cplx rhs = atom_space(composed, x);
          CHECK(std::abs(lhs - rhs) <= 1e-8 * (1.0 + std::abs(rhs)));
        }
      }
}

TEST_CASE("sampled atoms are periodic in the translation") {
  const BoxSpec box = make_box(2, 14.0, 32);
  Atom a;
  a.mother = laplacian_gaussian(2);
  a.A = DihedralSimilitude{1.2, 0.0, 0.7, 0.0};
  a.b = {3.0, -1.0, 0, 0};
  Atom shifted = a;
  shifted.b[0] += box.side[0];
  shifted.b[1] -= 2 * box.side[1];
  const SampledField f = sample_atom_space(a, box);
  const SampledField g = sample_atom_space(shifted, box);
  for (std::size_t i = 0; i < f.values.size(); ++i)
    CHECK(std::abs(f.values[i] - g.values[i]) <= 1e-14);
}

TEST_CASE("sampled space atoms transform to the closed-form spectrum") {
  // fft of the periodized space samples must equal sqrt(N)/vol times the
  // continuum atom spectrum at the bin frequencies
  std::mt19937 gen(23);
  std::uniform_real_distribution<double> ang(0.0, 2 * pi), tr(-4.0, 4.0);

  const BoxSpec box2 = make_box(2, 14.0, 64);
  for (const MotherWavelet& mw : {laplacian_gaussian(2), morlet(2), gaussian_bump(2)})
    for (Normalization nm : {Normalization::l1, Normalization::l2}) {
      Atom a;
      a.mother = mw;
      a.A = DihedralSimilitude{1.3, 0.0, ang(gen), 0.0};
      a.b = {tr(gen), tr(gen), 0, 0};
      a.norm = nm;
      const SampledField lhs = fft(sample_atom_space(a, box2));
      const SampledField rhs = sample_atom_spectrum(a, box2);
      double mx = 0;
      for (const cplx& v : rhs.values) mx = std::max(mx, std::abs(v));
      REQUIRE(mx > 0);
      for (std::size_t i = 0; i < lhs.values.size(); ++i)
        CHECK(std::abs(lhs.values[i] - rhs.values[i]) <= 1e-8 * mx);
    }

  const BoxSpec box4 = make_box(4, 3.2, 16);
  Atom a4;
  a4.mother = laplacian_gaussian(4);
  a4.A = DihedralSimilitude{0.9, 0.7, 0.5, 1.1};
  a4.b = {0.3, -0.2, 0.9, 0.1};
  const SampledField lhs = fft(sample_atom_space(a4, box4));
  const SampledField rhs = sample_atom_spectrum(a4, box4);
  double mx = 0;
  for (const cplx& v : rhs.values) mx = std::max(mx, std::abs(v));
  for (std::size_t i = 0; i < lhs.values.size(); ++i)
    CHECK(std::abs(lhs.values[i] - rhs.values[i]) <= 1e-8 * mx);
}

}  // TEST_SUITE
