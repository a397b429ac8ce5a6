#pragma once

#include <functional>
#include <string>

#include "qwave/field.hpp"
#include "qwave/quaternion.hpp"

namespace qwave {

// Dilation normalization for atoms: l1 keeps the frame constants literal
// (1/scale^2 in space), l2 preserves the L2 norm (det^{-1/2}).
enum class Normalization { l1, l2 };

// Defined by a closed-form spectrum; space_fn is its inverse Fourier
// transform in the physical convention f(x) = (2pi)^-d \int fhat e^{ikx} dk.
struct MotherWavelet {
  int dim = 2;
  std::string name;
  std::function<cplx(const Vec4&)> spectrum_fn;
  std::function<cplx(const Vec4&)> space_fn;
  // |spectrum|^2 as a function of |k| when the modulus is radial (quadrature fast path)
  std::function<double(double)> radial_abs2;
  // |space_fn| is negligible beyond this radius
  double space_cutoff = 9.5;
};

// |k|^2 exp(-|k|^2/2): isotropic, admissible
MotherWavelet laplacian_gaussian(int dim);
// directional Gaussian bump at k0*e_0 with the DC-cancelling correction term
MotherWavelet morlet(int dim, double k0 = 5.0);
// plain Gaussian: nonzero DC, must be rejected by admissibility
MotherWavelet gaussian_bump(int dim);

struct Atom {
  MotherWavelet mother;
  DihedralSimilitude A;
  Vec4 b{};
  Normalization norm = Normalization::l1;
};

double atom_prefactor_space(const Atom& a);
double atom_prefactor_freq(const Atom& a);

// pref * exp(-i k.b) * psi_hat(A^T k)
cplx atom_spectrum(const Atom& a, const Vec4& k);
// pref * psi(A^{-1}(x - b)); requires the mother's space form
cplx atom_space(const Atom& a, const Vec4& x);

// periodized atom: image sum of atom_space over box translates
SampledField sample_atom_space(const Atom& a, const BoxSpec& box);
// the unitary-DFT image of the periodized atom: sqrt(N)/volume * atom_spectrum
// at each bin frequency (exact up to spectral tail aliasing)
SampledField sample_atom_spectrum(const Atom& a, const BoxSpec& box);

struct DufloMooreOptions {
  double box_half = 12.0;  // frequency box half-width
  int n0 = 32;             // lattice bins per axis at the first level
  int max_levels = 5;      // each level halves the spacing
  double rel_tol = 1e-3;   // Cauchy threshold on successive levels
};

struct DufloMoore {
  double value = 0;
  bool converged = false;
  double last_rel_change = 0;
  int levels = 0;
};

// quadratic-form admissibility integral: (2pi)^d \int |psi_hat|^2 / |k|^d dk,
// midpoint-free lattice excluding the zero bin, refined until Cauchy-stable
DufloMoore duflo_moore(const MotherWavelet& psi, const DufloMooreOptions& opts = {});
// value of the above; throws if the refinement fails to settle
double duflo_moore_norm(const MotherWavelet& psi);

}  // namespace qwave
