#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "qwave/analysis.hpp"
#include "qwave/field.hpp"
#include "qwave/grid.hpp"
#include "qwave/wavelet.hpp"

namespace qwave {

// Finite stand-in for the essential inf/sup over frequency space: wavevectors
// stratified as log-spaced moduli times quasi-uniform directions.  Successive
// rounds are nested (supersets), so minima only decrease and suprema only
// increase under refinement.
struct ProbeSet {
  int dim = 2;
  std::vector<Vec4> ks;
};

struct ProbeOptions {
  // modulus range; 0,0 derives it from the mother's spectral peak and the
  // grid's dilation span
  double r_min = 0.0, r_max = 0.0;
  int n_radial = 32;
  int n_angular = 24;
  int max_rounds = 5;
  double rel_tol = 5e-3;  // refinement stops when s, S, E all move less
  unsigned seed = 77;     // direction stream seed (dim 4)
};

ProbeSet make_probes(int dim, double r_min, double r_max, const ProbeOptions& opt,
                     int round);

// min / max over probes of sum over grid cells of |psihat(A_c^T k)|^2.
// Throws std::domain_error("empty probe set") when no probes are given.
double compute_s(const MotherWavelet& psi, const GridSpec2D& grid, const ProbeSet& probes);
double compute_s(const MotherWavelet& psi, const GridSpec4D& grid, const ProbeSet& probes);
double compute_S(const MotherWavelet& psi, const GridSpec2D& grid, const ProbeSet& probes);
double compute_S(const MotherWavelet& psi, const GridSpec4D& grid, const ProbeSet& probes);

// sup over probes of sum over cells of |psihat(y + shift)| |psihat(y)| with
// y = A_c^T k; alpha(0) equals compute_S on the same probe set.
double alpha(const MotherWavelet& psi, const GridSpec2D& grid, const Vec4& shift,
             const ProbeSet& probes);
double alpha(const MotherWavelet& psi, const GridSpec4D& grid, const Vec4& shift,
             const ProbeSet& probes);

// Correlation sum over the dual translation lattice.  The Cauchy-Schwarz form
// sqrt(alpha(u) alpha(-u)) is the default summand; `plain` evaluates alpha(u)
// alone for comparison.
enum class ESummand { geometric, plain };

struct EOptions {
  ESummand summand = ESummand::geometric;
  double shell_rel_stop = 1e-10;  // stop once a whole shell adds less than this share
  int max_shell = 12;
  bool* converged = nullptr;  // optional out-flag: tail threshold was reached
};

// Sum over nonzero integer lattice shifts u_mu with u_mu[ax] = 2 pi mu[ax] /
// beta[ax], accumulated shell by shell in |mu|_inf until the latest shell
// contributes less than shell_rel_stop of the running total.  Any beta <= 0
// throws std::domain_error("translation lattice degenerate").
double compute_E(const MotherWavelet& psi, const GridSpec2D& grid,
                 const std::array<double, 2>& betas, const ProbeSet& probes,
                 const EOptions& opt = {});
double compute_E(const MotherWavelet& psi, const GridSpec4D& grid,
                 const std::array<double, 4>& betas, const ProbeSet& probes,
                 const EOptions& opt = {});

struct FrameReport {
  double s_val = 0, S_val = 0, E_val = 0;
  double A_candidate = 0, B_candidate = 0;
  // extremal Rayleigh quotients of the frame operator over the probe signals
  double A_emp = 0, B_emp = 0;
  // extremal eigenvalues of the dense frame operator; only filled (and folded
  // into A_emp/B_emp) when the whole box is small enough to eigensolve
  double eig_min = 0, eig_max = 0;
  double const_factor = 0;   // lambda0^4/(beta0 beta1), resp. scale2^2/prod(beta)
  double tail_fraction = 0;  // outermost-ring share of the correlation sum
  bool probes_converged = false;
  bool dense_used = false;
  int rounds = 0;
  std::size_t probe_count = 0, pair_probe_count = 0;
  std::string verdict;  // "frame" | "not-frame" | "inconclusive"
};

struct BoundsOptions {
  ProbeOptions probes;
  ESummand summand = ESummand::geometric;
  double shell_rel_stop = 1e-10;
  int max_shell = 12;
  // sampling box for the empirical stage; leave empty (total() <= 1) to skip
  BoxSpec box{};
  // radial band for the empirical probe bins; 0,0 falls back to the probe range
  double band_lo = 0, band_hi = 0;
  double pair_slack = 1.0;        // admission window in units of pi/side
  std::size_t dense_limit = 256;  // dense eigensolve only for boxes this small
  AnalysisOptions analysis{};
};

// Candidate bounds A = c (s - E), B = c (S + E) with c the constant prefactor,
// refined until stable, plus the empirical Rayleigh extremes when a box is
// configured.  Verdict: "frame" when A_candidate > 0 and the measurement
// confirms the sandwich A_candidate <= A_emp <= B_emp <= B_candidate;
// "not-frame" when the probed band has a spectral hole or the empirical lower
// bound collapses; otherwise "inconclusive" (also whenever refinement did not
// settle or the empirical extremes contradict the candidate bounds).
FrameReport frame_verdict(const MotherWavelet& psi, const GridSpec2D& grid,
                          const BoundsOptions& opt = {});
FrameReport frame_verdict(const MotherWavelet& psi, const GridSpec4D& grid,
                          const BoundsOptions& opt = {});

// --- empirical oracle -------------------------------------------------------

struct EmpiricalReport {
  double A_emp = 0, B_emp = 0;
  double eig_min = 0, eig_max = 0;
  bool dense_used = false;
  std::size_t probe_count = 0, pair_probe_count = 0;
};

// Signed frequency bins whose |k| lies in [k_lo, k_hi].
std::vector<std::array<int, 4>> band_bins(const BoxSpec& box, double k_lo, double k_hi);

// Bin pairs whose frequency difference, pulled back through some cell map,
// lands within slack*pi/side of a nonzero dual-lattice point 2 pi mu / beta:
// exactly the pairs the translation lattice can alias together.
std::vector<std::pair<std::size_t, std::size_t>> alias_pairs(
    const BoxSpec& box, const std::vector<std::array<int, 4>>& bins,
    const GridSpec2D& grid, double slack = 1.0);
std::vector<std::pair<std::size_t, std::size_t>> alias_pairs(
    const BoxSpec& box, const std::vector<std::array<int, 4>>& bins,
    const GridSpec4D& grid, double slack = 1.0);

// Rayleigh quotient <f, S f> / <f, f> for a unit plane wave at each bin.
std::vector<double> rayleigh_quotients(const FrameSystem& sys,
                                       const std::vector<std::array<int, 4>>& bins);

// Extremes over explicit probe signals; when the box is small enough the dense
// frame operator is eigensolved and its extremal eigenvalues are folded in.
// Throws std::domain_error("empty probe set") when no probes are given.
EmpiricalReport empirical_bounds(const FrameSystem& sys,
                                 const std::vector<SampledField>& probe_signals,
                                 std::size_t dense_limit = 256);
// Same, over plane-wave bin probes plus aliased families: each connected
// component of the pair graph contributes the extremal eigenvalues of the
// operator compressed onto its span, so coarse translation lattices whose
// aliases merge many bins surface as a collapsing lower bound.
EmpiricalReport empirical_bounds(const FrameSystem& sys,
                                 const std::vector<std::array<int, 4>>& bins,
                                 const std::vector<std::pair<std::size_t, std::size_t>>& pairs,
                                 std::size_t dense_limit = 256);

}  // namespace qwave
