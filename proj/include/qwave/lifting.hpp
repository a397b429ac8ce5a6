#pragma once

#include <cstddef>
#include <vector>

#include "qwave/analysis.hpp"
#include "qwave/field.hpp"
#include "qwave/frame_bounds.hpp"

namespace qwave {

// Placement of a complex family inside the quaternionic pair form.
// diagonal realizes member n as (phi_n, 0), whose matrix view is
// diag(phi_n, conj phi_n); mixed realizes (phi_n, -conj phi_n)/sqrt(2).
// Both choices generate the same rank-one projections and hence carry the
// frame bounds of the complex family unchanged.
enum class LiftMode { diagonal, mixed };

class LiftedSystem {
 public:
  LiftedSystem(std::vector<SampledField> phis, LiftMode mode);

  const BoxSpec& box() const { return source_.front().box; }
  std::size_t size() const { return source_.size(); }
  LiftMode mode() const { return mode_; }
  const std::vector<SampledField>& source() const { return source_; }

  // Member n realized on demand; pair storage only, never 2x2 grids.
  QuaternionField member(std::size_t n) const;

  // (member_n | F)
  Quaternion coefficient(std::size_t n, const QuaternionField& F) const;

 private:
  std::vector<SampledField> source_;
  LiftMode mode_;
};

// throws std::invalid_argument on an empty family or mismatched boxes
LiftedSystem lift(std::vector<SampledField> phis, LiftMode mode);

// Pointwise conjugates; an orthonormal family stays orthonormal and a frame
// keeps its bounds (the Gram matrix is conjugated entrywise).
std::vector<SampledField> conjugate_system(const std::vector<SampledField>& phis);

struct Mat2c {
  cplx m11, m12, m21, m22;
};

// (F | G) evaluated entrywise as four independent complex pairings of the
// bra and ket component rows -- the redundant matrix form of qinner, kept
// for diagnostics that must see cancellation happen numerically.
Mat2c pairing_matrix(const QuaternionField& F, const QuaternionField& G);

// |(F | G)|^2 = (F|G)^dag (F|G) from the entrywise pairing matrix.  For
// exact pair-form data this is a real multiple of the identity; the
// off-diagonal residue measures floating-point cancellation only.
Mat2c modulus_matrix(const QuaternionField& F, const QuaternionField& G);

struct Expansion {
  std::vector<Quaternion> coeffs;  // q_n = (member_n | F)
  QuaternionField partial_sum;     // sum_n member_n q_n
  double residual = 0;             // ||F - partial_sum|| / max(||F||, eps)
};

// Coefficients against every member plus the partial-sum reconstruction.
// The residual vanishes exactly when the lifted family spans the sampled
// space (complete fixtures).
Expansion expand(const QuaternionField& F, const LiftedSystem& sys);

struct PreservationReport {
  double A = 0, B = 0;      // bounds the sums were checked against
  double worst_low = 0;     // min over probes/entries of sum/||F||^2 - A
  double worst_high = 0;    // max over probes/entries of sum/||F||^2 - B
  double max_offdiag = 0;   // largest off-diagonal of any summed modulus
                            // matrix, relative to its diagonal magnitude
  std::size_t probe_count = 0;
  bool passed = false;
};

// Checks A ||F||^2 <= sum_n |(F | member_n)|^2 <= B ||F||^2 diagonally on
// each probe after lifting phis; the modulus matrices are diagonal up to
// rounding, and the off-diagonal residue is asserted below 1e-12.  (A, B)
// must be measured bounds for phis, and probes must lie in the subspace
// those measurements covered.
PreservationReport verify_frame_preservation(const std::vector<SampledField>& phis,
                                             double A, double B,
                                             const std::vector<QuaternionField>& probes,
                                             double tol = 1e-9);

// Extremes of sum_n |(F | member_n)|^2 / ||F||^2 over the probe fields.
// With probes {(p,0)} u {(0,p)} over the class used for the complex
// empirical bounds, these reproduce the complex A_emp/B_emp.
EmpiricalReport lifted_empirical_bounds(const LiftedSystem& sys,
                                        const std::vector<QuaternionField>& probes);

struct LiftedFrame {
  LiftedSystem system;
  FrameReport report;
};

// Certifies the wavelet family on the box first; a verdict other than
// "frame" refuses with "underlying complex system not certified as frame".
// On success every atom is realized in enumeration order and lifted
// diagonally, and the certification report is returned alongside.
LiftedFrame lift_wavelet_frame(const MotherWavelet& psi, const GridSpec2D& grid,
                               const BoundsOptions& opt);
LiftedFrame lift_wavelet_frame(const MotherWavelet& psi, const GridSpec4D& grid,
                               const BoundsOptions& opt);

}  // namespace qwave
