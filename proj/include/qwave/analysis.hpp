#pragma once

#include <cstdint>
#include <memory>
#include <variant>
#include <vector>

#include "qwave/field.hpp"
#include "qwave/grid.hpp"
#include "qwave/wavelet.hpp"

namespace qwave {

// How translation-lattice points that fall off the FFT grid are handled:
// exact evaluates the phase ramp per translation (default, no position
// error); snap samples the per-cell cross-correlation at the nearest bin.
enum class TranslationMode { exact, snap };

struct AnalysisOptions {
  Normalization norm = Normalization::l1;
  TranslationMode translation_mode = TranslationMode::exact;
  double support_rel_tol = 1e-16;  // drop bins below this fraction of the cell peak
  int threads = 1;
};

struct CoefficientSet {
  std::variant<GridSpec2D, GridSpec4D> grid;
  std::vector<cplx> values;
};

// Precomputed per-cell spectral data: one cell per dilation-rotation, shared
// by all of its translations.
struct PlanCell {
  DihedralSimilitude A;
  double pref;                                   // frequency-side prefactor
  std::vector<std::int32_t> bins;                // support bin flat indices
  std::vector<std::array<std::uint16_t, 4>> ax;  // per-axis indices of each bin
  std::vector<cplx> psi;                         // pref * psi_hat(A^T k) on support
  std::vector<Vec4> bs;                          // translations, lexicographic
  std::size_t offset = 0;                        // first coefficient index
};

struct WaveletPlan {
  BoxSpec box;
  int dim = 2;
  MotherWavelet psi;
  AnalysisOptions opts;
  std::variant<GridSpec2D, GridSpec4D> grid;
  std::vector<PlanCell> cells;
  std::size_t total = 0;

  static WaveletPlan build(const MotherWavelet& psi, const GridSpec2D& grid,
                           const BoxSpec& box, const AnalysisOptions& opts = {});
  static WaveletPlan build(const MotherWavelet& psi, const GridSpec4D& grid,
                           const BoxSpec& box, const AnalysisOptions& opts = {});

  CoefficientSet analyze(const SampledField& f) const;
  SampledField synthesize(const CoefficientSet& c) const;
  SampledField frame_apply(const SampledField& f) const;
  // the cell's atoms realized from the plan's own spectral data
  SampledField member_field(std::size_t cell, std::size_t translation) const;
};

// Direct spatial quadrature against the periodized atom (slow-path oracle).
cplx slow_coefficient(const SampledField& f, const Atom& atom);

CoefficientSet analyze(const SampledField& f, const MotherWavelet& psi,
                       const GridSpec2D& grid, const AnalysisOptions& opts = {});
CoefficientSet analyze(const SampledField& f, const MotherWavelet& psi,
                       const GridSpec4D& grid, const AnalysisOptions& opts = {});
SampledField frame_apply(const SampledField& f, const MotherWavelet& psi,
                         const GridSpec2D& grid, const AnalysisOptions& opts = {});
SampledField frame_apply(const SampledField& f, const MotherWavelet& psi,
                         const GridSpec4D& grid, const AnalysisOptions& opts = {});

// A finite family of vectors on a common box with analysis and synthesis.
class FrameSystem {
 public:
  virtual ~FrameSystem() = default;
  virtual const BoxSpec& box() const = 0;
  virtual std::size_t size() const = 0;
  virtual std::vector<cplx> analyze(const SampledField& f) const = 0;
  virtual SampledField synthesize(const std::vector<cplx>& c) const = 0;
  SampledField frame_apply(const SampledField& f) const;
};

class FieldListSystem : public FrameSystem {
 public:
  explicit FieldListSystem(std::vector<SampledField> members);
  const BoxSpec& box() const override;
  std::size_t size() const override;
  std::vector<cplx> analyze(const SampledField& f) const override;
  SampledField synthesize(const std::vector<cplx>& c) const override;
  const std::vector<SampledField>& members() const { return members_; }

 private:
  std::vector<SampledField> members_;
};

class WaveletSystem : public FrameSystem {
 public:
  explicit WaveletSystem(WaveletPlan plan) : plan_(std::move(plan)) {}
  const BoxSpec& box() const override { return plan_.box; }
  std::size_t size() const override { return plan_.total; }
  std::vector<cplx> analyze(const SampledField& f) const override;
  SampledField synthesize(const std::vector<cplx>& c) const override;
  const WaveletPlan& plan() const { return plan_; }

 private:
  WaveletPlan plan_;
};

enum class ReconstructMethod { cg, richardson };

struct ReconstructOptions {
  int max_iters = 200;
  double tol = 1e-8;
  ReconstructMethod method = ReconstructMethod::cg;
  double bound_A = 0, bound_B = 0;  // required by richardson
};

struct ReconstructResult {
  SampledField field;
  int iterations = 0;
  double rel_residual = 0;
  bool converged = false;
};

ReconstructResult reconstruct_system(const FrameSystem& sys, const std::vector<cplx>& coeffs,
                                     const ReconstructOptions& opts = {});

SampledField reconstruct(const CoefficientSet& coeffs, const MotherWavelet& psi,
                         const BoxSpec& box, int iters, double tol,
                         const AnalysisOptions& opts = {});

}  // namespace qwave
