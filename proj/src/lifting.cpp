#include "qwave/lifting.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <utility>

namespace qwave {

namespace {

SampledField conj_field(const SampledField& f) {
  SampledField out(f.box);
  for (std::size_t i = 0; i < f.values.size(); ++i) out.values[i] = std::conj(f.values[i]);
  return out;
}

void add_scaled(QuaternionField& acc, const QuaternionField& m, const Quaternion& q) {
  const cplx z1 = q.z1(), z2 = q.z2();
  for (std::size_t i = 0; i < acc.f1.values.size(); ++i) {
    const cplx a1 = m.f1.values[i], a2 = m.f2.values[i];
    acc.f1.values[i] += a1 * z1 - std::conj(a2) * z2;
    acc.f2.values[i] += a2 * z1 + std::conj(a1) * z2;
  }
}

}  // namespace

LiftedSystem::LiftedSystem(std::vector<SampledField> phis, LiftMode mode)
    : source_(std::move(phis)), mode_(mode) {
  if (source_.empty()) throw std::invalid_argument("empty family");
  for (const SampledField& f : source_) require_same_box(source_.front().box, f.box);
}

QuaternionField LiftedSystem::member(std::size_t n) const {
  const SampledField& phi = source_[n];
  QuaternionField out(phi.box);
  if (mode_ == LiftMode::diagonal) {
    out.f1.values = phi.values;
  } else {
    const double inv_rt2 = 1.0 / std::sqrt(2.0);
    for (std::size_t i = 0; i < phi.values.size(); ++i) {
      out.f1.values[i] = phi.values[i] * inv_rt2;
      out.f2.values[i] = -std::conj(phi.values[i]) * inv_rt2;
    }
  }
  return out;
}

Quaternion LiftedSystem::coefficient(std::size_t n, const QuaternionField& F) const {
  return qinner(member(n), F);
}

LiftedSystem lift(std::vector<SampledField> phis, LiftMode mode) {
  return LiftedSystem(std::move(phis), mode);
}

std::vector<SampledField> conjugate_system(const std::vector<SampledField>& phis) {
  std::vector<SampledField> out;
  out.reserve(phis.size());
  for (const SampledField& f : phis) out.push_back(conj_field(f));
  return out;
}

Mat2c pairing_matrix(const QuaternionField& F, const QuaternionField& G) {
  require_same_box(F.f1.box, G.f1.box);
  const SampledField cF1 = conj_field(F.f1), cF2 = conj_field(F.f2);
  const SampledField cG1 = conj_field(G.f1), cG2 = conj_field(G.f2);
  Mat2c m;
  m.m11 = inner(F.f1, G.f1) + inner(F.f2, G.f2);
  m.m12 = -inner(F.f1, cG2) + inner(F.f2, cG1);
  m.m21 = -inner(cF2, G.f1) + inner(cF1, G.f2);
  m.m22 = inner(cF2, cG2) + inner(cF1, cG1);
  return m;
}

Mat2c modulus_matrix(const QuaternionField& F, const QuaternionField& G) {
  const Mat2c p = pairing_matrix(F, G);
  Mat2c m;
  m.m11 = std::conj(p.m11) * p.m11 + std::conj(p.m21) * p.m21;
  m.m12 = std::conj(p.m11) * p.m12 + std::conj(p.m21) * p.m22;
  m.m21 = std::conj(p.m12) * p.m11 + std::conj(p.m22) * p.m21;
  m.m22 = std::conj(p.m12) * p.m12 + std::conj(p.m22) * p.m22;
  return m;
}

Expansion expand(const QuaternionField& F, const LiftedSystem& sys) {
  require_same_box(F.f1.box, sys.box());
  Expansion out;
  out.coeffs.reserve(sys.size());
  out.partial_sum = QuaternionField(sys.box());
  for (std::size_t n = 0; n < sys.size(); ++n) {
    const QuaternionField m = sys.member(n);
    const Quaternion q = qinner(m, F);
    out.coeffs.push_back(q);
    add_scaled(out.partial_sum, m, q);
  }
  double diff = 0;
  {
    QuaternionField d(sys.box());
    for (std::size_t i = 0; i < d.f1.values.size(); ++i) {
      d.f1.values[i] = F.f1.values[i] - out.partial_sum.f1.values[i];
      d.f2.values[i] = F.f2.values[i] - out.partial_sum.f2.values[i];
    }
    diff = norm2(d);
  }
  const double ref = std::max(norm2(F), std::numeric_limits<double>::min());
  out.residual = std::sqrt(diff / ref);
  return out;
}

PreservationReport verify_frame_preservation(const std::vector<SampledField>& phis,
                                             double A, double B,
                                             const std::vector<QuaternionField>& probes,
                                             double tol) {
  const LiftedSystem sys = lift(phis, LiftMode::diagonal);
  PreservationReport rep;
  rep.A = A;
  rep.B = B;
  rep.probe_count = probes.size();
  rep.worst_low = std::numeric_limits<double>::infinity();
  rep.worst_high = -std::numeric_limits<double>::infinity();
  if (probes.empty()) throw std::domain_error("empty probe set");

  std::vector<Mat2c> sums(probes.size(), Mat2c{0, 0, 0, 0});
  for (std::size_t n = 0; n < sys.size(); ++n) {
    const QuaternionField m = sys.member(n);
    for (std::size_t p = 0; p < probes.size(); ++p) {
      const Mat2c mm = modulus_matrix(probes[p], m);
      sums[p].m11 += mm.m11;
      sums[p].m12 += mm.m12;
      sums[p].m21 += mm.m21;
      sums[p].m22 += mm.m22;
    }
  }
  for (std::size_t p = 0; p < probes.size(); ++p) {
    const double n2 = norm2(probes[p]);
    if (n2 <= 0) continue;
    const double d1 = sums[p].m11.real() / n2;
    const double d2 = sums[p].m22.real() / n2;
    const double dscale = std::max({std::abs(sums[p].m11), std::abs(sums[p].m22),
                                    std::numeric_limits<double>::min()});
    const double off = std::max(std::abs(sums[p].m12), std::abs(sums[p].m21)) / dscale;
    rep.max_offdiag = std::max(rep.max_offdiag, off);
    rep.worst_low = std::min(rep.worst_low, std::min(d1, d2) - A);
    rep.worst_high = std::max(rep.worst_high, std::max(d1, d2) - B);
  }
  const double slack = tol * std::max(B, 1.0);
  rep.passed = rep.worst_low >= -slack && rep.worst_high <= slack && rep.max_offdiag < 1e-12;
  return rep;
}

EmpiricalReport lifted_empirical_bounds(const LiftedSystem& sys,
                                        const std::vector<QuaternionField>& probes) {
  EmpiricalReport rep;
  rep.A_emp = std::numeric_limits<double>::infinity();
  rep.B_emp = -std::numeric_limits<double>::infinity();
  std::vector<double> acc(probes.size(), 0.0);
  for (std::size_t n = 0; n < sys.size(); ++n) {
    const QuaternionField m = sys.member(n);
    for (std::size_t p = 0; p < probes.size(); ++p) acc[p] += qinner(m, probes[p]).norm2();
  }
  std::size_t used = 0;
  for (std::size_t p = 0; p < probes.size(); ++p) {
    const double n2 = norm2(probes[p]);
    if (n2 <= 0) continue;
    const double r = acc[p] / n2;
    rep.A_emp = std::min(rep.A_emp, r);
    rep.B_emp = std::max(rep.B_emp, r);
    ++used;
  }
  if (used == 0) throw std::domain_error("empty probe set");
  rep.probe_count = used;
  return rep;
}

namespace {

template <typename Grid>
LiftedFrame lift_wavelet_frame_impl(const MotherWavelet& psi, const Grid& grid,
                                    const BoundsOptions& opt) {
  FrameReport report = frame_verdict(psi, grid, opt);
  if (report.verdict != "frame")
    throw std::runtime_error("underlying complex system not certified as frame");
  const WaveletPlan plan = WaveletPlan::build(psi, grid, opt.box, opt.analysis);
  std::vector<SampledField> atoms;
  atoms.reserve(plan.total);
  for (std::size_t c = 0; c < plan.cells.size(); ++c)
    for (std::size_t t = 0; t < plan.cells[c].bs.size(); ++t)
      atoms.push_back(plan.member_field(c, t));
  return LiftedFrame{LiftedSystem(std::move(atoms), LiftMode::diagonal), std::move(report)};
}

}  // namespace

LiftedFrame lift_wavelet_frame(const MotherWavelet& psi, const GridSpec2D& grid,
                               const BoundsOptions& opt) {
  return lift_wavelet_frame_impl(psi, grid, opt);
}

LiftedFrame lift_wavelet_frame(const MotherWavelet& psi, const GridSpec4D& grid,
                               const BoundsOptions& opt) {
  return lift_wavelet_frame_impl(psi, grid, opt);
}

}  // namespace qwave
