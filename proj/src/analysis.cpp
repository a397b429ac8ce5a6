#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "qwave/analysis.hpp"

namespace qwave {

namespace {

Atom cell_atom(const MotherWavelet& psi, const DihedralSimilitude& A, Normalization nm) {
  Atom a;
  a.mother = psi;
  a.A = A;
  a.norm = nm;
  return a;
}

// fill one cell's spectral support from its dilation-rotation
void fill_cell_support(PlanCell& cell, const MotherWavelet& psi, const BoxSpec& box,
                       const AnalysisOptions& opts) {
  const int dim = box.dim;
  cell.pref = atom_prefactor_freq(cell_atom(psi, cell.A, opts.norm));
  const std::size_t N = box.total();
  std::vector<cplx> vals(N);
  double peak = 0;
  int p[4];
  for (std::size_t i = 0; i < N; ++i) {
    box.unrank(i, p);
    Vec4 k{};
    for (int ax = 0; ax < dim; ++ax) k[ax] = box.freq(ax, p[ax]);
    vals[i] = cell.pref * psi.spectrum_fn(cell.A.apply_transpose(k, dim));
    peak = std::max(peak, std::abs(vals[i]));
  }
  const double thresh = opts.support_rel_tol * peak;
  for (std::size_t i = 0; i < N; ++i) {
    if (std::abs(vals[i]) <= thresh) continue;
    box.unrank(i, p);
    cell.bins.push_back(std::int32_t(i));
    std::array<std::uint16_t, 4> a{};
    for (int ax = 0; ax < dim; ++ax) a[std::size_t(ax)] = std::uint16_t(p[ax]);
    cell.ax.push_back(a);
    cell.psi.push_back(vals[i]);
  }
}

template <class Fn>
void run_over_cells(std::size_t ncells, int threads, Fn&& fn) {
  if (threads <= 1 || ncells < 2) {
    for (std::size_t c = 0; c < ncells; ++c) fn(c, 0);
    return;
  }
  const int T = std::min<std::size_t>(std::size_t(threads), ncells);
  std::vector<std::thread> pool;
  for (int w = 0; w < T; ++w)
    pool.emplace_back([&, w] {
      const std::size_t lo = ncells * std::size_t(w) / std::size_t(T);
      const std::size_t hi = ncells * std::size_t(w + 1) / std::size_t(T);
      for (std::size_t c = lo; c < hi; ++c) fn(c, w);
    });
  for (auto& t : pool) t.join();
}

// per-axis phase table for exp(+i k_p . b) factored over axes
void phase_tables(const BoxSpec& box, const Vec4& b, std::array<std::vector<cplx>, 4>& omega) {
  for (int ax = 0; ax < box.dim; ++ax) {
    omega[std::size_t(ax)].resize(std::size_t(box.n[ax]));
    for (int p = 0; p < box.n[ax]; ++p)
      omega[std::size_t(ax)][std::size_t(p)] = std::exp(cplx(0.0, box.freq(ax, p) * b[ax]));
  }
}

std::size_t snap_bin(const BoxSpec& box, const Vec4& b) {
  int m[4] = {};
  for (int ax = 0; ax < box.dim; ++ax) {
    const double step = box.side[ax] / box.n[ax];
    long q = std::lround(b[ax] / step);
    q %= box.n[ax];
    if (q < 0) q += box.n[ax];
    m[ax] = int(q);
  }
  return box.rank(m);
}

}  // namespace

WaveletPlan WaveletPlan::build(const MotherWavelet& psi, const GridSpec2D& grid,
                               const BoxSpec& box, const AnalysisOptions& opts) {
  if (box.dim != 2 || psi.dim != 2) throw std::invalid_argument("box mismatch");
  WaveletPlan plan;
  plan.box = box;
  plan.dim = 2;
  plan.psi = psi;
  plan.opts = opts;
  plan.grid = grid;
  const auto pts = enumerate_grid_2d(grid);
  const std::size_t per = std::size_t(2 * grid.m_range + 1) * std::size_t(2 * grid.m_range + 1);
  for (std::size_t i = 0; i < pts.size(); i += per) {
    PlanCell cell;
    cell.A = pts[i].sim();
    cell.offset = i;
    for (std::size_t q = 0; q < per; ++q)
      cell.bs.push_back(Vec4{pts[i + q].b[0], pts[i + q].b[1], 0, 0});
    plan.cells.push_back(std::move(cell));
  }
  plan.total = pts.size();
  run_over_cells(plan.cells.size(), opts.threads, [&](std::size_t c, int) {
    fill_cell_support(plan.cells[c], psi, box, opts);
  });
  return plan;
}

WaveletPlan WaveletPlan::build(const MotherWavelet& psi, const GridSpec4D& grid,
                               const BoxSpec& box, const AnalysisOptions& opts) {
  if (box.dim != 4 || psi.dim != 4) throw std::invalid_argument("box mismatch");
  WaveletPlan plan;
  plan.box = box;
  plan.dim = 4;
  plan.psi = psi;
  plan.opts = opts;
  plan.grid = grid;
  const auto pts = enumerate_grid_4d(grid);
  std::size_t per = 1;
  for (int ax = 0; ax < 4; ++ax) per *= std::size_t(2 * grid.m_range + 1);
  for (std::size_t i = 0; i < pts.size(); i += per) {
    PlanCell cell;
    cell.A = pts[i].A;
    cell.offset = i;
    for (std::size_t q = 0; q < per; ++q) {
      const auto& b = pts[i + q].b;
      cell.bs.push_back(Vec4{b[0], b[1], b[2], b[3]});
    }
    plan.cells.push_back(std::move(cell));
  }
  plan.total = pts.size();
  run_over_cells(plan.cells.size(), opts.threads, [&](std::size_t c, int) {
    fill_cell_support(plan.cells[c], psi, box, opts);
  });
  return plan;
}

CoefficientSet WaveletPlan::analyze(const SampledField& f) const {
  require_same_box(f.box, box);
  std::vector<cplx> fhat = f.values;
  dft_inplace(fhat, box, -1);
  const double inv_sqrtN = 1.0 / std::sqrt(double(box.total()));

  CoefficientSet out;
  out.grid = grid;
  out.values.assign(total, cplx(0));

  run_over_cells(cells.size(), opts.threads, [&](std::size_t c, int) {
    const PlanCell& cell = cells[c];
    const std::size_t ns = cell.bins.size();
    std::vector<cplx> w(ns);
    for (std::size_t j = 0; j < ns; ++j)
      w[j] = std::conj(cell.psi[j]) * fhat[std::size_t(cell.bins[j])];

    if (opts.translation_mode == TranslationMode::exact) {
      std::array<std::vector<cplx>, 4> omega;
      for (std::size_t mi = 0; mi < cell.bs.size(); ++mi) {
        phase_tables(box, cell.bs[mi], omega);
        cplx acc = 0;
        if (dim == 2) {
          for (std::size_t j = 0; j < ns; ++j)
            acc += w[j] * (omega[0][cell.ax[j][0]] * omega[1][cell.ax[j][1]]);
        } else {
          for (std::size_t j = 0; j < ns; ++j)
            acc += w[j] * (omega[0][cell.ax[j][0]] * omega[1][cell.ax[j][1]]) *
                   (omega[2][cell.ax[j][2]] * omega[3][cell.ax[j][3]]);
        }
        out.values[cell.offset + mi] = acc * inv_sqrtN;
      }
    } else {
      // cross-correlation over the whole box, read at the nearest bin
      std::vector<cplx> corr(box.total(), cplx(0));
      for (std::size_t j = 0; j < ns; ++j) corr[std::size_t(cell.bins[j])] = w[j] * inv_sqrtN;
      dft_inplace(corr, box, +1);
      const double sqrtN = std::sqrt(double(box.total()));
      for (std::size_t mi = 0; mi < cell.bs.size(); ++mi)
        out.values[cell.offset + mi] = sqrtN * corr[snap_bin(box, cell.bs[mi])];
    }
  });
  return out;
}

SampledField WaveletPlan::synthesize(const CoefficientSet& c) const {
  if (c.values.size() != total) throw std::invalid_argument("box mismatch");
  const double K = std::sqrt(double(box.total())) / box.volume();
  const std::size_t nworkers = std::size_t(std::max(1, opts.threads));
  std::vector<std::vector<cplx>> partial(nworkers);
  for (auto& b : partial) b.assign(box.total(), cplx(0));

  run_over_cells(cells.size(), opts.threads, [&](std::size_t ci, int worker) {
    const PlanCell& cell = cells[ci];
    const std::size_t ns = cell.bins.size();
    std::vector<cplx>& spec = partial[std::size_t(worker)];
    std::vector<cplx> acc(ns, cplx(0));

    if (opts.translation_mode == TranslationMode::exact) {
      std::array<std::vector<cplx>, 4> omega;
      for (std::size_t mi = 0; mi < cell.bs.size(); ++mi) {
        phase_tables(box, cell.bs[mi], omega);
        const cplx cv = c.values[cell.offset + mi];
        if (dim == 2) {
          for (std::size_t j = 0; j < ns; ++j)
            acc[j] += cv * std::conj(omega[0][cell.ax[j][0]] * omega[1][cell.ax[j][1]]);
        } else {
          for (std::size_t j = 0; j < ns; ++j)
            acc[j] += cv * std::conj(omega[0][cell.ax[j][0]] * omega[1][cell.ax[j][1]] *
                                     omega[2][cell.ax[j][2]] * omega[3][cell.ax[j][3]]);
        }
      }
    } else {
      std::vector<cplx> scatter(box.total(), cplx(0));
      for (std::size_t mi = 0; mi < cell.bs.size(); ++mi)
        scatter[snap_bin(box, cell.bs[mi])] += c.values[cell.offset + mi];
      dft_inplace(scatter, box, -1);
      const double sqrtN = std::sqrt(double(box.total()));
      for (std::size_t j = 0; j < ns; ++j) acc[j] = sqrtN * scatter[std::size_t(cell.bins[j])];
    }
    for (std::size_t j = 0; j < ns; ++j)
      spec[std::size_t(cell.bins[j])] += K * cell.psi[j] * acc[j];
  });

  SampledField out(box);
  out.values = std::move(partial[0]);
  for (std::size_t w = 1; w < nworkers; ++w)
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] += partial[w][i];
  dft_inplace(out.values, box, +1);
  return out;
}

SampledField WaveletPlan::frame_apply(const SampledField& f) const { return synthesize(analyze(f)); }

SampledField WaveletPlan::member_field(std::size_t cell, std::size_t translation) const {
  const PlanCell& pc = cells.at(cell);
  const Vec4& b = pc.bs.at(translation);
  const double K = std::sqrt(double(box.total())) / box.volume();
  SampledField out(box);
  int p[4];
  for (std::size_t j = 0; j < pc.bins.size(); ++j) {
    box.unrank(std::size_t(pc.bins[j]), p);
    double phase = 0;
    for (int ax = 0; ax < dim; ++ax) phase -= box.freq(ax, p[ax]) * b[ax];
    out.values[std::size_t(pc.bins[j])] = K * pc.psi[j] * std::exp(cplx(0.0, phase));
  }
  dft_inplace(out.values, box, +1);
  return out;
}

cplx slow_coefficient(const SampledField& f, const Atom& atom) {
  return inner(sample_atom_space(atom, f.box), f);
}

CoefficientSet analyze(const SampledField& f, const MotherWavelet& psi, const GridSpec2D& grid,
                       const AnalysisOptions& opts) {
  return WaveletPlan::build(psi, grid, f.box, opts).analyze(f);
}

CoefficientSet analyze(const SampledField& f, const MotherWavelet& psi, const GridSpec4D& grid,
                       const AnalysisOptions& opts) {
  return WaveletPlan::build(psi, grid, f.box, opts).analyze(f);
}

SampledField frame_apply(const SampledField& f, const MotherWavelet& psi, const GridSpec2D& grid,
                         const AnalysisOptions& opts) {
  return WaveletPlan::build(psi, grid, f.box, opts).frame_apply(f);
}

SampledField frame_apply(const SampledField& f, const MotherWavelet& psi, const GridSpec4D& grid,
                         const AnalysisOptions& opts) {
  return WaveletPlan::build(psi, grid, f.box, opts).frame_apply(f);
}

SampledField FrameSystem::frame_apply(const SampledField& f) const {
  return synthesize(analyze(f));
}

FieldListSystem::FieldListSystem(std::vector<SampledField> members)
    : members_(std::move(members)) {
  if (members_.empty()) throw std::domain_error("empty probe set");
  for (const auto& m : members_) require_same_box(m.box, members_[0].box);
}

const BoxSpec& FieldListSystem::box() const { return members_[0].box; }

std::size_t FieldListSystem::size() const { return members_.size(); }

std::vector<cplx> FieldListSystem::analyze(const SampledField& f) const {
  std::vector<cplx> c(members_.size());
  for (std::size_t n = 0; n < members_.size(); ++n) c[n] = inner(members_[n], f);
  return c;
}

SampledField FieldListSystem::synthesize(const std::vector<cplx>& c) const {
  if (c.size() != members_.size()) throw std::invalid_argument("box mismatch");
  SampledField out(members_[0].box);
  for (std::size_t n = 0; n < members_.size(); ++n)
    for (std::size_t i = 0; i < out.values.size(); ++i)
      out.values[i] += c[n] * members_[n].values[i];
  return out;
}

std::vector<cplx> WaveletSystem::analyze(const SampledField& f) const {
  return plan_.analyze(f).values;
}

SampledField WaveletSystem::synthesize(const std::vector<cplx>& c) const {
  CoefficientSet cs;
  cs.grid = plan_.grid;
  cs.values = c;
  return plan_.synthesize(cs);
}

namespace {

double vdot_real(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    acc += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
  return acc;
}

}  // namespace

ReconstructResult reconstruct_system(const FrameSystem& sys, const std::vector<cplx>& coeffs,
                                     const ReconstructOptions& opts) {
  const SampledField g = sys.synthesize(coeffs);
  ReconstructResult res;
  res.field = SampledField(g.box);
  const double gn2 = vdot_real(g.values, g.values);
  if (gn2 == 0) {
    res.converged = true;
    return res;
  }

  if (opts.method == ReconstructMethod::richardson) {
    if (!(opts.bound_A > 0) || !(opts.bound_B >= opts.bound_A))
      throw std::invalid_argument("richardson requires frame bounds");
    const double relax = 2.0 / (opts.bound_A + opts.bound_B);
    SampledField x(g.box);
    for (int it = 1; it <= opts.max_iters; ++it) {
      const SampledField Sx = sys.frame_apply(x);
      std::vector<cplx> r = g.values;
      for (std::size_t i = 0; i < r.size(); ++i) r[i] -= Sx.values[i];
      res.rel_residual = std::sqrt(vdot_real(r, r) / gn2);
      res.iterations = it - 1;
      if (res.rel_residual <= opts.tol) {
        res.converged = true;
        break;
      }
      for (std::size_t i = 0; i < x.values.size(); ++i) x.values[i] += relax * r[i];
      res.iterations = it;
    }
    // report the state after the last correction
    const SampledField Sx = sys.frame_apply(x);
    std::vector<cplx> r = g.values;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= Sx.values[i];
    res.rel_residual = std::sqrt(vdot_real(r, r) / gn2);
    res.converged = res.rel_residual <= opts.tol;
    res.field = std::move(x);
    return res;
  }

  // conjugate gradients on the positive-semidefinite frame operator
  SampledField x(g.box);
  std::vector<cplx> r = g.values;
  std::vector<cplx> p = r;
  double rs = gn2;
  double best = std::sqrt(rs / gn2);
  int best_it = 0;
  for (int it = 1; it <= opts.max_iters; ++it) {
    SampledField pf(g.box);
    pf.values = p;
    const SampledField Ap = sys.frame_apply(pf);
    const double den = vdot_real(p, Ap.values);
    if (!(den > 0)) throw std::runtime_error("frame too loose or not a frame");
    const double alpha = rs / den;
    for (std::size_t i = 0; i < x.values.size(); ++i) {
      x.values[i] += alpha * p[i];
      r[i] -= alpha * Ap.values[i];
    }
    const double rs_new = vdot_real(r, r);
    res.rel_residual = std::sqrt(rs_new / gn2);
    res.iterations = it;
    if (res.rel_residual <= opts.tol) {
      res.converged = true;
      break;
    }
    if (res.rel_residual < best) {
      best = res.rel_residual;
      best_it = it;
    } else if (it - best_it >= 10) {
      // residual non-decreasing for ten iterations while above tol
      throw std::runtime_error("frame too loose or not a frame");
    }
    const double beta = rs_new / rs;
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = r[i] + beta * p[i];
    rs = rs_new;
  }
  res.field = std::move(x);
  return res;
}

SampledField reconstruct(const CoefficientSet& coeffs, const MotherWavelet& psi,
                         const BoxSpec& box, int iters, double tol,
                         const AnalysisOptions& opts) {
  ReconstructOptions ropts;
  ropts.max_iters = iters;
  ropts.tol = tol;
  if (const auto* g2 = std::get_if<GridSpec2D>(&coeffs.grid)) {
    WaveletSystem sys(WaveletPlan::build(psi, *g2, box, opts));
    return reconstruct_system(sys, coeffs.values, ropts).field;
  }
  WaveletSystem sys(WaveletPlan::build(psi, std::get<GridSpec4D>(coeffs.grid), box, opts));
  return reconstruct_system(sys, coeffs.values, ropts).field;
}

}  // namespace qwave
