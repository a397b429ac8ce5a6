#include "qwave/frame_bounds.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>

namespace qwave {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

struct Cells {
  int dim = 2;
  std::vector<DihedralSimilitude> A;
  std::vector<char> outer;  // outermost scale ring (truncation boundary)
};

Cells cells_of(const GridSpec2D& g) {
  g.validate();
  const auto pts = enumerate_grid_2d(g);
  const int w = 2 * g.m_range + 1;
  const std::size_t per = std::size_t(w) * w;
  Cells cells;
  cells.dim = 2;
  for (std::size_t i = 0; i < pts.size(); i += per) {
    cells.A.push_back(pts[i].sim());
    cells.outer.push_back(pts[i].t == g.t_max ? 1 : 0);
  }
  return cells;
}

Cells cells_of(const GridSpec4D& g) {
  g.validate();
  const auto pts = enumerate_grid_4d(g);
  const int w = 2 * g.m_range + 1;
  const std::size_t per = std::size_t(w) * w * w * w;
  Cells cells;
  cells.dim = 4;
  for (std::size_t i = 0; i < pts.size(); i += per) {
    cells.A.push_back(pts[i].A);
    cells.outer.push_back((pts[i].t == g.t_max || pts[i].j == g.j_max) ? 1 : 0);
  }
  return cells;
}

// per probe x cell: the pulled-back frequency A^T k and |psihat| there
struct Cache {
  std::size_t np = 0, nc = 0;
  int dim = 2;
  const MotherWavelet* psi = nullptr;
  std::vector<Vec4> y;
  std::vector<double> mag;
  std::vector<char> outer;
};

Cache build_cache(const MotherWavelet& psi, const Cells& cells, const ProbeSet& probes) {
  if (probes.ks.empty()) throw std::domain_error("empty probe set");
  Cache c;
  c.np = probes.ks.size();
  c.nc = cells.A.size();
  c.dim = cells.dim;
  c.psi = &psi;
  c.outer = cells.outer;
  c.y.resize(c.np * c.nc);
  c.mag.resize(c.np * c.nc);
  for (std::size_t p = 0; p < c.np; ++p) {
    for (std::size_t j = 0; j < c.nc; ++j) {
      const Vec4 y = cells.A[j].apply_transpose(probes.ks[p], cells.dim);
      c.y[p * c.nc + j] = y;
      c.mag[p * c.nc + j] = std::abs(psi.spectrum_fn(y));
    }
  }
  return c;
}

double min_sigma(const Cache& c) {
  double best = 0;
  for (std::size_t p = 0; p < c.np; ++p) {
    double acc = 0;
    for (std::size_t j = 0; j < c.nc; ++j) {
      const double m = c.mag[p * c.nc + j];
      acc += m * m;
    }
    if (p == 0 || acc < best) best = acc;
  }
  return best;
}

double max_sigma(const Cache& c) {
  double best = 0;
  for (std::size_t p = 0; p < c.np; ++p) {
    double acc = 0;
    for (std::size_t j = 0; j < c.nc; ++j) {
      const double m = c.mag[p * c.nc + j];
      acc += m * m;
    }
    if (p == 0 || acc > best) best = acc;
  }
  return best;
}

double alpha_cached(const Cache& c, const Vec4& shift) {
  double best = 0;
  for (std::size_t p = 0; p < c.np; ++p) {
    double acc = 0;
    for (std::size_t j = 0; j < c.nc; ++j) {
      const Vec4& y = c.y[p * c.nc + j];
      const Vec4 ys{y[0] + shift[0], y[1] + shift[1], y[2] + shift[2], y[3] + shift[3]};
      acc += c.mag[p * c.nc + j] * std::abs(c.psi->spectrum_fn(ys));
    }
    if (p == 0 || acc > best) best = acc;
  }
  return best;
}

double tail_share(const Cache& c) {
  double num = 0, den = 0;
  for (std::size_t i = 0; i < c.mag.size(); ++i) {
    const double m2 = c.mag[i] * c.mag[i];
    den += m2;
    if (c.outer[i % c.nc]) num += m2;
  }
  return den > 0 ? num / den : 0.0;
}

double e_core(const Cache& cache, const double* betas, int dim, const EOptions& opt) {
  for (int ax = 0; ax < dim; ++ax)
    if (!(betas[ax] > 0)) throw std::domain_error("translation lattice degenerate");
  double total = 0;
  bool settled = false;
  for (int shell = 1; shell <= opt.max_shell && !settled; ++shell) {
    // enumerate |mu|_inf == shell and memoize alpha per lattice point
    std::vector<std::array<int, 4>> mus;
    std::array<int, 4> mu{0, 0, 0, 0};
    std::array<int, 4> lo{0, 0, 0, 0}, hi{0, 0, 0, 0};
    for (int ax = 0; ax < dim; ++ax) {
      lo[ax] = -shell;
      hi[ax] = shell;
    }
    for (mu = lo;;) {
      int linf = 0;
      for (int ax = 0; ax < dim; ++ax) linf = std::max(linf, std::abs(mu[ax]));
      if (linf == shell) mus.push_back(mu);
      int ax = dim - 1;
      while (ax >= 0 && mu[ax] == hi[ax]) {
        mu[ax] = lo[ax];
        --ax;
      }
      if (ax < 0) break;
      ++mu[ax];
    }
    std::map<std::array<int, 4>, double> avals;
    for (const auto& m : mus) {
      Vec4 u{0, 0, 0, 0};
      for (int ax = 0; ax < dim; ++ax) u[ax] = kTwoPi * m[ax] / betas[ax];
      avals[m] = alpha_cached(cache, u);
    }
    double shell_sum = 0;
    for (const auto& m : mus) {
      if (opt.summand == ESummand::plain) {
        shell_sum += avals[m];
      } else {
        std::array<int, 4> neg{-m[0], -m[1], -m[2], -m[3]};
        shell_sum += std::sqrt(avals[m] * avals[neg]);
      }
    }
    total += shell_sum;
    if (shell_sum <= opt.shell_rel_stop * std::max(total, 1e-300)) settled = true;
  }
  if (opt.converged) *opt.converged = settled;
  return total;
}

double spectral_peak_radius(const MotherWavelet& psi) {
  auto val = [&](double r) {
    if (psi.radial_abs2) return psi.radial_abs2(r);
    return std::norm(psi.spectrum_fn(Vec4{r, 0, 0, 0}));
  };
  double lo = 1e-3, hi = 30.0;
  double best_r = lo;
  for (int stage = 0; stage < 3; ++stage) {
    const int n = 400;
    double best = -1;
    double arg = lo;
    for (int i = 0; i <= n; ++i) {
      const double r = lo + (hi - lo) * i / n;
      const double v = val(r);
      if (v > best) {
        best = v;
        arg = r;
      }
    }
    best_r = arg;
    const double step = (hi - lo) / n;
    lo = std::max(1e-6, arg - 2 * step);
    hi = arg + 2 * step;
  }
  return best_r;
}

void default_probe_range(const MotherWavelet& psi, const Cells& cells, double& r_min,
                         double& r_max) {
  double a_min = 0, a_max = 0;
  for (std::size_t j = 0; j < cells.A.size(); ++j) {
    const double a = std::sqrt(cells.A[j].scale2());
    if (j == 0 || a < a_min) a_min = a;
    if (j == 0 || a > a_max) a_max = a;
  }
  const double peak = spectral_peak_radius(psi);
  r_min = peak / a_max;
  r_max = peak / a_min;
  if (!(r_max > r_min)) {
    r_min *= 0.5;
    r_max *= 2.0;
  }
}

struct RoundResult {
  double s = 0, S = 0, E = 0, tail = 0;
  bool e_ok = false;
  std::size_t probe_count = 0;
};

bool close_rel(double a, double b, double tol, double floor_ref) {
  const double den = std::max({std::abs(a), std::abs(b), 1e-12 * std::max(floor_ref, 1.0)});
  return std::abs(a - b) <= tol * den;
}

std::size_t bin_rank(const BoxSpec& box, const std::array<int, 4>& sbin) {
  int m[4] = {0, 0, 0, 0};
  for (int ax = 0; ax < box.dim; ++ax) {
    int p = sbin[ax] % box.n[ax];
    if (p < 0) p += box.n[ax];
    m[ax] = p;
  }
  return box.rank(m);
}

// unit plane wave occupying a single frequency bin
SampledField bin_wave(const BoxSpec& box, const std::array<int, 4>& sbin) {
  SampledField f(box);
  f.values[bin_rank(box, sbin)] = 1.0;
  dft_inplace(f.values, box, +1);
  return f;
}

std::vector<cplx> apply_spectrum(const FrameSystem& sys, const SampledField& f) {
  SampledField g = sys.frame_apply(f);
  dft_inplace(g.values, g.box, -1);
  return std::move(g.values);
}

std::pair<double, double> dense_extremes(const FrameSystem& sys) {
  const BoxSpec& box = sys.box();
  const std::size_t n = box.total();
  Eigen::MatrixXcd M(n, n);
  for (std::size_t p = 0; p < n; ++p) {
    SampledField f(box);
    f.values[p] = 1.0;
    dft_inplace(f.values, box, +1);
    const auto col = apply_spectrum(sys, f);
    for (std::size_t q = 0; q < n; ++q) M(q, p) = col[q];
  }
  const Eigen::MatrixXcd H = 0.5 * (M + M.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
  const auto& ev = es.eigenvalues();
  return {ev.minCoeff(), ev.maxCoeff()};
}

std::vector<std::pair<std::size_t, std::size_t>> alias_pairs_impl(
    const BoxSpec& box, const std::vector<std::array<int, 4>>& bins, const Cells& cells,
    const double* betas, double slack) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  const int dim = box.dim;
  std::array<double, 4> tau{};
  for (int ax = 0; ax < dim; ++ax) tau[ax] = slack * kTwoPi / 2.0 / box.side[ax];
  for (std::size_t i = 0; i < bins.size(); ++i) {
    for (std::size_t j = i + 1; j < bins.size(); ++j) {
      Vec4 dk{0, 0, 0, 0};
      for (int ax = 0; ax < dim; ++ax)
        dk[ax] = kTwoPi * (bins[i][ax] - bins[j][ax]) / box.side[ax];
      bool admit = false;
      for (std::size_t c = 0; c < cells.A.size() && !admit; ++c) {
        const Vec4 y = cells.A[c].apply_transpose(dk, dim);
        bool all_in = true, nonzero = false;
        for (int ax = 0; ax < dim; ++ax) {
          const long mu = std::lround(betas[ax] * y[ax] / kTwoPi);
          if (mu != 0) nonzero = true;
          if (std::abs(y[ax] - kTwoPi * double(mu) / betas[ax]) > tau[ax]) {
            all_in = false;
            break;
          }
        }
        admit = all_in && nonzero;
      }
      if (admit) out.emplace_back(i, j);
    }
  }
  return out;
}

struct EmpiricalInput {
  const FrameSystem* sys;
  const std::vector<std::array<int, 4>>* bins;
  const std::vector<std::pair<std::size_t, std::size_t>>* pairs;
};

EmpiricalReport empirical_from_bins(const EmpiricalInput& in, std::size_t dense_limit) {
  const FrameSystem& sys = *in.sys;
  const auto& bins = *in.bins;
  if (bins.empty()) throw std::domain_error("empty probe set");
  const BoxSpec& box = sys.box();
  const std::size_t nb = bins.size();
  Eigen::MatrixXcd H(nb, nb);
  for (std::size_t j = 0; j < nb; ++j) {
    const auto col = apply_spectrum(sys, bin_wave(box, bins[j]));
    for (std::size_t i = 0; i < nb; ++i) H(i, j) = col[bin_rank(box, bins[i])];
  }
  EmpiricalReport rep;
  rep.probe_count = nb;
  for (std::size_t j = 0; j < nb; ++j) {
    const double r = H(j, j).real();
    if (j == 0) {
      rep.A_emp = rep.B_emp = r;
    } else {
      rep.A_emp = std::min(rep.A_emp, r);
      rep.B_emp = std::max(rep.B_emp, r);
    }
  }
  if (in.pairs && !in.pairs->empty()) {
    // eigensolve the operator on the span of each aliased family: the
    // connected components of the pair graph.  Isolated bins already entered
    // through their diagonal quotients.
    rep.pair_probe_count = in.pairs->size();
    std::vector<std::vector<std::size_t>> adj(nb);
    for (const auto& [i, j] : *in.pairs) {
      adj[i].push_back(j);
      adj[j].push_back(i);
    }
    std::vector<char> seen(nb, 0);
    for (std::size_t s = 0; s < nb; ++s) {
      if (seen[s] || adj[s].empty()) continue;
      std::vector<std::size_t> comp{s};
      seen[s] = 1;
      for (std::size_t head = 0; head < comp.size(); ++head)
        for (std::size_t w : adj[comp[head]])
          if (!seen[w]) {
            seen[w] = 1;
            comp.push_back(w);
          }
      Eigen::MatrixXcd sub(comp.size(), comp.size());
      for (std::size_t a = 0; a < comp.size(); ++a)
        for (std::size_t b = 0; b < comp.size(); ++b)
          sub(a, b) = 0.5 * (H(comp[a], comp[b]) + std::conj(H(comp[b], comp[a])));
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(sub);
      rep.A_emp = std::min(rep.A_emp, es.eigenvalues().minCoeff());
      rep.B_emp = std::max(rep.B_emp, es.eigenvalues().maxCoeff());
    }
  }
  if (box.total() <= dense_limit && box.total() > 0) {
    const auto [lo, hi] = dense_extremes(sys);
    rep.eig_min = lo;
    rep.eig_max = hi;
    rep.A_emp = std::min(rep.A_emp, lo);
    rep.B_emp = std::max(rep.B_emp, hi);
    rep.dense_used = true;
  }
  return rep;
}

template <class Grid, std::size_t D>
FrameReport verdict_impl(const MotherWavelet& psi, const Grid& grid,
                         const std::array<double, D>& betas, double const_factor,
                         const BoundsOptions& opt) {
  const Cells cells = cells_of(grid);
  ProbeOptions popt = opt.probes;
  if (!(popt.r_min > 0) || !(popt.r_max > 0))
    default_probe_range(psi, cells, popt.r_min, popt.r_max);

  FrameReport rep;
  rep.const_factor = const_factor;
  RoundResult prev;
  bool have_prev = false;
  for (int r = 0; r < popt.max_rounds; ++r) {
    const ProbeSet probes = make_probes(cells.dim, popt.r_min, popt.r_max, popt, r);
    const Cache cache = build_cache(psi, cells, probes);
    RoundResult cur;
    cur.s = min_sigma(cache);
    cur.S = max_sigma(cache);
    EOptions eopt;
    eopt.summand = opt.summand;
    eopt.shell_rel_stop = opt.shell_rel_stop;
    eopt.max_shell = opt.max_shell;
    eopt.converged = &cur.e_ok;
    cur.E = e_core(cache, betas.data(), cells.dim, eopt);
    cur.tail = tail_share(cache);
    cur.probe_count = probes.ks.size();

    rep.rounds = r + 1;
    rep.s_val = cur.s;
    rep.S_val = cur.S;
    rep.E_val = cur.E;
    rep.tail_fraction = cur.tail;
    rep.probe_count = cur.probe_count;
    if (have_prev && cur.e_ok && close_rel(cur.s, prev.s, popt.rel_tol, cur.S) &&
        close_rel(cur.S, prev.S, popt.rel_tol, cur.S) &&
        close_rel(cur.E, prev.E, popt.rel_tol, cur.S)) {
      rep.probes_converged = true;
      break;
    }
    prev = cur;
    have_prev = true;
  }
  rep.A_candidate = const_factor * (rep.s_val - rep.E_val);
  rep.B_candidate = const_factor * (rep.S_val + rep.E_val);

  bool empirical_ran = false;
  if (opt.box.total() > 1) {
    WaveletSystem sys(WaveletPlan::build(psi, grid, opt.box, opt.analysis));
    const double lo = opt.band_lo > 0 ? opt.band_lo : popt.r_min;
    const double hi = opt.band_hi > 0 ? opt.band_hi : popt.r_max;
    const auto bins = band_bins(opt.box, lo, hi);
    const auto pairs = alias_pairs_impl(opt.box, bins, cells, betas.data(), opt.pair_slack);
    EmpiricalInput in{&sys, &bins, &pairs};
    const EmpiricalReport emp = empirical_from_bins(in, opt.dense_limit);
    rep.A_emp = emp.A_emp;
    rep.B_emp = emp.B_emp;
    rep.eig_min = emp.eig_min;
    rep.eig_max = emp.eig_max;
    rep.dense_used = emp.dense_used;
    rep.pair_probe_count = emp.pair_probe_count;
    empirical_ran = true;
  }

  if (!rep.probes_converged) {
    rep.verdict = "inconclusive";
  } else if (rep.s_val <= 1e-14 * std::max(rep.S_val, 1.0)) {
    rep.verdict = "not-frame";
  } else if (empirical_ran && rep.A_emp < 1e-3 * rep.B_emp) {
    rep.verdict = "not-frame";
  } else if (rep.A_candidate > 0) {
    // certify only when the measurement confirms the candidate sandwich
    const bool contradicted =
        empirical_ran && (rep.A_emp < rep.A_candidate * (1 - 1e-6) ||
                          rep.B_emp > rep.B_candidate * (1 + 1e-6));
    rep.verdict = contradicted ? "inconclusive" : "frame";
  } else {
    rep.verdict = "inconclusive";
  }
  return rep;
}

}  // namespace

ProbeSet make_probes(int dim, double r_min, double r_max, const ProbeOptions& opt,
                     int round) {
  if (!(r_min > 0) || !(r_max >= r_min))
    throw std::invalid_argument("probe radius range must be positive");
  if (dim != 2 && dim != 4) throw std::invalid_argument("probe dim must be 2 or 4");
  const int mult = 1 << std::max(0, round);
  const int nr = opt.n_radial * mult + 1;
  const int na = opt.n_angular * mult;
  std::vector<double> radii;
  if (r_max > r_min) {
    const double llo = std::log(r_min), lhi = std::log(r_max);
    for (int i = 0; i < nr; ++i)
      radii.push_back(std::exp(llo + (lhi - llo) * (double(i) / double(nr - 1))));
  } else {
    radii.push_back(r_min);
  }
  ProbeSet out;
  out.dim = dim;
  if (dim == 2) {
    for (double r : radii)
      for (int a = 0; a < na; ++a) {
        const double phi = kTwoPi * a / na;
        out.ks.push_back(Vec4{r * std::cos(phi), r * std::sin(phi), 0, 0});
      }
    return out;
  }
  // dim 4: prefix of a deterministic direction stream, so rounds nest
  std::mt19937 eng(opt.seed);
  auto uniform = [&eng]() { return (double(eng()) + 0.5) * (1.0 / 4294967296.0); };
  auto gauss_pair = [&](double& g0, double& g1) {
    const double u1 = uniform(), u2 = uniform();
    const double m = std::sqrt(-2.0 * std::log(u1));
    g0 = m * std::cos(kTwoPi * u2);
    g1 = m * std::sin(kTwoPi * u2);
  };
  std::vector<Vec4> dirs;
  while (int(dirs.size()) < na) {
    Vec4 v;
    gauss_pair(v[0], v[1]);
    gauss_pair(v[2], v[3]);
    const double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2] + v[3] * v[3]);
    if (n < 1e-8) continue;
    for (double& x : v) x /= n;
    dirs.push_back(v);
  }
  for (double r : radii)
    for (const Vec4& d : dirs)
      out.ks.push_back(Vec4{r * d[0], r * d[1], r * d[2], r * d[3]});
  return out;
}

double compute_s(const MotherWavelet& psi, const GridSpec2D& grid, const ProbeSet& probes) {
  return min_sigma(build_cache(psi, cells_of(grid), probes));
}
double compute_s(const MotherWavelet& psi, const GridSpec4D& grid, const ProbeSet& probes) {
  return min_sigma(build_cache(psi, cells_of(grid), probes));
}
double compute_S(const MotherWavelet& psi, const GridSpec2D& grid, const ProbeSet& probes) {
  return max_sigma(build_cache(psi, cells_of(grid), probes));
}
double compute_S(const MotherWavelet& psi, const GridSpec4D& grid, const ProbeSet& probes) {
  return max_sigma(build_cache(psi, cells_of(grid), probes));
}

double alpha(const MotherWavelet& psi, const GridSpec2D& grid, const Vec4& shift,
             const ProbeSet& probes) {
  return alpha_cached(build_cache(psi, cells_of(grid), probes), shift);
}
double alpha(const MotherWavelet& psi, const GridSpec4D& grid, const Vec4& shift,
             const ProbeSet& probes) {
  return alpha_cached(build_cache(psi, cells_of(grid), probes), shift);
}

double compute_E(const MotherWavelet& psi, const GridSpec2D& grid,
                 const std::array<double, 2>& betas, const ProbeSet& probes,
                 const EOptions& opt) {
  return e_core(build_cache(psi, cells_of(grid), probes), betas.data(), 2, opt);
}
double compute_E(const MotherWavelet& psi, const GridSpec4D& grid,
                 const std::array<double, 4>& betas, const ProbeSet& probes,
                 const EOptions& opt) {
  return e_core(build_cache(psi, cells_of(grid), probes), betas.data(), 4, opt);
}

FrameReport frame_verdict(const MotherWavelet& psi, const GridSpec2D& grid,
                          const BoundsOptions& opt) {
  const double l2 = grid.lambda0 * grid.lambda0;
  const double cf = l2 * l2 / (grid.beta0 * grid.beta1);
  return verdict_impl<GridSpec2D, 2>(psi, grid, {grid.beta0, grid.beta1}, cf, opt);
}

FrameReport frame_verdict(const MotherWavelet& psi, const GridSpec4D& grid,
                          const BoundsOptions& opt) {
  const double s2 = grid.lambda01 * grid.lambda01 + grid.lambda02 * grid.lambda02;
  const double cf = s2 * s2 / (grid.beta0 * grid.beta1 * grid.beta2 * grid.beta3);
  return verdict_impl<GridSpec4D, 4>(psi, grid, {grid.beta0, grid.beta1, grid.beta2, grid.beta3},
                                     cf, opt);
}

std::vector<std::array<int, 4>> band_bins(const BoxSpec& box, double k_lo, double k_hi) {
  std::vector<std::array<int, 4>> out;
  const std::size_t total = box.total();
  int m[4] = {0, 0, 0, 0};
  for (std::size_t idx = 0; idx < total; ++idx) {
    box.unrank(idx, m);
    std::array<int, 4> sbin{0, 0, 0, 0};
    double k2 = 0;
    for (int ax = 0; ax < box.dim; ++ax) {
      sbin[ax] = box.signed_bin(ax, m[ax]);
      const double k = kTwoPi * sbin[ax] / box.side[ax];
      k2 += k * k;
    }
    const double kmod = std::sqrt(k2);
    if (kmod >= k_lo && kmod <= k_hi) out.push_back(sbin);
  }
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> alias_pairs(
    const BoxSpec& box, const std::vector<std::array<int, 4>>& bins,
    const GridSpec2D& grid, double slack) {
  const double betas[2] = {grid.beta0, grid.beta1};
  return alias_pairs_impl(box, bins, cells_of(grid), betas, slack);
}
std::vector<std::pair<std::size_t, std::size_t>> alias_pairs(
    const BoxSpec& box, const std::vector<std::array<int, 4>>& bins,
    const GridSpec4D& grid, double slack) {
  const double betas[4] = {grid.beta0, grid.beta1, grid.beta2, grid.beta3};
  return alias_pairs_impl(box, bins, cells_of(grid), betas, slack);
}

std::vector<double> rayleigh_quotients(const FrameSystem& sys,
                                       const std::vector<std::array<int, 4>>& bins) {
  std::vector<double> out;
  out.reserve(bins.size());
  const BoxSpec& box = sys.box();
  for (const auto& b : bins) {
    const auto spec = apply_spectrum(sys, bin_wave(box, b));
    out.push_back(spec[bin_rank(box, b)].real());
  }
  return out;
}

EmpiricalReport empirical_bounds(const FrameSystem& sys,
                                 const std::vector<SampledField>& probe_signals,
                                 std::size_t dense_limit) {
  EmpiricalReport rep;
  bool first = true;
  for (const auto& f : probe_signals) {
    const double n2 = norm2(f);
    if (!(n2 > 0)) continue;
    const double r = inner(f, sys.frame_apply(f)).real() / n2;
    if (first) {
      rep.A_emp = rep.B_emp = r;
      first = false;
    } else {
      rep.A_emp = std::min(rep.A_emp, r);
      rep.B_emp = std::max(rep.B_emp, r);
    }
    ++rep.probe_count;
  }
  if (first) throw std::domain_error("empty probe set");
  if (sys.box().total() <= dense_limit && sys.box().total() > 0) {
    const auto [lo, hi] = dense_extremes(sys);
    rep.eig_min = lo;
    rep.eig_max = hi;
    rep.A_emp = std::min(rep.A_emp, lo);
    rep.B_emp = std::max(rep.B_emp, hi);
    rep.dense_used = true;
  }
  return rep;
}

EmpiricalReport empirical_bounds(const FrameSystem& sys,
                                 const std::vector<std::array<int, 4>>& bins,
                                 const std::vector<std::pair<std::size_t, std::size_t>>& pairs,
                                 std::size_t dense_limit) {
  EmpiricalInput in{&sys, &bins, &pairs};
  return empirical_from_bins(in, dense_limit);
}

}  // namespace qwave
