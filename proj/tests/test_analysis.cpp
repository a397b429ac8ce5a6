#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "qwave/analysis.hpp"

using namespace qwave;

namespace {

constexpr double pi = std::numbers::pi;

BoxSpec box2d(double side, int n) {
  BoxSpec b;
  b.dim = 2;
  b.side = {side, side, 0, 0};
  b.n = {n, n, 1, 1};
  return b;
}

BoxSpec box4d(double side, int n) {
  BoxSpec b;
  b.dim = 4;
  b.side = {side, side, side, side};
  b.n = {n, n, n, n};
  return b;
}

GridSpec2D small_grid() {
  GridSpec2D g;
  g.lambda0 = 0.5;
  g.L = 4;
  g.beta0 = 0.7;
  g.beta1 = 0.7;
  g.t_max = 3;
  g.m_range = 1;
  return g;
}

SampledField random_field(const BoxSpec& box, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  SampledField f(box);
  for (auto& v : f.values) v = cplx(u(rng), u(rng));
  return f;
}

double max_abs(const std::vector<cplx>& v) {
  double m = 0;
  for (const auto& z : v) m = std::max(m, std::abs(z));
  return m;
}

}  // namespace

TEST_SUITE("analysis") {

TEST_CASE("analyzing the zero field gives zero coefficients") {
  const auto box = box2d(14.0, 32);
  const auto plan = WaveletPlan::build(laplacian_gaussian(2), small_grid(), box);
  const auto c = plan.analyze(SampledField(box));
  CHECK(c.values.size() == small_grid().count());
  CHECK(max_abs(c.values) == 0.0);
}

TEST_CASE("coefficient layout follows the grid enumeration") {
  const auto g = small_grid();
  const auto box = box2d(14.0, 32);
  const auto plan = WaveletPlan::build(laplacian_gaussian(2), g, box);
  const auto pts = enumerate_grid_2d(g);
  REQUIRE(plan.total == pts.size());
  const std::size_t per = 9;
  REQUIRE(plan.cells.size() * per == pts.size());
  for (std::size_t ci = 0; ci < plan.cells.size(); ++ci) {
    const auto& cell = plan.cells[ci];
    CHECK(cell.offset == ci * per);
    for (std::size_t mi = 0; mi < per; ++mi) {
      const auto& p = pts[cell.offset + mi];
      CHECK(cell.A.lambda1 == doctest::Approx(p.a).epsilon(1e-15));
      CHECK(cell.bs[mi][0] == doctest::Approx(p.b[0]).epsilon(1e-15));
      CHECK(cell.bs[mi][1] == doctest::Approx(p.b[1]).epsilon(1e-15));
    }
  }
}

TEST_CASE("each coefficient equals the inner product with the member field") {
  const auto box = box2d(14.0, 32);
  const auto plan = WaveletPlan::build(laplacian_gaussian(2), small_grid(), box);
  const auto f = random_field(box, 11);
  const auto c = plan.analyze(f);
  const double scale = max_abs(c.values);
  for (std::size_t ci : {std::size_t(0), std::size_t(7), std::size_t(23)}) {
    for (std::size_t mi : {std::size_t(0), std::size_t(4), std::size_t(8)}) {
      const cplx direct = inner(plan.member_field(ci, mi), f);
      CHECK(std::abs(direct - c.values[plan.cells[ci].offset + mi]) < 1e-12 * scale);
    }
  }
}

TEST_CASE("analysis is linear in the field") {
  const auto box = box2d(14.0, 32);
  const auto plan = WaveletPlan::build(laplacian_gaussian(2), small_grid(), box);
  const auto f = random_field(box, 21);
  const auto g = random_field(box, 22);
  const cplx a(0.7, -1.3), b(-0.2, 0.45);
  SampledField h(box);
  for (std::size_t i = 0; i < h.values.size(); ++i)
    h.values[i] = a * f.values[i] + b * g.values[i];
  const auto cf = plan.analyze(f);
  const auto cg = plan.analyze(g);
  const auto ch = plan.analyze(h);
  const double scale = max_abs(ch.values);
  for (std::size_t j = 0; j < ch.values.size(); ++j)
    CHECK(std::abs(ch.values[j] - (a * cf.values[j] + b * cg.values[j])) < 1e-12 * scale);
}

TEST_CASE("probing with one member attains its squared norm, and strictly dominates") {
  // a directional mother: rotated cells of a radial one would duplicate atoms exactly
  const auto box = box2d(14.0, 64);
  AnalysisOptions opts;
  opts.norm = Normalization::l2;
  const auto plan = WaveletPlan::build(morlet(2), small_grid(), box, opts);
  const std::size_t ci = 13, mi = 5;
  const auto probe = plan.member_field(ci, mi);
  const double n2 = norm2(probe);
  const auto c = plan.analyze(probe);
  const std::size_t idx = plan.cells[ci].offset + mi;
  CHECK(std::abs(c.values[idx] - cplx(n2)) < 1e-10 * n2);
  for (std::size_t j = 0; j < c.values.size(); ++j) {
    if (j == idx) continue;
    CHECK(std::abs(c.values[j]) < std::abs(c.values[idx]));
  }
}

TEST_CASE("direct space-domain correlation matches the spectral path in 2d") {
  const auto g = small_grid();
  const auto box = box2d(14.0, 64);
  const auto mother = laplacian_gaussian(2);
  const auto f = random_field(box, 31);
  const auto pts = enumerate_grid_2d(g);

  for (Normalization nm : {Normalization::l1, Normalization::l2}) {
    AnalysisOptions opts;
    opts.norm = nm;
    const auto c = analyze(f, mother, g, opts);
    const double scale = max_abs(c.values);
    const std::size_t step = pts.size() / 20;
    for (std::size_t j = 3 % step; j < pts.size(); j += step) {
      Atom atom;
      atom.mother = mother;
      atom.A = pts[j].sim();
      atom.b = Vec4{pts[j].b[0], pts[j].b[1], 0, 0};
      atom.norm = nm;
      const cplx slow = slow_coefficient(f, atom);
      CHECK(std::abs(slow - c.values[j]) < 5e-8 * scale);
    }
  }
}

TEST_CASE("direct space-domain correlation matches the spectral path in 4d") {
  GridSpec4D g;
  g.lambda01 = 0.5;
  g.lambda02 = 0.5;
  g.L1 = 2;
  g.L2 = 2;
  g.beta0 = g.beta1 = g.beta2 = g.beta3 = 0.7;
  g.t_max = 1;
  g.j_max = 1;
  g.m_range = 1;
  const auto box = box4d(3.2, 16);
  const auto mother = laplacian_gaussian(4);
  const auto f = random_field(box, 41);
  const auto c = analyze(f, mother, g);
  const double scale = max_abs(c.values);
  const auto pts = enumerate_grid_4d(g);
  REQUIRE(c.values.size() == pts.size());
  const std::size_t step = pts.size() / 6;
  for (std::size_t j = 2; j < pts.size(); j += step) {
    Atom atom;
    atom.mother = mother;
    atom.A = pts[j].A;
    atom.b = Vec4{pts[j].b[0], pts[j].b[1], pts[j].b[2], pts[j].b[3]};
    const cplx slow = slow_coefficient(f, atom);
    CHECK(std::abs(slow - c.values[j]) < 5e-8 * scale);
  }
}

TEST_CASE("synthesis is the exact adjoint of analysis") {
  const auto box = box2d(14.0, 32);
  const auto plan = WaveletPlan::build(laplacian_gaussian(2), small_grid(), box);
  const auto f = random_field(box, 51);

  const auto c = plan.analyze(f);
  const auto Sf = plan.synthesize(c);
  double c2 = 0;
  for (const auto& z : c.values) c2 += std::norm(z);
  const cplx quad = inner(f, Sf);
  CHECK(quad.real() == doctest::Approx(c2).epsilon(1e-10));
  CHECK(std::abs(quad.imag()) < 1e-10 * c2);

  const auto g = random_field(box, 52);
  const cplx lhs = inner(g, plan.frame_apply(f));
  const cplx rhs = inner(plan.frame_apply(g), f);
  CHECK(std::abs(lhs - rhs) < 1e-10 * std::abs(lhs));
}

TEST_CASE("shifting the field by a cell's translation step shifts its coefficients") {
  const auto g = small_grid();
  const auto box = box2d(14.0, 32);
  const auto plan = WaveletPlan::build(laplacian_gaussian(2), g, box);
  const auto f = random_field(box, 61);

  const std::size_t ci = 9;
  const auto& cell = plan.cells[ci];
  // the cell's own lattice step along its first translation axis (m1 varies fastest)
  const double step0 = cell.bs[7][0] - cell.bs[4][0];
  const double step1 = cell.bs[7][1] - cell.bs[4][1];

  SampledField spec = fft(f);
  int p[4];
  for (std::size_t i = 0; i < spec.values.size(); ++i) {
    box.unrank(i, p);
    const double phase = -(box.freq(0, p[0]) * step0 + box.freq(1, p[1]) * step1);
    spec.values[i] *= std::exp(cplx(0.0, phase));
  }
  const SampledField shifted = ifft(spec);

  const auto c0 = plan.analyze(f);
  const auto c1 = plan.analyze(shifted);
  const double scale = max_abs(c0.values);
  // translations are enumerated with m1 fastest; stepping m0 advances by 3
  for (int m0 = -1; m0 < 1; ++m0)
    for (int m1 = -1; m1 <= 1; ++m1) {
      const std::size_t from = std::size_t(3 * (m0 + 1) + (m1 + 1));
      const std::size_t to = std::size_t(3 * (m0 + 2) + (m1 + 1));
      CHECK(std::abs(c1.values[cell.offset + to] - c0.values[cell.offset + from]) <
            1e-12 * scale);
    }
}

TEST_CASE("worker count does not change results") {
  const auto box = box2d(14.0, 32);
  const auto f = random_field(box, 71);
  AnalysisOptions o1;
  AnalysisOptions o4 = o1;
  o4.threads = 4;
  const auto p1 = WaveletPlan::build(laplacian_gaussian(2), small_grid(), box, o1);
  const auto p4 = WaveletPlan::build(laplacian_gaussian(2), small_grid(), box, o4);
  const auto c1 = p1.analyze(f);
  const auto c4 = p4.analyze(f);
  REQUIRE(c1.values.size() == c4.values.size());
  for (std::size_t j = 0; j < c1.values.size(); ++j) CHECK(c1.values[j] == c4.values[j]);

  const auto s1 = p1.synthesize(c1);
  const auto s4 = p4.synthesize(c4);
  const double scale = max_abs(s1.values);
  for (std::size_t i = 0; i < s1.values.size(); ++i)
    CHECK(std::abs(s1.values[i] - s4.values[i]) < 1e-13 * scale);
}

TEST_CASE("nearest-bin translation agrees exactly when translations land on samples") {
  GridSpec2D g;
  g.lambda0 = 0.5;
  g.L = 2;  // sectors at 0 and pi keep the translation lattice axis-aligned
  g.t_max = 1;
  g.m_range = 1;
  g.beta0 = 0.875;  // lambda0*beta = 14/32: every translation is a sample point
  g.beta1 = 0.875;
  const auto box = box2d(14.0, 32);
  const auto f = random_field(box, 81);

  AnalysisOptions snap;
  snap.translation_mode = TranslationMode::snap;
  const auto ce = analyze(f, laplacian_gaussian(2), g);
  const auto cs = analyze(f, laplacian_gaussian(2), g, snap);
  const double scale = max_abs(ce.values);
  REQUIRE(ce.values.size() == 18);
  for (std::size_t j = 0; j < 18; ++j)
    CHECK(std::abs(ce.values[j] - cs.values[j]) < 1e-12 * scale);

  // and the snapped synthesis stays the adjoint of the snapped analysis
  AnalysisOptions snap2 = snap;
  snap2.norm = Normalization::l2;
  const auto plan = WaveletPlan::build(laplacian_gaussian(2), g, box, snap2);
  const auto c = plan.analyze(f);
  double c2 = 0;
  for (const auto& z : c.values) c2 += std::norm(z);
  CHECK(inner(f, plan.synthesize(c)).real() == doctest::Approx(c2).epsilon(1e-10));
}

TEST_CASE("a field list of scaled deltas acts as an exact orthonormal system") {
  const auto box = box2d(1.0, 2);
  const double cv = box.cellvol();
  std::vector<SampledField> members;
  for (std::size_t i = 0; i < box.total(); ++i) {
    SampledField m(box);
    m.values[i] = 1.0 / std::sqrt(cv);
    members.push_back(std::move(m));
  }
  FieldListSystem sys(std::move(members));
  CHECK(sys.size() == 4);
  const auto f = random_field(box, 91);
  const auto Sf = sys.frame_apply(f);
  for (std::size_t i = 0; i < f.values.size(); ++i)
    CHECK(std::abs(Sf.values[i] - f.values[i]) < 1e-14);

  // one relaxation step inverts the identity frame operator
  const auto c = sys.analyze(f);
  ReconstructOptions opts;
  opts.method = ReconstructMethod::richardson;
  opts.bound_A = 1.0;
  opts.bound_B = 1.0;
  const auto res = reconstruct_system(sys, c, opts);
  CHECK(res.converged);
  CHECK(res.iterations == 1);
  for (std::size_t i = 0; i < f.values.size(); ++i)
    CHECK(std::abs(res.field.values[i] - f.values[i]) < 1e-12);

  ReconstructOptions bad;
  bad.method = ReconstructMethod::richardson;
  CHECK_THROWS_AS(reconstruct_system(sys, c, bad), std::invalid_argument);
}

TEST_CASE("zero coefficients reconstruct the zero field immediately") {
  const auto box = box2d(14.0, 32);
  WaveletSystem sys(WaveletPlan::build(laplacian_gaussian(2), small_grid(), box));
  const auto res = reconstruct_system(sys, std::vector<cplx>(sys.size(), cplx(0)));
  CHECK(res.converged);
  CHECK(res.iterations == 0);
  CHECK(max_abs(res.field.values) == 0.0);
}

namespace {

// synthesis range deliberately escapes what analysis sees: the frame operator is zero
class DeadSystem : public FrameSystem {
 public:
  explicit DeadSystem(BoxSpec b) : box_(b) {}
  const BoxSpec& box() const override { return box_; }
  std::size_t size() const override { return 1; }
  std::vector<cplx> analyze(const SampledField&) const override { return {cplx(0)}; }
  SampledField synthesize(const std::vector<cplx>& c) const override {
    SampledField g(box_);
    g.values[0] = c.at(0);
    return g;
  }

 private:
  BoxSpec box_;
};

}  // namespace

TEST_CASE("a system whose frame operator vanishes is rejected during inversion") {
  DeadSystem sys(box2d(1.0, 2));
  CHECK_THROWS_WITH_AS(reconstruct_system(sys, {cplx(1)}),
                       "frame too loose or not a frame", std::runtime_error);
}

TEST_CASE("conjugate gradients recover an in-range field from its coefficients") {
  GridSpec2D g = small_grid();
  g.m_range = 2;
  const auto box = box2d(14.0, 32);
  WaveletSystem sys(WaveletPlan::build(laplacian_gaussian(2), g, box));

  // draw the field from the signal subspace the frame can represent
  const SampledField f = sys.frame_apply(random_field(box, 101));

  const auto c = sys.analyze(f);
  ReconstructOptions opts;
  opts.tol = 1e-6;
  const auto res = reconstruct_system(sys, c, opts);
  CHECK(res.converged);
  CHECK(res.iterations < 200);
  double num = 0, den = 0;
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    num += std::norm(res.field.values[i] - f.values[i]);
    den += std::norm(f.values[i]);
  }
  CHECK(std::sqrt(num / den) < 1e-3);

  // the named entry point drives the same inversion
  CoefficientSet cs;
  cs.grid = g;
  cs.values = c;
  const auto back = reconstruct(cs, laplacian_gaussian(2), box, 200, 1e-6);
  double num2 = 0;
  for (std::size_t i = 0; i < f.values.size(); ++i)
    num2 += std::norm(back.values[i] - f.values[i]);
  CHECK(std::sqrt(num2 / den) < 1e-3);
}

TEST_CASE("4d analysis round trip preserves the quadratic form") {
  GridSpec4D g;
  g.L1 = 2;
  g.L2 = 2;
  g.t_max = 1;
  g.j_max = 1;
  g.m_range = 1;
  g.beta0 = g.beta1 = g.beta2 = g.beta3 = 0.7;
  const auto box = box4d(3.2, 16);
  const auto plan = WaveletPlan::build(laplacian_gaussian(4), g, box);
  const auto f = random_field(box, 111);
  const auto c = plan.analyze(f);
  double c2 = 0;
  for (const auto& z : c.values) c2 += std::norm(z);
  CHECK(c2 > 0);
  CHECK(inner(f, plan.synthesize(c)).real() == doctest::Approx(c2).epsilon(1e-10));
}

}  // TEST_SUITE
