#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "qwave/lifting.hpp"

using namespace qwave;

namespace {

constexpr double kPi = 3.14159265358979323846;

BoxSpec small_box(double side = 8.0, int n = 8) {
  BoxSpec b;
  b.dim = 2;
  b.side = {side, side, 0, 0};
  b.n = {n, n, 1, 1};
  return b;
}

// unit-norm plane wave at signed bin (p0, p1)
SampledField dft_member(const BoxSpec& box, int p0, int p1) {
  SampledField f(box);
  const double s = 1.0 / std::sqrt(box.volume());
  for (int m0 = 0; m0 < box.n[0]; ++m0)
    for (int m1 = 0; m1 < box.n[1]; ++m1) {
      const double ph =
          2.0 * kPi * (double(p0 * m0) / box.n[0] + double(p1 * m1) / box.n[1]);
      f.values[std::size_t(m0) * box.n[1] + m1] = std::polar(s, ph);
    }
  return f;
}

std::vector<SampledField> dft_basis(const BoxSpec& box) {
  std::vector<SampledField> out;
  for (int p0 = 0; p0 < box.n[0]; ++p0)
    for (int p1 = 0; p1 < box.n[1]; ++p1) out.push_back(dft_member(box, p0, p1));
  return out;
}

SampledField random_cfield(const BoxSpec& box, unsigned seed) {
  std::mt19937 eng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  SampledField f(box);
  for (cplx& v : f.values) v = {u(eng), u(eng)};
  return f;
}

QuaternionField random_qfield(const BoxSpec& box, unsigned seed) {
  QuaternionField F(box);
  F.f1 = random_cfield(box, seed);
  F.f2 = random_cfield(box, seed + 1);
  return F;
}

Eigen::MatrixXcd gram(const std::vector<SampledField>& phis) {
  const std::size_t n = phis.size();
  Eigen::MatrixXcd g(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) g(a, b) = inner(phis[a], phis[b]);
  return g;
}

double qdist2(const QuaternionField& a, const QuaternionField& b) {
  QuaternionField d(a.f1.box);
  for (std::size_t i = 0; i < d.f1.values.size(); ++i) {
    d.f1.values[i] = a.f1.values[i] - b.f1.values[i];
    d.f2.values[i] = a.f2.values[i] - b.f2.values[i];
  }
  return norm2(d);
}

}  // namespace

TEST_SUITE("lifting") {

TEST_CASE("conjugation fixes real families and preserves orthonormality") {
  const BoxSpec box = small_box();

  SampledField real_f(box);
  for (std::size_t i = 0; i < real_f.values.size(); ++i)
    real_f.values[i] = std::cos(0.7 * double(i));
  const auto fixed = conjugate_system({real_f});
  for (std::size_t i = 0; i < real_f.values.size(); ++i)
    CHECK(fixed[0].values[i] == real_f.values[i]);

  const auto phis = dft_basis(box);
  const auto conj_phis = conjugate_system(phis);
  const Eigen::MatrixXcd g = gram(conj_phis);
  double worst = 0;
  for (Eigen::Index a = 0; a < g.rows(); ++a)
    for (Eigen::Index b = 0; b < g.cols(); ++b)
      worst = std::max(worst, std::abs(g(a, b) - (a == b ? cplx(1) : cplx(0))));
  CHECK(worst <= 1e-10);
}

TEST_CASE("conjugation preserves extremal Gram eigenvalues") {
  BoxSpec box = small_box(4.0, 4);
  std::vector<SampledField> frame;
  for (unsigned s = 0; s < 12; ++s) frame.push_back(random_cfield(box, 300 + s));

  const auto eigs = [](const std::vector<SampledField>& fam) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram(fam));
    return std::pair<double, double>{es.eigenvalues().minCoeff(),
                                     es.eigenvalues().maxCoeff()};
  };
  const auto [lo, hi] = eigs(frame);
  const auto [clo, chi] = eigs(conjugate_system(frame));
  CHECK(std::abs(lo - clo) <= 1e-10 * std::max(1.0, std::abs(hi)));
  CHECK(std::abs(hi - chi) <= 1e-10 * std::max(1.0, std::abs(hi)));
}

TEST_CASE("single unit member lifts to a unit vector in both modes") {
  const BoxSpec box = small_box();
  const std::vector<SampledField> phi{dft_member(box, 1, 2)};
  for (LiftMode mode : {LiftMode::diagonal, LiftMode::mixed}) {
    const LiftedSystem sys = lift(phi, mode);
    const Quaternion q = qinner(sys.member(0), sys.member(0));
    CHECK(std::abs(q.q0 - 1.0) <= 1e-12);
    CHECK(std::abs(q.q1) <= 1e-15);
    CHECK(std::abs(q.q2) <= 1e-15);
    CHECK(std::abs(q.q3) <= 1e-15);
  }
}

TEST_CASE("lift rejects empty families and mixed boxes") {
  CHECK_THROWS_AS(lift({}, LiftMode::diagonal), std::invalid_argument);
  std::vector<SampledField> bad{SampledField(small_box()), SampledField(small_box(8.0, 16))};
  CHECK_THROWS_AS(lift(std::move(bad), LiftMode::mixed), std::invalid_argument);
}

TEST_CASE("diagonal projection acts componentwise through phi and its conjugate") {
  const BoxSpec box = small_box();
  const SampledField phi = dft_member(box, 2, -1);
  const LiftedSystem sys = lift({phi}, LiftMode::diagonal);
  const QuaternionField g = random_qfield(box, 41);

  const QuaternionField got = rank_one_apply(sys.member(0), sys.member(0), g);
  const cplx c1 = inner(phi, g.f1);
  SampledField cphi(box);
  for (std::size_t i = 0; i < phi.values.size(); ++i)
    cphi.values[i] = std::conj(phi.values[i]);
  const cplx c2 = inner(cphi, g.f2);
  double worst = 0;
  for (std::size_t i = 0; i < phi.values.size(); ++i) {
    worst = std::max(worst, std::abs(got.f1.values[i] - phi.values[i] * c1));
    worst = std::max(worst, std::abs(got.f2.values[i] - cphi.values[i] * c2));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("both lift modes generate identical projections") {
  const BoxSpec box = small_box();
  // deliberately non-orthonormal members: the identity is per-member
  std::vector<SampledField> phis;
  phis.push_back(random_cfield(box, 7));
  phis.push_back(dft_member(box, 3, 1));
  phis.push_back(random_cfield(box, 9));

  const LiftedSystem diag = lift(phis, LiftMode::diagonal);
  const LiftedSystem mixed = lift(phis, LiftMode::mixed);
  for (unsigned s = 0; s < 3; ++s) {
    const QuaternionField g = random_qfield(box, 50 + s);
    for (std::size_t n = 0; n < phis.size(); ++n) {
      const QuaternionField a = rank_one_apply(diag.member(n), diag.member(n), g);
      const QuaternionField b = rank_one_apply(mixed.member(n), mixed.member(n), g);
      CHECK(std::sqrt(qdist2(a, b)) <= 1e-10);
    }
  }
}

TEST_CASE("coefficient modulus matrices are scalar and mode-independent") {
  const BoxSpec box = small_box();
  const SampledField phi = dft_member(box, -2, 3);
  const LiftedSystem diag = lift({phi}, LiftMode::diagonal);
  const LiftedSystem mixed = lift({phi}, LiftMode::mixed);
  const QuaternionField F = random_qfield(box, 77);

  const Mat2c md = modulus_matrix(F, diag.member(0));
  const Mat2c mm = modulus_matrix(F, mixed.member(0));

  CHECK(std::abs(md.m12) <= 1e-12);
  CHECK(std::abs(md.m21) <= 1e-12);
  CHECK(std::abs(mm.m12) <= 1e-12);
  CHECK(std::abs(mm.m21) <= 1e-12);

  SampledField cphi(box), cf1(box), cf2(box);
  for (std::size_t i = 0; i < phi.values.size(); ++i) {
    cphi.values[i] = std::conj(phi.values[i]);
    cf1.values[i] = std::conj(F.f1.values[i]);
    cf2.values[i] = std::conj(F.f2.values[i]);
  }
  const double d1 = std::norm(inner(F.f1, phi)) + std::norm(inner(F.f2, cphi));
  const double d2 = std::norm(inner(cf2, phi)) + std::norm(inner(cf1, cphi));
  CHECK(std::abs(md.m11.real() - d1) <= 1e-12);
  CHECK(std::abs(md.m22.real() - d2) <= 1e-12);
  CHECK(std::abs(d1 - d2) <= 1e-12);  // the two entries are the same number

  CHECK(std::abs(md.m11 - mm.m11) <= 1e-12);
  CHECK(std::abs(md.m22 - mm.m22) <= 1e-12);

  // the pairing matrix is the matrix view of the quaternionic inner product
  const Mat2c p = pairing_matrix(F, diag.member(0));
  const auto zv = qinner(F, diag.member(0)).matrix2();
  CHECK(std::abs(p.m11 - zv[0]) <= 1e-12);
  CHECK(std::abs(p.m12 - zv[1]) <= 1e-12);
  CHECK(std::abs(p.m21 - zv[2]) <= 1e-12);
  CHECK(std::abs(p.m22 - zv[3]) <= 1e-12);
}

TEST_CASE("expansion recovers a member with its right factor") {
  const BoxSpec box = small_box();
  const LiftedSystem sys = lift(dft_basis(box), LiftMode::diagonal);
  const Quaternion q{0.3, -0.4, 0.5, 0.1};
  const QuaternionField F = right_scale(sys.member(5), q);

  const Expansion e = expand(F, sys);
  for (std::size_t n = 0; n < sys.size(); ++n) {
    const Quaternion& c = e.coeffs[n];
    if (n == 5) {
      CHECK(std::abs(c.q0 - q.q0) <= 1e-12);
      CHECK(std::abs(c.q1 - q.q1) <= 1e-12);
      CHECK(std::abs(c.q2 - q.q2) <= 1e-12);
      CHECK(std::abs(c.q3 - q.q3) <= 1e-12);
    } else {
      CHECK(std::sqrt(c.norm2()) <= 1e-12);
    }
  }
  CHECK(e.residual <= 1e-12);
}

TEST_CASE("complete lifted families expand random fields to machine zero") {
  const BoxSpec box = small_box();
  const auto phis = dft_basis(box);
  const QuaternionField F = random_qfield(box, 123);
  for (LiftMode mode : {LiftMode::diagonal, LiftMode::mixed}) {
    const Expansion e = expand(F, lift(phis, mode));
    CHECK(e.residual <= 1e-10);

    double sum = 0;
    for (const Quaternion& q : e.coeffs) sum += q.norm2();
    CHECK(std::abs(sum - norm2(F)) <= 1e-9 * norm2(F));
  }
}

TEST_CASE("only the zero field has all coefficients zero") {
  const BoxSpec box = small_box();
  const LiftedSystem sys = lift(dft_basis(box), LiftMode::diagonal);

  const Expansion ez = expand(QuaternionField(box), sys);
  double biggest = 0;
  for (const Quaternion& q : ez.coeffs) biggest = std::max(biggest, std::sqrt(q.norm2()));
  CHECK(biggest <= 1e-15);
  CHECK(norm2(ez.partial_sum) <= 1e-30);

  const QuaternionField F = random_qfield(box, 9);
  const Expansion er = expand(F, sys);
  biggest = 0;
  for (const Quaternion& q : er.coeffs) biggest = std::max(biggest, std::sqrt(q.norm2()));
  CHECK(biggest > 1e-8 * std::sqrt(norm2(F)));
}

TEST_CASE("orthonormal and duplicated families keep their bounds diagonally") {
  const BoxSpec box = small_box();
  const auto phis = dft_basis(box);
  std::vector<QuaternionField> probes;
  for (unsigned s = 0; s < 4; ++s) probes.push_back(random_qfield(box, 800 + s));

  const PreservationReport onb = verify_frame_preservation(phis, 1.0, 1.0, probes);
  CHECK(onb.passed);
  CHECK(std::abs(onb.worst_low) <= 1e-9);
  CHECK(std::abs(onb.worst_high) <= 1e-9);
  CHECK(onb.max_offdiag < 1e-12);

  std::vector<SampledField> doubled = phis;
  doubled.insert(doubled.end(), phis.begin(), phis.end());
  const PreservationReport dup = verify_frame_preservation(doubled, 2.0, 2.0, probes);
  CHECK(dup.passed);
  CHECK(std::abs(dup.worst_low) <= 1e-9);
  CHECK(std::abs(dup.worst_high) <= 1e-9);

  // wrong bounds must be reported as violations, not absorbed
  const PreservationReport bad = verify_frame_preservation(phis, 1.5, 2.0, probes);
  CHECK_FALSE(bad.passed);
  CHECK(bad.worst_low < -0.4);

  CHECK_THROWS_AS(verify_frame_preservation(phis, 1.0, 1.0, {}), std::domain_error);
}

TEST_CASE("lifted component probes reproduce complex empirical bounds") {
  const BoxSpec box = small_box();
  // weighted plane waves: Rayleigh at bin p is exactly the squared weight
  std::vector<SampledField> phis;
  std::vector<SampledField> probes_c;
  std::vector<QuaternionField> probes_q;
  int idx = 0;
  for (int p0 = 0; p0 < box.n[0]; ++p0)
    for (int p1 = 0; p1 < box.n[1]; ++p1) {
      const double w = 1.0 + 0.5 * std::sin(1.0 + 0.37 * idx++);
      SampledField phi = dft_member(box, p0, p1);
      for (cplx& v : phi.values) v *= w;
      phis.push_back(std::move(phi));

      probes_c.push_back(dft_member(box, p0, p1));
      QuaternionField a(box), b(box);
      a.f1 = probes_c.back();
      b.f2 = probes_c.back();
      probes_q.push_back(std::move(a));
      probes_q.push_back(std::move(b));
    }

  const FieldListSystem cs(phis);
  const EmpiricalReport ce = empirical_bounds(cs, probes_c, 0);
  const EmpiricalReport le = lifted_empirical_bounds(lift(phis, LiftMode::diagonal), probes_q);
  CHECK(le.A_emp == doctest::Approx(ce.A_emp).epsilon(1e-6));
  CHECK(le.B_emp == doctest::Approx(ce.B_emp).epsilon(1e-6));
  CHECK(ce.A_emp < 0.5);  // the weights genuinely spread the bounds
  CHECK(ce.B_emp > 1.5);

  // the mixed lift carries the same bounds
  const EmpiricalReport me = lifted_empirical_bounds(lift(phis, LiftMode::mixed), probes_q);
  CHECK(me.A_emp == doctest::Approx(ce.A_emp).epsilon(1e-6));
  CHECK(me.B_emp == doctest::Approx(ce.B_emp).epsilon(1e-6));
}

TEST_CASE("uncertified families refuse to lift as wavelet frames") {
  MotherWavelet zero;
  zero.dim = 2;
  zero.spectrum_fn = [](const Vec4&) { return cplx(0.0); };
  GridSpec2D g;
  g.lambda0 = 0.5;
  g.L = 2;
  g.t_max = 1;
  g.beta0 = g.beta1 = 0.7;
  g.m_range = 0;
  BoundsOptions opt;
  opt.box = small_box(8.0, 8);
  opt.probes.r_min = 0.5;
  opt.probes.r_max = 2.0;
  opt.probes.n_radial = 4;
  opt.probes.n_angular = 4;
  opt.probes.max_rounds = 2;
  CHECK_THROWS_WITH_AS(lift_wavelet_frame(zero, g, opt),
                       "underlying complex system not certified as frame",
                       std::runtime_error);
}

TEST_CASE("certified ring frames lift with their measured bounds") {
  const MotherWavelet psi = laplacian_gaussian(2);
  GridSpec2D g;
  g.lambda0 = 0.5;
  g.L = 8;
  g.t_max = 4;
  g.beta0 = g.beta1 = 0.7;
  g.m_range = 2;
  BoundsOptions opt;
  BoxSpec box = small_box(14.0, 32);
  opt.box = box;
  opt.band_lo = 0.75;
  opt.band_hi = 2.0;
  opt.probes.r_min = 0.75;
  opt.probes.r_max = 2.0;
  opt.probes.n_radial = 8;
  opt.probes.n_angular = 8;

  const LiftedFrame lf = lift_wavelet_frame(psi, g, opt);
  CHECK(lf.report.verdict == "frame");
  CHECK(lf.system.mode() == LiftMode::diagonal);
  CHECK(lf.system.size() == 80 * 25);

  // atoms arrive in enumeration order: spot-check against the plan
  const WaveletPlan plan = WaveletPlan::build(psi, g, box, opt.analysis);
  const SampledField a0 = plan.member_field(3, 7);
  const std::size_t flat = plan.cells[3].offset + 7;
  double worst = 0;
  for (std::size_t i = 0; i < a0.values.size(); ++i)
    worst = std::max(worst, std::abs(a0.values[i] - lf.system.source()[flat].values[i]));
  CHECK(worst == 0.0);

  // lifted probes at the extremal band bins reproduce the complex bounds
  const auto bins = band_bins(box, opt.band_lo, opt.band_hi);
  WaveletSystem cs(WaveletPlan::build(psi, g, box, opt.analysis));
  const std::vector<double> rq = rayleigh_quotients(cs, bins);
  std::size_t imin = 0, imax = 0;
  for (std::size_t i = 1; i < rq.size(); ++i) {
    if (rq[i] < rq[imin]) imin = i;
    if (rq[i] > rq[imax]) imax = i;
  }
  std::vector<QuaternionField> probes;
  for (std::size_t i : {imin, imax}) {
    SampledField delta(box);
    delta.values[box.rank(std::array<int, 4>{(bins[i][0] + box.n[0]) % box.n[0],
                                             (bins[i][1] + box.n[1]) % box.n[1], 0, 0}
                              .data())] = 1.0;
    const SampledField wave = ifft(delta);
    QuaternionField a(box), b(box);
    a.f1 = wave;
    b.f2 = wave;
    probes.push_back(std::move(a));
    probes.push_back(std::move(b));
  }
  const EmpiricalReport le = lifted_empirical_bounds(lf.system, probes);
  CHECK(le.A_emp == doctest::Approx(lf.report.A_emp).epsilon(1e-6));
  CHECK(le.B_emp == doctest::Approx(lf.report.B_emp).epsilon(1e-6));

  // and the preservation report accepts those bounds on the same probe class
  const PreservationReport pr = verify_frame_preservation(
      lf.system.source(), lf.report.A_emp, lf.report.B_emp, probes, 1e-6);
  CHECK(pr.passed);
  CHECK(pr.max_offdiag < 1e-12);
}

}  // TEST_SUITE
