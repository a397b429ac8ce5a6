#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qwave/grid.hpp"

namespace qwave {

using std::numbers::pi;

namespace {

void check_pair(double lambda0, int L) {
  if (!(lambda0 > 0.0) || !(lambda0 < 1.0))
    throw std::domain_error("invalid annulus parameters");
  if (L <= 1) throw std::domain_error("invalid annulus parameters");
}

int span(int m_range) { return 2 * m_range + 1; }

}  // namespace

void GridSpec2D::validate() const {
  check_pair(lambda0, L);
  if (t_max < 1 || m_range < 0 || beta0 < 0.0 || beta1 < 0.0)
    throw std::domain_error("invalid annulus parameters");
}

std::size_t GridSpec2D::count() const {
  const std::size_t rings = std::size_t(L) * std::size_t(t_max) * std::size_t(t_max + 1) / 2;
  const std::size_t tr = std::size_t(span(m_range));
  return rings * tr * tr;
}

void GridSpec4D::validate() const {
  check_pair(lambda01, L1);
  check_pair(lambda02, L2);
  if (t_max < 1 || j_max < 1 || m_range < 0) throw std::domain_error("invalid annulus parameters");
  for (double b : {beta0, beta1, beta2, beta3})
    if (b < 0.0) throw std::domain_error("invalid annulus parameters");
}

std::size_t GridSpec4D::count() const {
  const std::size_t r1 = std::size_t(L1) * std::size_t(t_max) * std::size_t(t_max + 1) / 2;
  const std::size_t r2 = std::size_t(L2) * std::size_t(j_max) * std::size_t(j_max + 1) / 2;
  std::size_t tr = 1;
  for (int ax = 0; ax < 4; ++ax) tr *= std::size_t(span(m_range));
  return r1 * r2 * tr;
}

double annulus_area(int t, double lambda, int L) {
  if (t < 1 || !(lambda > 0.0) || L <= 1) throw std::domain_error("invalid annulus parameters");
  return pi * double(2 * t - 1) * lambda * lambda / (double(t) * double(L));
}

AreaReport validate_area_bound(double lambda, int L, int t_max, double eta) {
  if (!(eta > 0.0)) throw std::domain_error("invalid annulus parameters");
  AreaReport r;
  r.eta = eta;
  r.sup_bound = 2.0 * pi * lambda * lambda / double(L);
  r.classic_bound = 1.5 * pi * lambda * lambda / double(L);
  // the area profile increases with t, so the worst enumerated ring is the last
  r.worst_t = t_max;
  r.worst_area = annulus_area(t_max, lambda, L);
  r.ok = r.sup_bound < eta;
  return r;
}

AreaReport validate_area_bound(const GridSpec2D& g, double eta) {
  g.validate();
  return validate_area_bound(g.lambda0, g.L, g.t_max, eta);
}

std::array<AreaReport, 2> validate_area_bound(const GridSpec4D& g, double eta) {
  g.validate();
  return {validate_area_bound(g.lambda01, g.L1, g.t_max, eta),
          validate_area_bound(g.lambda02, g.L2, g.j_max, eta)};
}

std::vector<GridPoint2D> enumerate_grid_2d(const GridSpec2D& g) {
  g.validate();
  std::vector<GridPoint2D> pts;
  pts.reserve(g.count());
  for (int t = 1; t <= g.t_max; ++t) {
    const int nl = t * g.L;
    for (int l = 0; l < nl; ++l) {
      const double theta = 2.0 * pi * double(l) / double(nl);
      const double c = std::cos(theta), s = std::sin(theta);
      const double ring = double(t) * g.lambda0;
      for (int m0 = -g.m_range; m0 <= g.m_range; ++m0)
        for (int m1 = -g.m_range; m1 <= g.m_range; ++m1) {
          GridPoint2D p;
          p.t = t;
          p.l = l;
          p.m0 = m0;
          p.m1 = m1;
          p.a = g.scale_mode == ScaleMode::ring ? ring : g.lambda0;
          p.theta = theta;
          const double u0 = m0 * g.beta0, u1 = m1 * g.beta1;
          p.b = {ring * (c * u0 - s * u1), ring * (s * u0 + c * u1)};
          pts.push_back(p);
        }
    }
  }
  return pts;
}

std::vector<GridPoint4D> enumerate_grid_4d(const GridSpec4D& g) {
  g.validate();
  std::vector<GridPoint4D> pts;
  pts.reserve(g.count());
  for (int t = 1; t <= g.t_max; ++t)
    for (int j = 1; j <= g.j_max; ++j) {
      const int nl = t * g.L1, nk = j * g.L2;
      for (int l = 0; l < nl; ++l)
        for (int k = 0; k < nk; ++k) {
          const double th1 = 2.0 * pi * double(l) / double(nl);
          const double th2 = 2.0 * pi * double(k) / double(nk);
          DihedralSimilitude ring{double(t) * g.lambda01, double(j) * g.lambda02, th1, th2};
          DihedralSimilitude dil = ring;
          if (g.scale_mode == ScaleMode::base) {
            dil.lambda1 = g.lambda01;
            dil.lambda2 = g.lambda02;
          }
          for (int m0 = -g.m_range; m0 <= g.m_range; ++m0)
            for (int m1 = -g.m_range; m1 <= g.m_range; ++m1)
              for (int m2 = -g.m_range; m2 <= g.m_range; ++m2)
                for (int m3 = -g.m_range; m3 <= g.m_range; ++m3) {
                  GridPoint4D p;
                  p.t = t;
                  p.j = j;
                  p.l = l;
                  p.k = k;
                  p.m0 = m0;
                  p.m1 = m1;
                  p.m2 = m2;
                  p.m3 = m3;
                  p.A = dil;
                  const Vec4 u{m0 * g.beta0, m1 * g.beta1, m2 * g.beta2, m3 * g.beta3};
                  const Vec4 b = ring.apply(u, 4);
                  p.b = {b[0], b[1], b[2], b[3]};
                  pts.push_back(p);
                }
        }
    }
  return pts;
}

}  // namespace qwave
