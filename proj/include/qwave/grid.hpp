#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "qwave/quaternion.hpp"

namespace qwave {

// Dilation value attached to ring t: the ring radius t*lambda0 (default) or
// the fixed base scale lambda0.  Translations always use the ring-scaled
// rotation-dilation either way.
enum class ScaleMode { ring, base };

struct GridSpec2D {
  double lambda0 = 0.5;
  int L = 8;
  double beta0 = 1.0, beta1 = 1.0;
  int t_max = 4;
  int m_range = 2;
  ScaleMode scale_mode = ScaleMode::ring;

  void validate() const;
  std::size_t count() const;
};

struct GridSpec4D {
  double lambda01 = 0.5, lambda02 = 0.5;
  int L1 = 4, L2 = 4;
  double beta0 = 1.0, beta1 = 1.0, beta2 = 1.0, beta3 = 1.0;
  int t_max = 2, j_max = 2;
  int m_range = 1;
  ScaleMode scale_mode = ScaleMode::ring;

  void validate() const;
  std::size_t count() const;
};

struct GridPoint2D {
  int t, l, m0, m1;
  double a;      // dilation value per scale_mode
  double theta;  // l * 2pi / (t L)
  std::array<double, 2> b;

  DihedralSimilitude sim() const { return DihedralSimilitude{a, 0.0, theta, 0.0}; }
};

struct GridPoint4D {
  int t, j, l, k;
  int m0, m1, m2, m3;
  DihedralSimilitude A;  // dilation-rotation per scale_mode
  std::array<double, 4> b;
};

// pi (2t-1) lambda^2 / (t L): area of the t-th annulus sector cell
double annulus_area(int t, double lambda, int L);

struct AreaReport {
  bool ok;
  double eta;
  double sup_bound;      // 2 pi lambda^2 / L, the true supremum over t
  double classic_bound;  // 3 pi lambda^2 / (2 L), crossed from t = 3 on
  int worst_t;
  double worst_area;
};

AreaReport validate_area_bound(double lambda, int L, int t_max, double eta);
AreaReport validate_area_bound(const GridSpec2D& g, double eta);
std::array<AreaReport, 2> validate_area_bound(const GridSpec4D& g, double eta);

std::vector<GridPoint2D> enumerate_grid_2d(const GridSpec2D& g);
std::vector<GridPoint4D> enumerate_grid_4d(const GridSpec4D& g);

}  // namespace qwave
