#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "tailwave/equation.hpp"
#include "tailwave/grid.hpp"

namespace tailwave {

// C1 cosine bump: amplitude * cos^2(pi (x - center) / width) on
// |x - center| <= width/2, zero elsewhere. Compact support with bounded
// curvature, used for all compact-support data.
struct Bump {
  double center = 0.0;
  double width = 1.0;
  double amplitude = 1.0;

  double operator()(double x) const;
  double derivative(double x, int order) const;  // analytic, any order
  double support_lo() const { return center - 0.5 * width; }
  double support_hi() const { return center + 0.5 * width; }
  // Scaled to unit integral (integral of the cos^2 profile is
  // amplitude * width / 2).
  static Bump unit_integral(double center, double width);
};

// Goursat data: phi on the line v = v0 (sampled along u) and on the line
// u = u0 (sampled along v), sharing the corner value.
struct CharacteristicData {
  std::vector<double> on_v0;  // phi(u_i, v0)
  std::vector<double> on_u0;  // phi(u0, v_j)
  double corner = 0.0;

  static CharacteristicData sample(const std::function<double(double)>& phi_of_u,
                                   const std::function<double(double)>& psi_of_v,
                                   const GridAxis& u_axis, const GridAxis& v_axis);
};

// Cauchy data phi(t0, x) and dphi/dt(t0, x) on an x-grid.
struct CauchyData {
  std::vector<double> phi0;
  std::vector<double> phi1;
  double t0 = 0.0;

  static CauchyData sample(const std::function<double(double)>& phi0_of_x,
                           const std::function<double(double)>& phi1_of_x,
                           const GridAxis& x_axis, double t0 = 0.0);
};

// Characteristic (Goursat) march of the wave equation over
// [u_axis] x [v_axis] with data on the lower edges. Second order.
Field2D solve_goursat(const WaveEquation& eq, const CharacteristicData& data,
                      GridAxis u_axis, GridAxis v_axis);

// Explicit three-level scheme for the (t,x) form
//   d2phi/dt2 - d2phi/dx2 + (U+V) dphi/dt + (V-U) dphi/dx + W phi = 0
// (null-coordinate coefficients evaluated at u=(t-x)/2, v=(t+x)/2).
// Requires h_t/h_x <= 1; the first step uses the Taylor expansion with the
// PDE supplying d2phi/dt2. End-point values are held at zero, so data and
// run length must keep the fronts inside the x-range. Field axes: col = t,
// row = x.
Field2D solve_cauchy(const WaveEquation& eq, const CauchyData& data, GridAxis t_axis,
                     GridAxis x_axis);

// Richardson order estimate from solves at h, h/2, h/4 (discrete max norm on
// the common coarse grid). exact_scheme flags difference pairs at round-off,
// where the ratio carries no information.
struct ConvergenceResult {
  std::optional<double> order;
  bool exact_scheme = false;
  double coarse_diff = 0.0;  // ||phi_h - phi_{h/2}||
  double fine_diff = 0.0;    // ||phi_{h/2} - phi_{h/4}||
};

// Data are regenerated per grid through the sampling functions.
ConvergenceResult convergence_order(const WaveEquation& eq,
                                    const std::function<double(double)>& phi_of_u,
                                    const std::function<double(double)>& psi_of_v,
                                    GridAxis u_axis, GridAxis v_axis);

}  // namespace tailwave
