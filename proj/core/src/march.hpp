#pragma once

#include "tailwave/equation.hpp"
#include "tailwave/expr.hpp"
#include "tailwave/grid.hpp"

namespace tailwave::detail {

// One characteristic cell of  d2F/dudv + A du F + B dv F + C F = 0,
// discretized with the cross-difference for the mixed derivative and
// cell-center averages of the four corners for the lower-order terms
// (coefficients evaluated at the cell center). Corner order:
//   F0 = (u_i, v_j), F1 = (u_{i+1}, v_j), F2 = (u_i, v_{j+1}),
//   F3 = (u_{i+1}, v_{j+1}).
struct CellCoefficients {
  double c0, c1, c2, c3;  // c0*F0 + c1*F1 + c2*F2 + c3*F3 = 0
};

inline CellCoefficients cell_coefficients(double a, double b, double c, double hu,
                                          double hv) {
  const double pa = 0.5 * hv * a;
  const double pb = 0.5 * hu * b;
  const double q = 0.25 * hu * hv * c;
  return CellCoefficients{
      1.0 - pa - pb + q,   // F0
      -1.0 + pa - pb + q,  // F1
      -1.0 - pa + pb + q,  // F2
      1.0 + pa + pb + q,   // F3
  };
}

constexpr double kPivotTol = 1e-12;

// Fill the interior of `f` marching toward increasing u and v; row j=0 and
// column i=0 must already hold the data.
void march_forward(const Expr& A, const Expr& B, const Expr& C, Field2D& f);

// Fill toward decreasing u and v; row j=n_v and column i=n_u must hold the
// data (advanced orientation).
void march_backward(const Expr& A, const Expr& B, const Expr& C, Field2D& f);

// Throws SingularPath unless the rectangle keeps the domain margin from all
// singular lines and lies inside the equation domain.
void require_clear_rect(const WaveEquation& eq, const Rect& r, const char* what);

}  // namespace tailwave::detail
