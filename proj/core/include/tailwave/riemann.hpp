#pragma once

#include <optional>

#include "tailwave/equation.hpp"
#include "tailwave/grid.hpp"

namespace tailwave {

// The Riemann function Delta(u,v; u',v') of the advanced Green function for
// a fixed base point (u',v'), on a grid whose top-right corner is the base.
struct RiemannField {
  EvalPoint base;
  Field2D field;  // col = u, row = v; field.at(nu, nv) == 1 at the base
};

// Solves the adjoint characteristic problem: boundary data on the lines
// u = u' and v = v' from the exponential-integral conditions (adaptive
// quadrature, abs tol 1e-10), then a second-order cell march toward
// decreasing u and v. Axis `hi` ends must equal the base coordinates.
RiemannField riemann_numeric(const WaveEquation& eq, EvalPoint base, GridAxis u_axis,
                             GridAxis v_axis);

// Convenience: n x n cells on [base - extent, base].
RiemannField riemann_numeric(const WaveEquation& eq, EvalPoint base, double u_extent,
                             double v_extent, int n);

// Closed-form Riemann function of a CPP equation,
//   Delta(u,v;u',v') = exp(lambda(u,v) - lambda(u',v')),
// as a four-variable object: a (u,v) expression parameterized by the primed
// base point.
struct FourPointExpr {
  Expr lambda;
  double eval(double u, double v, double up, double vp) const;
  // The (u,v) expression for a fixed base point.
  Expr at_base(EvalPoint base) const;
};

// Throws NotCpp when the equation fails the CPP test.
FourPointExpr riemann_closed_form_cpp(const WaveEquation& eq);

// Interior residual of the adjoint equation under centered differences; for
// CPP equations also the residual of d2Delta/dudv - W Delta = 0.
struct AdjointResidualReport {
  double max_residual = 0.0;
  double rms_residual = 0.0;
  std::optional<double> cpp_max_residual;
  int interior_points = 0;
};

AdjointResidualReport verify_adjoint(const WaveEquation& eq, const RiemannField& field);

// The assembled advanced Green function: Delta inside the support
// {u <= u', v <= v'} (bilinear interpolation between nodes), exactly zero
// outside it.
class GreenFunction {
 public:
  explicit GreenFunction(RiemannField field) : field_(std::move(field)) {}
  double operator()(double u, double v) const;
  const RiemannField& riemann() const { return field_; }

 private:
  RiemannField field_;
};

}  // namespace tailwave
