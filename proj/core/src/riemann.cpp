#include "tailwave/riemann.hpp"

#include <cmath>
#include <vector>

#include "march.hpp"
#include "tailwave/quadrature.hpp"

namespace tailwave {

namespace {

// Boundary values exp(-int_x^{hi} g(s) ds) at every node of `axis`, built
// from per-segment adaptive quadrature and a suffix sum.
std::vector<double> exponential_boundary(const GridAxis& axis,
                                         const std::function<double(double)>& g) {
  const int n = axis.cells;
  std::vector<double> suffix(static_cast<std::size_t>(n) + 1, 0.0);
  const double seg_tol = 1e-10 / std::max(1, n);
  for (int i = n - 1; i >= 0; --i) {
    suffix[i] = suffix[i + 1] +
                adaptive_simpson(g, axis.node(i), axis.node(i + 1), seg_tol);
  }
  std::vector<double> values(suffix.size());
  for (std::size_t i = 0; i < suffix.size(); ++i) values[i] = std::exp(-suffix[i]);
  return values;
}

}  // namespace

RiemannField riemann_numeric(const WaveEquation& eq, EvalPoint base, GridAxis u_axis,
                             GridAxis v_axis) {
  if (std::fabs(u_axis.hi - base.u) > 1e-12 || std::fabs(v_axis.hi - base.v) > 1e-12)
    throw ValidationError("riemann grid must end at the base point");
  detail::require_clear_rect(eq, Rect{u_axis.lo, u_axis.hi, v_axis.lo, v_axis.hi},
                             "riemann_numeric");

  RiemannField rf{base, Field2D(u_axis, v_axis, "u", "v")};
  Field2D& f = rf.field;

  // Data on v = v': Delta = exp(-int_u^{u'} V(s, v') ds); on u = u'
  // symmetric with U. The corner value is exactly 1.
  const auto v_integrand = [&](double s) { return eq.V().eval(s, base.v); };
  const auto u_integrand = [&](double s) { return eq.U().eval(base.u, s); };
  const std::vector<double> top = exponential_boundary(u_axis, v_integrand);
  const std::vector<double> right = exponential_boundary(v_axis, u_integrand);
  for (int i = 0; i <= u_axis.cells; ++i) f.at(i, v_axis.cells) = top[i];
  for (int j = 0; j <= v_axis.cells; ++j) f.at(u_axis.cells, j) = right[j];
  f.at(u_axis.cells, v_axis.cells) = 1.0;

  // Adjoint equation in expanded form:
  //   d2D/dudv - U duD - V dvD + (W - duU - dvV) D = 0.
  const Expr A = -eq.U();
  const Expr B = -eq.V();
  const Expr C = eq.W() - diff(eq.U(), Var::u) - diff(eq.V(), Var::v);
  detail::march_backward(A, B, C, f);
  return rf;
}

RiemannField riemann_numeric(const WaveEquation& eq, EvalPoint base, double u_extent,
                             double v_extent, int n) {
  return riemann_numeric(eq, base, GridAxis{base.u - u_extent, base.u, n},
                         GridAxis{base.v - v_extent, base.v, n});
}

double FourPointExpr::eval(double u, double v, double up, double vp) const {
  return std::exp(lambda.eval(u, v) - lambda.eval(up, vp));
}

Expr FourPointExpr::at_base(EvalPoint base) const {
  return exp(lambda - Expr::constant(lambda.eval(base.u, base.v)));
}

FourPointExpr riemann_closed_form_cpp(const WaveEquation& eq) {
  const CppVerdict verdict = classify_cpp(eq);
  if (!verdict.is_cpp)
    throw NotCpp("riemann_closed_form_cpp requires a CPP equation");
  return FourPointExpr{*verdict.lambda};
}

AdjointResidualReport verify_adjoint(const WaveEquation& eq, const RiemannField& rf) {
  const Field2D& f = rf.field;
  const double hu = f.col().h(), hv = f.row().h();
  const Expr dU = diff(eq.U(), Var::u);
  const Expr dV = diff(eq.V(), Var::v);

  bool cpp = false;
  try {
    cpp = classify_cpp(eq).is_cpp;
  } catch (const IndeterminateError&) {
    cpp = false;
  }

  AdjointResidualReport report;
  if (cpp) report.cpp_max_residual = 0.0;
  double sum_sq = 0.0;
  for (int j = 1; j < f.row().cells; ++j) {
    for (int i = 1; i < f.col().cells; ++i) {
      const EvalPoint p{f.col().node(i), f.row().node(j)};
      const double cross = (f.at(i + 1, j + 1) - f.at(i + 1, j - 1) -
                            f.at(i - 1, j + 1) + f.at(i - 1, j - 1)) /
                           (4.0 * hu * hv);
      const double du = (f.at(i + 1, j) - f.at(i - 1, j)) / (2.0 * hu);
      const double dv = (f.at(i, j + 1) - f.at(i, j - 1)) / (2.0 * hv);
      const double d = f.at(i, j);
      const double r = cross - eq.U().eval(p) * du - dU.eval(p) * d -
                       eq.V().eval(p) * dv - dV.eval(p) * d + eq.W().eval(p) * d;
      report.max_residual = std::max(report.max_residual, std::fabs(r));
      sum_sq += r * r;
      ++report.interior_points;
      if (cpp) {
        const double rc = cross - eq.W().eval(p) * d;
        report.cpp_max_residual = std::max(*report.cpp_max_residual, std::fabs(rc));
      }
    }
  }
  if (report.interior_points > 0)
    report.rms_residual = std::sqrt(sum_sq / report.interior_points);
  return report;
}

double GreenFunction::operator()(double u, double v) const {
  if (u > field_.base.u || v > field_.base.v) return 0.0;
  const Field2D& f = field_.field;
  const double su = (u - f.col().lo) / f.col().h();
  const double sv = (v - f.row().lo) / f.row().h();
  if (su < 0.0 || sv < 0.0)
    throw ValidationError("green function query below the computed grid");
  int i = std::min(static_cast<int>(su), f.col().cells - 1);
  int j = std::min(static_cast<int>(sv), f.row().cells - 1);
  const double a = su - i, b = sv - j;
  return (1.0 - a) * (1.0 - b) * f.at(i, j) + a * (1.0 - b) * f.at(i + 1, j) +
         (1.0 - a) * b * f.at(i, j + 1) + a * b * f.at(i + 1, j + 1);
}

}  // namespace tailwave
