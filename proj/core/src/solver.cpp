#include "tailwave/solver.hpp"

#include <cmath>

#include "march.hpp"

namespace tailwave {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double Bump::operator()(double x) const {
  const double s = x - center;
  if (std::fabs(s) >= 0.5 * width) return 0.0;
  const double c = std::cos(kPi * s / width);
  return amplitude * c * c;
}

double Bump::derivative(double x, int order) const {
  if (order == 0) return (*this)(x);
  const double s = x - center;
  if (std::fabs(s) >= 0.5 * width) return 0.0;
  // cos^2(k s) = (1 + cos(2 k s)) / 2 with k = pi/width, so the n-th
  // derivative is (2k)^n/2 * cos(2 k s + n pi/2).
  const double k = kPi / width;
  const double scale = 0.5 * std::pow(2.0 * k, order);
  return amplitude * scale * std::cos(2.0 * k * s + 0.5 * kPi * order);
}

Bump Bump::unit_integral(double center, double width) {
  return Bump{center, width, 2.0 / width};
}

CharacteristicData CharacteristicData::sample(
    const std::function<double(double)>& phi_of_u,
    const std::function<double(double)>& psi_of_v, const GridAxis& u_axis,
    const GridAxis& v_axis) {
  CharacteristicData data;
  data.on_v0.resize(u_axis.nodes());
  data.on_u0.resize(v_axis.nodes());
  for (int i = 0; i < u_axis.nodes(); ++i) data.on_v0[i] = phi_of_u(u_axis.node(i));
  for (int j = 0; j < v_axis.nodes(); ++j) data.on_u0[j] = psi_of_v(v_axis.node(j));
  data.corner = data.on_v0[0];
  if (std::fabs(data.on_v0[0] - data.on_u0[0]) > 1e-12)
    throw ValidationError("characteristic data disagree at the corner");
  return data;
}

CauchyData CauchyData::sample(const std::function<double(double)>& phi0_of_x,
                              const std::function<double(double)>& phi1_of_x,
                              const GridAxis& x_axis, double t0) {
  CauchyData data;
  data.t0 = t0;
  data.phi0.resize(x_axis.nodes());
  data.phi1.resize(x_axis.nodes());
  for (int i = 0; i < x_axis.nodes(); ++i) {
    data.phi0[i] = phi0_of_x(x_axis.node(i));
    data.phi1[i] = phi1_of_x(x_axis.node(i));
  }
  return data;
}

Field2D solve_goursat(const WaveEquation& eq, const CharacteristicData& data,
                      GridAxis u_axis, GridAxis v_axis) {
  detail::require_clear_rect(eq, Rect{u_axis.lo, u_axis.hi, v_axis.lo, v_axis.hi},
                             "solve_goursat");
  if (static_cast<int>(data.on_v0.size()) != u_axis.nodes() ||
      static_cast<int>(data.on_u0.size()) != v_axis.nodes())
    throw ValidationError("characteristic data not sampled on the grid lines");
  if (std::fabs(data.on_v0[0] - data.on_u0[0]) > 1e-12)
    throw ValidationError("characteristic data disagree at the corner");

  Field2D f(u_axis, v_axis, "u", "v");
  for (int i = 0; i < u_axis.nodes(); ++i) f.at(i, 0) = data.on_v0[i];
  for (int j = 0; j < v_axis.nodes(); ++j) f.at(0, j) = data.on_u0[j];
  detail::march_forward(eq.U(), eq.V(), eq.W(), f);
  return f;
}

Field2D solve_cauchy(const WaveEquation& eq, const CauchyData& data, GridAxis t_axis,
                     GridAxis x_axis) {
  const double ht = t_axis.h(), hx = x_axis.h();
  if (ht > hx * (1.0 + 1e-12))
    throw CflViolation("h_t/h_x = " + std::to_string(ht / hx) + " exceeds 1");
  if (static_cast<int>(data.phi0.size()) != x_axis.nodes() ||
      data.phi1.size() != data.phi0.size())
    throw ValidationError("cauchy data arrays must match the x-grid");
  if (std::fabs(t_axis.lo - data.t0) > 1e-12)
    throw ValidationError("t-grid must start at the data time");

  // Coefficient values at a spacetime node, through the null-coordinate map.
  const auto coeff = [&](const Expr& e, double t, double x) {
    return e.eval(0.5 * (t - x), 0.5 * (t + x));
  };
  const Expr a_expr = eq.U() + eq.V();  // on dphi/dt
  const Expr b_expr = eq.V() - eq.U();  // on dphi/dx
  const int nx = x_axis.cells;

  Field2D f(t_axis, x_axis, "t", "x");
  for (int i = 0; i <= nx; ++i) f.at(0, i) = data.phi0[i];

  // First step: Taylor expansion with d2phi/dt2 from the PDE.
  for (int i = 1; i < nx; ++i) {
    const double x = x_axis.node(i);
    const double t = t_axis.lo;
    const double dxx = (data.phi0[i + 1] - 2.0 * data.phi0[i] + data.phi0[i - 1]) /
                       (hx * hx);
    const double dx = (data.phi0[i + 1] - data.phi0[i - 1]) / (2.0 * hx);
    const double dtt = dxx - coeff(a_expr, t, x) * data.phi1[i] -
                       coeff(b_expr, t, x) * dx - coeff(eq.W(), t, x) * data.phi0[i];
    f.at(1, i) = data.phi0[i] + ht * data.phi1[i] + 0.5 * ht * ht * dtt;
  }
  f.at(1, 0) = 0.0;
  f.at(1, nx) = 0.0;

  for (int n = 1; n < t_axis.cells; ++n) {
    const double t = t_axis.node(n);
    for (int i = 1; i < nx; ++i) {
      const double x = x_axis.node(i);
      const double a = coeff(a_expr, t, x);
      const double lhs = 1.0 / (ht * ht) + a / (2.0 * ht);
      if (std::fabs(lhs) * ht * ht < detail::kPivotTol)
        throw UnstableCell("time-step pivot vanished at t = " + std::to_string(t));
      const double dxx =
          (f.at(n, i + 1) - 2.0 * f.at(n, i) + f.at(n, i - 1)) / (hx * hx);
      const double dx = (f.at(n, i + 1) - f.at(n, i - 1)) / (2.0 * hx);
      const double rhs = (2.0 * f.at(n, i) - f.at(n - 1, i)) / (ht * ht) +
                         a * f.at(n - 1, i) / (2.0 * ht) + dxx -
                         coeff(b_expr, t, x) * dx - coeff(eq.W(), t, x) * f.at(n, i);
      f.at(n + 1, i) = rhs / lhs;
    }
    f.at(n + 1, 0) = 0.0;
    f.at(n + 1, nx) = 0.0;
  }
  return f;
}

ConvergenceResult convergence_order(const WaveEquation& eq,
                                    const std::function<double(double)>& phi_of_u,
                                    const std::function<double(double)>& psi_of_v,
                                    GridAxis u_axis, GridAxis v_axis) {
  Field2D fields[3];
  for (int level = 0; level < 3; ++level) {
    const int factor = 1 << level;
    const GridAxis ua = u_axis.refined(factor), va = v_axis.refined(factor);
    fields[level] =
        solve_goursat(eq, CharacteristicData::sample(phi_of_u, psi_of_v, ua, va), ua, va);
  }
  ConvergenceResult result;
  result.coarse_diff = fields[0].max_abs_diff_on_common(fields[1], 2);
  // Compare the h/2 and h/4 solutions on the coarse nodes as well, so both
  // norms live on the same point set.
  double fine = 0.0;
  for (int j = 0; j < fields[0].row().nodes(); ++j)
    for (int i = 0; i < fields[0].col().nodes(); ++i)
      fine = std::max(fine, std::fabs(fields[1].at(2 * i, 2 * j) -
                                      fields[2].at(4 * i, 4 * j)));
  result.fine_diff = fine;
  if (result.coarse_diff < 1e-12 || result.fine_diff < 1e-13) {
    result.exact_scheme = true;
  } else {
    result.order = std::log2(result.coarse_diff / result.fine_diff);
  }
  return result;
}

}  // namespace tailwave
