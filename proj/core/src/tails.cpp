#include "tailwave/tails.hpp"

#include <cmath>

namespace tailwave {

const char* to_string(TailVerdict v) {
  return v == TailVerdict::TailFree ? "TailFree" : "Tailed";
}

namespace {

void require_aligned(const Bump& b, const GridAxis& axis, const char* what) {
  if (axis.node_index(b.support_lo()) < 0 || axis.node_index(b.support_hi()) < 0)
    throw SupportNotAligned(std::string(what) +
                            ": bump support edges must land on grid nodes");
  if (b.support_lo() <= axis.lo || b.support_hi() >= axis.hi)
    throw ValidationError(std::string(what) +
                          ": bump support must sit strictly inside the axis");
}

double richardson_error_estimate(double coarse_to_fine_diff) {
  // For a second-order scheme, err_h ~ (4/3) ||phi_h - phi_{h/2}||.
  return coarse_to_fine_diff * (4.0 / 3.0);
}

TailReport finish_report(TailReport report, std::optional<double> tol_override) {
  report.tol = tol_override.value_or(
      std::max(10.0 * report.truncation_estimate, 1e-12));
  report.verdict =
      report.sup_tail <= report.tol ? TailVerdict::TailFree : TailVerdict::Tailed;
  return report;
}

}  // namespace

TailReport measure_goursat_tail(const WaveEquation& eq, const GoursatTailSpec& spec,
                                std::optional<double> tol_override) {
  require_aligned(spec.bump_u, spec.u_axis, "u-line data");
  if (spec.bump_v) require_aligned(*spec.bump_v, spec.v_axis, "v-line data");

  const auto phi_of_u = [&](double x) { return spec.bump_u(x); };
  const auto psi_of_v = [&](double x) {
    return spec.bump_v ? (*spec.bump_v)(x) : 0.0;
  };

  const Field2D coarse = solve_goursat(
      eq, CharacteristicData::sample(phi_of_u, psi_of_v, spec.u_axis, spec.v_axis),
      spec.u_axis, spec.v_axis);

  TailReport report;
  if (!tol_override) {
    const GridAxis uf = spec.u_axis.refined(2), vf = spec.v_axis.refined(2);
    const Field2D fine =
        solve_goursat(eq, CharacteristicData::sample(phi_of_u, psi_of_v, uf, vf), uf, vf);
    report.truncation_estimate =
        richardson_error_estimate(coarse.max_abs_diff_on_common(fine, 2));
  }

  const double b = spec.bump_u.support_hi();
  const double d = spec.bump_v ? spec.bump_v->support_hi() : spec.v_axis.lo;
  const double mu = 2.0 * spec.u_axis.h(), mv = 2.0 * spec.v_axis.h();

  report.sup_total = coarse.max_abs();
  for (int j = 0; j < spec.v_axis.nodes(); ++j) {
    const double v = spec.v_axis.node(j);
    if (v <= d + mv) continue;
    for (int i = 0; i < spec.u_axis.nodes(); ++i) {
      if (spec.u_axis.node(i) <= b + mu) continue;
      const double value = std::fabs(coarse.at(i, j));
      report.sup_tail = std::max(report.sup_tail, value);
      report.energy_tail += value * value * spec.u_axis.h() * spec.v_axis.h();
      ++report.region_nodes;
    }
  }
  if (report.region_nodes == 0)
    throw RegionEmpty("goursat tail region contains no grid nodes");
  return finish_report(report, tol_override);
}

TailReport measure_cauchy_tail(const WaveEquation& eq, const CauchyTailSpec& spec,
                               std::optional<double> tol_override) {
  if (!spec.phi0 && !spec.phi1)
    throw ValidationError("cauchy tail run needs phi0 or phi1 data");
  double a = spec.x_axis.hi, b = spec.x_axis.lo;
  for (const std::optional<Bump>& bump : {spec.phi0, spec.phi1}) {
    if (!bump) continue;
    require_aligned(*bump, spec.x_axis, "cauchy data");
    a = std::min(a, bump->support_lo());
    b = std::max(b, bump->support_hi());
  }

  const auto zero = [](double) { return 0.0; };
  const auto phi0 = [&](double x) { return spec.phi0 ? (*spec.phi0)(x) : 0.0; };
  const auto phi1 = [&](double x) { return spec.phi1 ? (*spec.phi1)(x) : 0.0; };
  (void)zero;

  const Field2D coarse =
      solve_cauchy(eq, CauchyData::sample(phi0, phi1, spec.x_axis, spec.t_axis.lo),
                   spec.t_axis, spec.x_axis);

  TailReport report;
  if (!tol_override) {
    const GridAxis tf = spec.t_axis.refined(2), xf = spec.x_axis.refined(2);
    const Field2D fine =
        solve_cauchy(eq, CauchyData::sample(phi0, phi1, xf, tf.lo), tf, xf);
    report.truncation_estimate =
        richardson_error_estimate(coarse.max_abs_diff_on_common(fine, 2));
  }

  const double m = 2.0 * spec.x_axis.h();
  const double t0 = spec.t_axis.lo;
  report.sup_total = coarse.max_abs();

  // Region sup per time level, for the late-time drift diagnostic.
  std::vector<double> sup_of_t(spec.t_axis.nodes(), 0.0);
  for (int n = 0; n < spec.t_axis.nodes(); ++n) {
    const double dt = spec.t_axis.node(n) - t0;
    for (int i = 0; i < spec.x_axis.nodes(); ++i) {
      const double x = spec.x_axis.node(i);
      if (dt <= (x - a) + m || dt <= (b - x) + m) continue;
      const double value = std::fabs(coarse.at(n, i));
      sup_of_t[n] = std::max(sup_of_t[n], value);
      report.energy_tail += value * value * spec.t_axis.h() * spec.x_axis.h();
      ++report.region_nodes;
    }
    report.sup_tail = std::max(report.sup_tail, sup_of_t[n]);
  }
  if (report.region_nodes == 0)
    throw RegionEmpty("cauchy tail region contains no grid nodes");

  const int last = spec.t_axis.cells;
  const int probe = std::max(0, last - std::max(1, spec.t_axis.cells / 10));
  report.late_drift = std::fabs(sup_of_t[last] - sup_of_t[probe]);
  report = finish_report(std::move(report), tol_override);
  report.constant_plateau = report.verdict == TailVerdict::Tailed &&
                            sup_of_t[last] > 0.0 &&
                            report.late_drift <= 0.01 * sup_of_t[last];
  return report;
}

}  // namespace tailwave
