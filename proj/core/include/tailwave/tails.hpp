#pragma once

#include <optional>

#include "tailwave/equation.hpp"
#include "tailwave/solver.hpp"

namespace tailwave {

enum class TailVerdict { TailFree, Tailed };

const char* to_string(TailVerdict v);

// Field magnitudes over the region causally behind the data supports.
// sup metrics use the discrete max norm; energy is the plain discrete L2
// sum (a proxy measure, not a canonical one). The verdict tolerance defaults
// to ten times a Richardson truncation estimate from a refined companion
// solve, floored at 1e-12, so it refines with the grid.
struct TailReport {
  double sup_tail = 0.0;
  double energy_tail = 0.0;
  double sup_total = 0.0;
  double tol = 0.0;
  double truncation_estimate = 0.0;
  TailVerdict verdict = TailVerdict::Tailed;
  int region_nodes = 0;
  // Cauchy runs only: change of the region sup over the last tenth of the
  // run. A Tailed verdict with vanishing drift marks the massless
  // constant-plateau interior, which is flagged rather than folded into
  // either verdict.
  double late_drift = 0.0;
  bool constant_plateau = false;
};

// Goursat tail run: bump data on the v = v_lo line (and optionally on the
// u = u_lo line), zero corner. The tail region is
//   { u > b + 2 h_u,  v > d + 2 h_v }
// where [a,b] and [c,d] are the data supports (a degenerate support at the
// axis origin when a side carries no bump). Bump edges must land on grid
// nodes (SupportNotAligned otherwise); supports must sit strictly inside the
// axes. Throws RegionEmpty when no grid node lies in the region.
struct GoursatTailSpec {
  Bump bump_u;
  std::optional<Bump> bump_v;
  GridAxis u_axis;
  GridAxis v_axis;
};

TailReport measure_goursat_tail(const WaveEquation& eq, const GoursatTailSpec& spec,
                                std::optional<double> tol_override = {});

// Cauchy tail run: compact phi0 (and optionally phi1) bumps at t = t_lo.
// The tail region is the cone interior strictly behind both fronts,
//   { (t,x) : t - t0 > (x - a) + m  and  t - t0 > (b - x) + m },  m = 2 h_x,
// with [a,b] the union of the data supports.
struct CauchyTailSpec {
  std::optional<Bump> phi0;
  std::optional<Bump> phi1;
  GridAxis t_axis;
  GridAxis x_axis;
};

TailReport measure_cauchy_tail(const WaveEquation& eq, const CauchyTailSpec& spec,
                               std::optional<double> tol_override = {});

}  // namespace tailwave
