#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tailwave/equation.hpp"
#include "tailwave/riemann.hpp"

namespace tailwave {

// Closed-form reference data attached to a registry equation. Every entry
// present here passes its own residual check in the registry tests.
struct KnownForms {
  std::optional<FourPointExpr> riemann;  // exp(lambda - lambda') for CPP entries
  std::optional<int> pw_order;           // N for double-terminating entries
  std::optional<bool> cpp;
};

struct RegistryEntry {
  std::string name;
  WaveEquation eq;
  KnownForms known;
};

// Canonical equations used across tests and acceptance runs:
//   trivial         U = V = W = 0
//   klein_gordon_1  W = 1 (mass 1)
//   multipole_0..4  W = l(l+1)/(v-u)^2, singular on u = v
//   lambda_uv       the potential family with lambda = u v
//   lambda_sincos   lambda = sin(u) cos(v)
const std::vector<RegistryEntry>& registry();

// Lookup by name; also resolves parameterized names klein_gordon_<mu> and
// multipole_<l> outside the canonical list.
std::optional<RegistryEntry> find_entry(std::string_view name);

RegistryEntry make_trivial();
RegistryEntry make_klein_gordon(double mu);
RegistryEntry make_multipole(int l);
RegistryEntry make_lambda_uv();
RegistryEntry make_lambda_sincos();

// The l = 1 multipole solution generated by point data on the u-axis: a
// delta pulse carried along u = u0 plus the smooth wake
//   (2/u0^2) (u v / (v - u)) (theta(u - u0) + c).
// c = 0 is the retarded branch, c = -1 the advanced one; the wake of a
// narrow-bump run approaches the c = 0 smooth part.
struct MultipoleDeltaSolution {
  double u0 = 0.5;
  double c = 0.0;
  double smooth(double u, double v) const;
  double delta_at() const { return u0; }  // location of the singular part
};

MultipoleDeltaSolution multipole_l1_delta_solution(double u0, double c);

}  // namespace tailwave
