#include "tailwave/registry.hpp"

#include <charconv>
#include <cmath>

#include "tailwave/grid.hpp"

namespace tailwave {

namespace {

EquationDomain box(double lo, double hi) {
  EquationDomain d;
  d.rect = Rect{lo, hi, lo, hi};
  return d;
}

}  // namespace

RegistryEntry make_trivial() {
  WaveEquation eq(parse("0"), parse("0"), parse("0"), box(-4.0, 4.0));
  KnownForms known;
  known.riemann = FourPointExpr{Expr::constant(0.0)};
  known.pw_order = 0;
  known.cpp = true;
  return RegistryEntry{"trivial", std::move(eq), std::move(known)};
}

RegistryEntry make_klein_gordon(double mu) {
  // (1.1) reduced through null coordinates: d2phi/dudv + mu^2 phi = 0.
  WaveEquation eq(parse("0"), parse("0"), parse(format_shortest(mu * mu)),
                  box(-4.0, 4.0));
  KnownForms known;
  known.cpp = false;  // W != 0 with U = V = 0
  std::string name = "klein_gordon_" + format_shortest(mu);
  return RegistryEntry{std::move(name), std::move(eq), std::move(known)};
}

RegistryEntry make_multipole(int l) {
  if (l < 0 || l > 12) throw ValidationError("multipole l out of range [0, 12]");
  if (l == 0) {
    EquationDomain d = box(0.0, 1.0);
    WaveEquation eq(parse("0"), parse("0"), parse("0"), std::move(d));
    KnownForms known;
    known.riemann = FourPointExpr{Expr::constant(0.0)};
    known.pw_order = 0;
    known.cpp = true;
    return RegistryEntry{"multipole_0", std::move(eq), std::move(known)};
  }
  EquationDomain d = box(0.0, 1.0);
  d.singular_lines = {SingularLine{0.0}};  // u = v, where r = v - u vanishes
  const std::string w = std::to_string(l * (l + 1)) + "/(v-u)^2";
  WaveEquation eq(parse("0"), parse("0"), parse(w), std::move(d));
  KnownForms known;
  known.pw_order = l;
  known.cpp = false;
  return RegistryEntry{"multipole_" + std::to_string(l), std::move(eq),
                       std::move(known)};
}

RegistryEntry make_lambda_uv() {
  // lambda = u v: U = dv lambda = u, V = du lambda = v,
  // W = d2 lambda + du lambda dv lambda = 1 + u v.
  WaveEquation eq(parse("u"), parse("v"), parse("1 + u*v"), box(-2.0, 2.0));
  KnownForms known;
  known.riemann =
      FourPointExpr{Expr::variable(Var::u) * Expr::variable(Var::v)};
  known.pw_order = 0;
  known.cpp = true;
  return RegistryEntry{"lambda_uv", std::move(eq), std::move(known)};
}

RegistryEntry make_lambda_sincos() {
  // lambda = sin(u) cos(v).
  WaveEquation eq(parse("-sin(u)*sin(v)"), parse("cos(u)*cos(v)"),
                  parse("-cos(u)*sin(v) - sin(u)*cos(u)*sin(v)*cos(v)"),
                  box(-2.0, 2.0));
  KnownForms known;
  known.riemann =
      FourPointExpr{sin(Expr::variable(Var::u)) * cos(Expr::variable(Var::v))};
  known.pw_order = 0;
  known.cpp = true;
  return RegistryEntry{"lambda_sincos", std::move(eq), std::move(known)};
}

const std::vector<RegistryEntry>& registry() {
  static const std::vector<RegistryEntry> entries = [] {
    std::vector<RegistryEntry> e;
    e.push_back(make_trivial());
    e.push_back(make_klein_gordon(1.0));
    for (int l = 0; l <= 4; ++l) e.push_back(make_multipole(l));
    e.push_back(make_lambda_uv());
    e.push_back(make_lambda_sincos());
    return e;
  }();
  return entries;
}

std::optional<RegistryEntry> find_entry(std::string_view name) {
  for (const RegistryEntry& entry : registry())
    if (entry.name == name) return entry;

  const auto suffix_number = [&](std::string_view prefix) -> std::optional<double> {
    if (name.size() <= prefix.size() || name.substr(0, prefix.size()) != prefix)
      return std::nullopt;
    const std::string_view tail = name.substr(prefix.size());
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(tail.data(), tail.data() + tail.size(), value);
    if (ec != std::errc{} || ptr != tail.data() + tail.size()) return std::nullopt;
    return value;
  };

  if (auto mu = suffix_number("klein_gordon_")) return make_klein_gordon(*mu);
  if (auto l = suffix_number("multipole_")) {
    if (*l >= 0 && *l == std::floor(*l) && *l <= 12)
      return make_multipole(static_cast<int>(*l));
  }
  return std::nullopt;
}

MultipoleDeltaSolution multipole_l1_delta_solution(double u0, double c) {
  if (u0 <= 0.0) throw ValidationError("delta solution requires u0 > 0");
  return MultipoleDeltaSolution{u0, c};
}

double MultipoleDeltaSolution::smooth(double u, double v) const {
  const double theta = u >= u0 ? 1.0 : 0.0;
  return (2.0 / (u0 * u0)) * (u * v / (v - u)) * (theta + c);
}

}  // namespace tailwave
