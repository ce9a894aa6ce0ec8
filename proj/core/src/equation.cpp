#include "tailwave/equation.hpp"

#include <cmath>

namespace tailwave {

SampleRegion EquationDomain::sample_region(double shrink) const {
  return SampleRegion{rect.shrunk(shrink), singular_lines, margin};
}

bool EquationDomain::clear_of_lines(const Rect& r) const {
  // Range of u - v over the rectangle.
  const double d_lo = r.u_lo - r.v_hi;
  const double d_hi = r.u_hi - r.v_lo;
  const double pad = margin * std::sqrt(2.0);
  for (const SingularLine& line : singular_lines) {
    if (line.offset >= d_lo - pad && line.offset <= d_hi + pad) return false;
  }
  return true;
}

WaveEquation::WaveEquation(Expr U, Expr V, Expr W, EquationDomain domain)
    : U_(std::move(U)), V_(std::move(V)), W_(std::move(W)), domain_(std::move(domain)) {
  if (domain_.rect.u_span() <= 0.0 || domain_.rect.v_span() <= 0.0)
    throw ValidationError("equation domain must have positive area");
  // Probe evaluability of the coefficients away from singular lines.
  const SampleRegion region = domain_.sample_region();
  const Expr probe = U_ + V_ + W_;
  is_zero(probe + Expr::constant(1.0), region, 8, 0.0);  // throws if all singular
}

namespace {

// Antiderivative along w measured from `lower`: closed form when available,
// quadrature node otherwise.
Expr definite_antiderivative(const Expr& integrand, Var w, double lower) {
  if (auto cf = antiderivative(integrand, w)) {
    return *cf - substitute(*cf, w, lower);
  }
  return integral_from(integrand, w, lower);
}

}  // namespace

FactorTransform factor_transforms(const WaveEquation& eq, EvalPoint base) {
  FactorTransform ft;
  ft.base = base;
  ft.sigma = definite_antiderivative(eq.V(), Var::u, base.u);
  ft.tau = definite_antiderivative(eq.U(), Var::v, base.v);

  // Lambda exists when du U = dv V; then U = dv Lambda and V = du Lambda for
  // the mixed-path construction below (the v-leg of the path pins du lambda
  // to V through the equality of mixed partials).
  bool curl_free = false;
  try {
    curl_free = is_zero(diff(eq.U(), Var::u) - diff(eq.V(), Var::v),
                        eq.domain().sample_region());
  } catch (const AllPointsSingular&) {
    curl_free = false;
  }
  if (curl_free) {
    const Expr v_on_base_line = substitute(eq.V(), Var::v, base.v);
    ft.lambda = definite_antiderivative(v_on_base_line, Var::u, base.u) + ft.tau;
  }
  return ft;
}

FactorTransform factor_transforms(const WaveEquation& eq) {
  return factor_transforms(eq, eq.domain().lower_left());
}

NormalForm normal_form(const WaveEquation& eq, const FactorTransform& ft) {
  NormalForm nf;
  nf.j0 = exp(ft.tau - ft.sigma);
  nf.l0 = exp(ft.sigma - ft.tau);
  nf.j1 = (diff(eq.V(), Var::v) + eq.U() * eq.V() - eq.W()) * nf.j0;
  nf.l_minus1 = (diff(eq.U(), Var::u) + eq.U() * eq.V() - eq.W()) * nf.l0;
  return nf;
}

NormalForm normal_form(const WaveEquation& eq) {
  return normal_form(eq, factor_transforms(eq));
}

CppVerdict classify_cpp(const WaveEquation& eq, int trials, double tol) {
  CppVerdict verdict;
  const SampleRegion region = eq.domain().sample_region();
  try {
    verdict.condition_5_22 =
        is_zero(diff(eq.U(), Var::u) - diff(eq.V(), Var::v), region, trials, tol);
    verdict.condition_5_23 =
        is_zero(diff(eq.U(), Var::u) + eq.U() * eq.V() - eq.W(), region, trials, tol);
  } catch (const AllPointsSingular& e) {
    throw IndeterminateTermination(std::string("cpp classification: ") + e.what());
  }
  verdict.is_cpp = verdict.condition_5_22 && verdict.condition_5_23;
  if (verdict.is_cpp) {
    verdict.lambda = factor_transforms(eq).lambda;
    if (!verdict.lambda)
      throw IndeterminateTermination("cpp conditions hold but lambda construction failed");
  }
  return verdict;
}

bool hp_verdict(const WaveEquation&) { return false; }

}  // namespace tailwave
