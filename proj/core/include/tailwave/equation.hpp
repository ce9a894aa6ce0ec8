#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tailwave/expr.hpp"

namespace tailwave {

struct EquationDomain {
  Rect rect{0.0, 1.0, 0.0, 1.0};
  std::vector<SingularLine> singular_lines;
  double margin = 0.05;  // clearance kept around singular lines

  // Rectangle shrunk by `shrink` (default 5%) minus margin bands, used for
  // coefficient zero tests.
  SampleRegion sample_region(double shrink = 0.05) const;

  // True when `r` keeps at least the margin from every singular line.
  bool clear_of_lines(const Rect& r) const;

  EvalPoint lower_left() const { return EvalPoint{rect.u_lo, rect.v_lo}; }
};

// The 2D wave equation in null coordinates:
//   d2phi/dudv + U du phi + V dv phi + W phi = 0.
class WaveEquation {
 public:
  WaveEquation(Expr U, Expr V, Expr W, EquationDomain domain);

  const Expr& U() const { return U_; }
  const Expr& V() const { return V_; }
  const Expr& W() const { return W_; }
  const EquationDomain& domain() const { return domain_; }

  // JSON schema:
  //   {"U": "...", "V": "...", "W": "...",
  //    "domain": {"u": [lo, hi], "v": [lo, hi]},
  //    "singular_lines": [{"offset": c}]}
  // with coefficient strings in the expression grammar.
  static WaveEquation from_json_text(std::string_view text);
  static WaveEquation load(const std::string& path);
  std::string to_json_text() const;

 private:
  Expr U_, V_, W_;
  EquationDomain domain_;
};

// sigma(u,v) = int_{base.u}^{u} V(s,v) ds and tau(u,v) = int_{base.v}^{v}
// U(u,s) ds, as expressions (closed form when the integrand is in the
// antiderivative table, quadrature-backed otherwise). lambda is present when
// du U = dv V holds on the sample region; it is built along the mixed path
//   lambda(u,v) = int_{base.u}^{u} V(s, base.v) ds + tau(u,v)
// so that both dv lambda = U and du lambda = V hold.
struct FactorTransform {
  Expr sigma, tau;
  std::optional<Expr> lambda;
  EvalPoint base;
};

FactorTransform factor_transforms(const WaveEquation& eq, EvalPoint base);
// Base point fixed at the domain lower-left corner.
FactorTransform factor_transforms(const WaveEquation& eq);

// Coefficients of the two normal forms:
//   dv(j0 du phi0) - j1 phi0 = 0,   du(l0 dv psi0) - l_{-1} psi0 = 0,
// with j0 = exp(tau - sigma), j1 = (dv V + U V - W) j0, l0 = 1/j0,
// l_{-1} = (du U + U V - W) l0.
struct NormalForm {
  Expr j0, j1, l0, l_minus1;
};

NormalForm normal_form(const WaveEquation& eq);
NormalForm normal_form(const WaveEquation& eq, const FactorTransform& ft);

// Characteristic propagation property test in coordinate form:
// condition A: du U = dv V; condition B: du U + U V - W = 0.
struct CppVerdict {
  bool condition_5_22 = false;
  bool condition_5_23 = false;
  bool is_cpp = false;
  std::optional<Expr> lambda;
};

CppVerdict classify_cpp(const WaveEquation& eq, int trials = 64, double tol = 1e-9);

// Huygens' principle never holds for the 2D equation (the Green function has
// full interior support); reported explicitly so classification output is
// complete.
bool hp_verdict(const WaveEquation& eq);

}  // namespace tailwave
