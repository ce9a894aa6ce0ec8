#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tailwave/errors.hpp"

namespace tailwave {

enum class Var : int { u = 0, v = 1 };

inline const char* var_name(Var w) { return w == Var::u ? "u" : "v"; }
inline Var other_var(Var w) { return w == Var::u ? Var::v : Var::u; }

struct EvalPoint {
  double u = 0.0;
  double v = 0.0;
  double get(Var w) const { return w == Var::u ? u : v; }
};

// Axis-aligned rectangle in the (u,v) plane.
struct Rect {
  double u_lo = 0.0, u_hi = 1.0;
  double v_lo = 0.0, v_hi = 1.0;
  double u_span() const { return u_hi - u_lo; }
  double v_span() const { return v_hi - v_lo; }
  bool contains(EvalPoint p) const {
    return p.u >= u_lo && p.u <= u_hi && p.v >= v_lo && p.v <= v_hi;
  }
  Rect shrunk(double fraction) const;
};

// The line u = v + offset, excluded from sampling and grids.
struct SingularLine {
  double offset = 0.0;
  double distance(EvalPoint p) const;  // |u - v - offset| / sqrt(2)
};

// Where quasi-random zero tests may sample: a rectangle minus margin bands
// around singular lines.
struct SampleRegion {
  Rect rect;
  std::vector<SingularLine> avoid;
  double margin = 0.05;
  bool admits(EvalPoint p) const;
};

namespace detail {
struct Node;
}

// Immutable symbolic expression in the null coordinates u, v.
//
// Node kinds: constant, variable, sum, product, quotient, integer power,
// exp, ln|.|, sin, cos, negation, and an integral node backing factor
// transforms whose integrand has no closed-form antiderivative. Trees share
// subexpressions (values are cheap to copy); all operations are pure, so
// Expr values can be used freely across threads.
//
// Construction folds constants and the 0/1 identities but performs no other
// simplification; equality questions go through evaluation (see is_zero).
class Expr {
 public:
  Expr();  // the constant 0

  static Expr constant(double c);
  static Expr variable(Var w);

  // IEEE double evaluation. Throws SingularPoint when a denominator or a
  // log argument vanishes (within 1e-300 of zero) along the way.
  double eval(EvalPoint p) const;
  double eval(double u, double v) const { return eval(EvalPoint{u, v}); }

  // Exact symbolic partial derivative; total on Expr.
  Expr diff(Var w) const;

  // Printed form re-parses to an expression with identical evaluations.
  std::string str() const;

  // True when the node is a folded constant (optionally reporting it).
  bool is_constant() const;
  bool is_constant(double& out) const;
  bool is_literal_zero() const;

  // Recursion cost proxy: node count ignoring sharing (saturating).
  std::uint64_t tree_size() const;

  bool depends_on(Var w) const;

  const std::shared_ptr<const detail::Node>& node() const { return node_; }
  explicit Expr(std::shared_ptr<const detail::Node> n) : node_(std::move(n)) {}

 private:
  std::shared_ptr<const detail::Node> node_;
};

// Smart constructors (these fold constants and 0/1 identities).
Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr pow_int(const Expr& base, int exponent);
Expr exp(const Expr& e);
Expr ln_abs(const Expr& e);
Expr sin(const Expr& e);
Expr cos(const Expr& e);

inline Expr operator+(const Expr& a, double b) { return a + Expr::constant(b); }
inline Expr operator+(double a, const Expr& b) { return Expr::constant(a) + b; }
inline Expr operator-(const Expr& a, double b) { return a - Expr::constant(b); }
inline Expr operator-(double a, const Expr& b) { return Expr::constant(a) - b; }
inline Expr operator*(const Expr& a, double b) { return a * Expr::constant(b); }
inline Expr operator*(double a, const Expr& b) { return Expr::constant(a) * b; }
inline Expr operator/(const Expr& a, double b) { return a / Expr::constant(b); }
inline Expr operator/(double a, const Expr& b) { return Expr::constant(a) / b; }

// Quadrature-backed antiderivative of `integrand` along `w` from `lower`,
// evaluated by adaptive Simpson (abs tol 1e-10). Differentiation along w
// returns the integrand; along the other variable it differentiates under
// the integral sign.
Expr integral_from(const Expr& integrand, Var w, double lower);

// Parse the coefficient grammar (see docs/grammar.ebnf). Precedence
// ^ > unary - > * / > + - with left associativity for the binary operators;
// functions exp, ln (meaning ln|.|), sin, cos, abs; variables u, v.
Expr parse(std::string_view text);

Expr diff(const Expr& e, Var w);

// Replace a variable with a constant. Refuses to substitute the integration
// variable of a quadrature-backed node.
Expr substitute(const Expr& e, Var w, double value);

// Closed-form antiderivative along w for the supported table: sums/products
// with single-variable dependence, powers of expressions linear in w (which
// covers (v-u)^n), and exp/sin/cos/ln of linear arguments. nullopt when the
// integrand is outside the table.
std::optional<Expr> antiderivative(const Expr& e, Var w);

// Probabilistic zero test: true iff |e| <= tol at `trials` quasi-random
// points of the region (after constant folding). This is a sampling test,
// not a decision procedure. Throws AllPointsSingular if no regular points
// can be found.
bool is_zero(const Expr& e, const SampleRegion& region, int trials = 64,
             double tol = 1e-9);

// Cancellation-aware variant used for substitution-chain termination:
// |value| <= abs_tol + rel_tol * |scale| at every sampled point.
bool is_zero_scaled(const Expr& value, const Expr& scale,
                    const SampleRegion& region, int trials = 64,
                    double rel_tol = 1e-9, double abs_tol = 1e-12);

// Whether a - b vanishes relative to the magnitudes of its two terms:
// |a - b| <= abs_tol + rel_tol * (|a| + |b|) at every sampled point.
bool is_zero_difference(const Expr& a, const Expr& b, const SampleRegion& region,
                        int trials = 64, double rel_tol = 1e-9,
                        double abs_tol = 1e-12);

// Max |e| over the sampled points of the region (singular points skipped).
double max_abs_sampled(const Expr& e, const SampleRegion& region, int trials = 100);

}  // namespace tailwave
