#include "tailwave/expr.hpp"
#include <algorithm>

#include <charconv>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "expr_node.hpp"
#include "tailwave/quadrature.hpp"

namespace tailwave {

using detail::Kind;
using detail::Node;

namespace {

constexpr double kSingularTol = 1e-300;

// Evaluation cost above which eval/diff switch to memoized traversal.
constexpr std::uint64_t kMemoThreshold = 256;

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a + b;
  return s < a ? std::numeric_limits<std::uint64_t>::max() : s;
}

std::shared_ptr<const Node> make(Node&& n) {
  for (const Expr& c : n.children) n.tree_size = sat_add(n.tree_size, c.tree_size());
  return std::make_shared<const Node>(std::move(n));
}

const Node& N(const Expr& e) { return *e.node(); }

bool const_val(const Expr& e, double& out) {
  if (N(e).kind == Kind::Constant) {
    out = N(e).value;
    return true;
  }
  return false;
}

double ipow(double base, int n) {
  if (n == 0) return 1.0;
  bool inv = n < 0;
  unsigned m = inv ? static_cast<unsigned>(-(long long)n) : static_cast<unsigned>(n);
  double r = 1.0, b = base;
  while (m) {
    if (m & 1u) r *= b;
    b *= b;
    m >>= 1u;
  }
  return inv ? 1.0 / r : r;
}

}  // namespace

namespace detail {
Expr make_node(Node n) { return Expr(make(std::move(n))); }
}  // namespace detail

Rect Rect::shrunk(double fraction) const {
  Rect r = *this;
  const double du = u_span() * fraction * 0.5;
  const double dv = v_span() * fraction * 0.5;
  r.u_lo += du;
  r.u_hi -= du;
  r.v_lo += dv;
  r.v_hi -= dv;
  return r;
}

double SingularLine::distance(EvalPoint p) const {
  return std::fabs(p.u - p.v - offset) / std::sqrt(2.0);
}

bool SampleRegion::admits(EvalPoint p) const {
  if (!rect.contains(p)) return false;
  for (const SingularLine& line : avoid)
    if (line.distance(p) < margin) return false;
  return true;
}

Expr::Expr() : node_(make(Node{.kind = Kind::Constant, .value = 0.0})) {}

Expr Expr::constant(double c) { return Expr(make(Node{.kind = Kind::Constant, .value = c})); }

Expr Expr::variable(Var w) { return Expr(make(Node{.kind = Kind::Variable, .var = w})); }

bool Expr::is_constant() const { return node_->kind == Kind::Constant; }

bool Expr::is_constant(double& out) const { return const_val(*this, out); }

bool Expr::is_literal_zero() const {
  return node_->kind == Kind::Constant && node_->value == 0.0;
}

std::uint64_t Expr::tree_size() const { return node_->tree_size; }

bool Expr::depends_on(Var w) const {
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::Constant:
      return false;
    case Kind::Variable:
      return n.var == w;
    case Kind::Integral:
      // Depends on its integration variable through the upper limit, and on
      // the other variable through the integrand.
      if (n.var == w) return true;
      return n.children[0].depends_on(w);
    default:
      for (const Expr& c : n.children)
        if (c.depends_on(w)) return true;
      return false;
  }
}

// ---------------------------------------------------------------------------
// Smart constructors

Expr operator+(const Expr& a, const Expr& b) {
  double ca, cb;
  if (const_val(a, ca) && const_val(b, cb)) return Expr::constant(ca + cb);
  if (a.is_literal_zero()) return b;
  if (b.is_literal_zero()) return a;
  return Expr(make(Node{.kind = Kind::Sum, .children = {a, b}}));
}

Expr operator-(const Expr& a, const Expr& b) { return a + (-b); }

Expr operator*(const Expr& a, const Expr& b) {
  double ca, cb;
  if (const_val(a, ca) && const_val(b, cb)) return Expr::constant(ca * cb);
  if (a.is_literal_zero() || b.is_literal_zero()) return Expr::constant(0.0);
  if (const_val(a, ca) && ca == 1.0) return b;
  if (const_val(b, cb) && cb == 1.0) return a;
  return Expr(make(Node{.kind = Kind::Product, .children = {a, b}}));
}

Expr operator/(const Expr& a, const Expr& b) {
  double cb;
  if (const_val(b, cb)) {
    if (cb == 0.0) throw ValidationError("quotient with literal zero denominator");
    double ca;
    if (const_val(a, ca)) return Expr::constant(ca / cb);
    if (cb == 1.0) return a;
  }
  if (a.is_literal_zero()) return Expr::constant(0.0);
  return Expr(make(Node{.kind = Kind::Quotient, .children = {a, b}}));
}

Expr operator-(const Expr& a) {
  double ca;
  if (const_val(a, ca)) return Expr::constant(-ca);
  if (N(a).kind == Kind::Negate) return N(a).children[0];
  return Expr(make(Node{.kind = Kind::Negate, .children = {a}}));
}

Expr pow_int(const Expr& base, int exponent) {
  if (exponent == 0) return Expr::constant(1.0);
  if (exponent == 1) return base;
  double cb;
  if (const_val(base, cb)) {
    if (cb == 0.0 && exponent < 0)
      throw ValidationError("integer power of literal zero with negative exponent");
    return Expr::constant(ipow(cb, exponent));
  }
  return Expr(make(Node{.kind = Kind::Power, .exponent = exponent, .children = {base}}));
}

Expr exp(const Expr& e) {
  double c;
  if (const_val(e, c)) return Expr::constant(std::exp(c));
  return Expr(make(Node{.kind = Kind::Exp, .children = {e}}));
}

Expr ln_abs(const Expr& e) {
  double c;
  if (const_val(e, c)) {
    if (std::fabs(c) <= kSingularTol)
      throw ValidationError("ln of literal zero");
    return Expr::constant(std::log(std::fabs(c)));
  }
  return Expr(make(Node{.kind = Kind::LnAbs, .children = {e}}));
}

Expr sin(const Expr& e) {
  double c;
  if (const_val(e, c)) return Expr::constant(std::sin(c));
  return Expr(make(Node{.kind = Kind::Sin, .children = {e}}));
}

Expr cos(const Expr& e) {
  double c;
  if (const_val(e, c)) return Expr::constant(std::cos(c));
  return Expr(make(Node{.kind = Kind::Cos, .children = {e}}));
}

Expr integral_from(const Expr& integrand, Var w, double lower) {
  if (integrand.is_literal_zero()) return Expr::constant(0.0);
  return Expr(make(
      Node{.kind = Kind::Integral, .var = w, .lower = lower, .children = {integrand}}));
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

template <typename T>
T eval_node(const Node& n, EvalPoint p, std::unordered_map<const Node*, T>* memo);

template <typename T>
T eval_dispatch(const Expr& e, EvalPoint p, std::unordered_map<const Node*, T>* memo) {
  const Node* n = e.node().get();
  if (memo) {
    auto it = memo->find(n);
    if (it != memo->end()) return it->second;
    T v = eval_node<T>(*n, p, memo);
    memo->emplace(n, v);
    return v;
  }
  return eval_node<T>(*n, p, nullptr);
}

template <typename T>
T eval_node(const Node& n, EvalPoint p, std::unordered_map<const Node*, T>* memo) {
  switch (n.kind) {
    case Kind::Constant:
      return static_cast<T>(n.value);
    case Kind::Variable:
      return static_cast<T>(p.get(n.var));
    case Kind::Sum:
      return eval_dispatch<T>(n.children[0], p, memo) +
             eval_dispatch<T>(n.children[1], p, memo);
    case Kind::Product:
      return eval_dispatch<T>(n.children[0], p, memo) *
             eval_dispatch<T>(n.children[1], p, memo);
    case Kind::Quotient: {
      const T den = eval_dispatch<T>(n.children[1], p, memo);
      if (std::fabs(den) <= kSingularTol)
        throw SingularPoint("denominator vanishes at (" + std::to_string(p.u) + ", " +
                            std::to_string(p.v) + ")");
      return eval_dispatch<T>(n.children[0], p, memo) / den;
    }
    case Kind::Power: {
      const T b = eval_dispatch<T>(n.children[0], p, memo);
      if (n.exponent < 0 && std::fabs(b) <= kSingularTol)
        throw SingularPoint("negative power of vanishing base at (" +
                            std::to_string(p.u) + ", " + std::to_string(p.v) + ")");
      T r = 1.0;
      bool inv = n.exponent < 0;
      unsigned m = inv ? static_cast<unsigned>(-(long long)n.exponent)
                       : static_cast<unsigned>(n.exponent);
      T base = b;
      while (m) {
        if (m & 1u) r *= base;
        base *= base;
        m >>= 1u;
      }
      return inv ? T(1) / r : r;
    }
    case Kind::Negate:
      return -eval_dispatch<T>(n.children[0], p, memo);
    case Kind::Exp:
      return std::exp(eval_dispatch<T>(n.children[0], p, memo));
    case Kind::LnAbs: {
      const T a = eval_dispatch<T>(n.children[0], p, memo);
      if (std::fabs(a) <= kSingularTol)
        throw SingularPoint("ln argument vanishes at (" + std::to_string(p.u) + ", " +
                            std::to_string(p.v) + ")");
      return std::log(std::fabs(a));
    }
    case Kind::Sin:
      return std::sin(eval_dispatch<T>(n.children[0], p, memo));
    case Kind::Cos:
      return std::cos(eval_dispatch<T>(n.children[0], p, memo));
    case Kind::Integral: {
      const Expr& f = n.children[0];
      const double upper = p.get(n.var);
      auto integrand = [&](double s) {
        EvalPoint q = p;
        (n.var == Var::u ? q.u : q.v) = s;
        return f.eval(q);
      };
      return static_cast<T>(adaptive_simpson(integrand, n.lower, upper, 1e-10));
    }
  }
  throw Error("unreachable expression kind");
}

template <typename T>
T eval_as(const Expr& e, EvalPoint p) {
  if (e.tree_size() <= kMemoThreshold) return eval_dispatch<T>(e, p, nullptr);
  std::unordered_map<const Node*, T> memo;
  memo.reserve(1024);
  return eval_dispatch<T>(e, p, &memo);
}

}  // namespace

double Expr::eval(EvalPoint p) const { return eval_as<double>(*this, p); }

// ---------------------------------------------------------------------------
// Differentiation

namespace {

Expr diff_dispatch(const Expr& e, Var w,
                   std::unordered_map<const Node*, Expr>& memo) {
  const Node* n = e.node().get();
  auto it = memo.find(n);
  if (it != memo.end()) return it->second;

  Expr d;
  switch (n->kind) {
    case Kind::Constant:
      d = Expr::constant(0.0);
      break;
    case Kind::Variable:
      d = Expr::constant(n->var == w ? 1.0 : 0.0);
      break;
    case Kind::Sum:
      d = diff_dispatch(n->children[0], w, memo) + diff_dispatch(n->children[1], w, memo);
      break;
    case Kind::Product: {
      const Expr &a = n->children[0], &b = n->children[1];
      d = diff_dispatch(a, w, memo) * b + a * diff_dispatch(b, w, memo);
      break;
    }
    case Kind::Quotient: {
      const Expr &a = n->children[0], &b = n->children[1];
      const Expr da = diff_dispatch(a, w, memo), db = diff_dispatch(b, w, memo);
      if (db.is_literal_zero()) {
        d = da / b;
      } else {
        d = (da * b - a * db) / pow_int(b, 2);
      }
      break;
    }
    case Kind::Power: {
      const Expr& base = n->children[0];
      d = Expr::constant(n->exponent) * pow_int(base, n->exponent - 1) *
          diff_dispatch(base, w, memo);
      break;
    }
    case Kind::Negate:
      d = -diff_dispatch(n->children[0], w, memo);
      break;
    case Kind::Exp:
      d = e * diff_dispatch(n->children[0], w, memo);
      break;
    case Kind::LnAbs:
      // d/dx ln|f| = f'/f, valid on either sign branch.
      d = diff_dispatch(n->children[0], w, memo) / n->children[0];
      break;
    case Kind::Sin:
      d = cos(n->children[0]) * diff_dispatch(n->children[0], w, memo);
      break;
    case Kind::Cos:
      d = -(sin(n->children[0]) * diff_dispatch(n->children[0], w, memo));
      break;
    case Kind::Integral:
      if (n->var == w) {
        d = n->children[0];
      } else {
        d = integral_from(diff_dispatch(n->children[0], w, memo), n->var, n->lower);
      }
      break;
  }
  memo.emplace(n, d);
  return d;
}

}  // namespace

Expr diff(const Expr& e, Var w) {
  std::unordered_map<const Node*, Expr> memo;
  return diff_dispatch(e, w, memo);
}

Expr Expr::diff(Var w) const { return tailwave::diff(*this, w); }

// ---------------------------------------------------------------------------
// Substitution

namespace {

Expr substitute_impl(const Expr& e, Var w, double value,
                     std::unordered_map<const Node*, Expr>& memo) {
  const Node* n = e.node().get();
  if (!e.depends_on(w)) return e;
  auto it = memo.find(n);
  if (it != memo.end()) return it->second;

  Expr r;
  switch (n->kind) {
    case Kind::Constant:
      r = e;
      break;
    case Kind::Variable:
      r = n->var == w ? Expr::constant(value) : e;
      break;
    case Kind::Sum:
      r = substitute_impl(n->children[0], w, value, memo) +
          substitute_impl(n->children[1], w, value, memo);
      break;
    case Kind::Product:
      r = substitute_impl(n->children[0], w, value, memo) *
          substitute_impl(n->children[1], w, value, memo);
      break;
    case Kind::Quotient:
      r = substitute_impl(n->children[0], w, value, memo) /
          substitute_impl(n->children[1], w, value, memo);
      break;
    case Kind::Power:
      r = pow_int(substitute_impl(n->children[0], w, value, memo), n->exponent);
      break;
    case Kind::Negate:
      r = -substitute_impl(n->children[0], w, value, memo);
      break;
    case Kind::Exp:
      r = exp(substitute_impl(n->children[0], w, value, memo));
      break;
    case Kind::LnAbs:
      r = ln_abs(substitute_impl(n->children[0], w, value, memo));
      break;
    case Kind::Sin:
      r = sin(substitute_impl(n->children[0], w, value, memo));
      break;
    case Kind::Cos:
      r = cos(substitute_impl(n->children[0], w, value, memo));
      break;
    case Kind::Integral:
      if (n->var == w)
        throw ValidationError(
            "cannot substitute the integration variable of a quadrature node");
      r = integral_from(substitute_impl(n->children[0], w, value, memo), n->var,
                        n->lower);
      break;
  }
  memo.emplace(n, r);
  return r;
}

}  // namespace

Expr substitute(const Expr& e, Var w, double value) {
  std::unordered_map<const Node*, Expr> memo;
  return substitute_impl(e, w, value, memo);
}

// ---------------------------------------------------------------------------
// Printing (same grammar as the parser; quadrature nodes are diagnostic-only)

namespace {

std::string fmt_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  (void)ec;
  return std::string(buf, ptr);
}

// Precedence: sums 1, products/quotients 2, unary minus 3, powers 4, atoms 5.
void print_node(const Expr& e, int parent_level, std::string& out);

void print_child(const Expr& e, int level, int parent_level, std::string& out) {
  const bool parens = level < parent_level;
  if (parens) out += '(';
  print_node(e, 0, out);
  if (parens) out += ')';
}

int level_of(const Node& n) {
  switch (n.kind) {
    case Kind::Sum:
      return 1;
    case Kind::Product:
    case Kind::Quotient:
      return 2;
    case Kind::Negate:
      return 3;
    case Kind::Power:
      return 4;
    case Kind::Constant:
      return n.value < 0.0 ? 3 : 5;  // negative literals bind like unary minus
    default:
      return 5;
  }
}

void print_node(const Expr& e, int, std::string& out) {
  const Node& n = N(e);
  switch (n.kind) {
    case Kind::Constant:
      out += fmt_double(n.value);
      return;
    case Kind::Variable:
      out += var_name(n.var);
      return;
    case Kind::Sum: {
      print_child(n.children[0], level_of(N(n.children[0])), 1, out);
      const Node& rhs = N(n.children[1]);
      if (rhs.kind == Kind::Negate) {
        out += " - ";
        print_child(rhs.children[0], level_of(N(rhs.children[0])), 2, out);
      } else if (rhs.kind == Kind::Constant && rhs.value < 0.0) {
        out += " - ";
        out += fmt_double(-rhs.value);
      } else {
        out += " + ";
        print_child(n.children[1], level_of(rhs), 2, out);
      }
      return;
    }
    case Kind::Product:
      print_child(n.children[0], level_of(N(n.children[0])), 2, out);
      out += "*";
      print_child(n.children[1], level_of(N(n.children[1])), 3, out);
      return;
    case Kind::Quotient:
      print_child(n.children[0], level_of(N(n.children[0])), 2, out);
      out += "/";
      print_child(n.children[1], level_of(N(n.children[1])), 3, out);
      return;
    case Kind::Power: {
      print_child(n.children[0], level_of(N(n.children[0])), 5, out);
      out += "^";
      out += std::to_string(n.exponent);
      return;
    }
    case Kind::Negate:
      out += "-";
      print_child(n.children[0], level_of(N(n.children[0])), 3, out);
      return;
    case Kind::Exp:
      out += "exp(";
      print_node(n.children[0], 0, out);
      out += ')';
      return;
    case Kind::LnAbs:
      out += "ln(";
      print_node(n.children[0], 0, out);
      out += ')';
      return;
    case Kind::Sin:
      out += "sin(";
      print_node(n.children[0], 0, out);
      out += ')';
      return;
    case Kind::Cos:
      out += "cos(";
      print_node(n.children[0], 0, out);
      out += ')';
      return;
    case Kind::Integral:
      out += n.var == Var::u ? "quad_u[" : "quad_v[";
      out += fmt_double(n.lower);
      out += "](";
      print_node(n.children[0], 0, out);
      out += ')';
      return;
  }
}

}  // namespace

std::string Expr::str() const {
  std::string out;
  print_node(*this, 0, out);
  return out;
}

// ---------------------------------------------------------------------------
// Quasi-random zero testing

namespace {

double halton(std::uint64_t index, unsigned base) {
  double f = 1.0, r = 0.0;
  while (index > 0) {
    f /= base;
    r += f * static_cast<double>(index % base);
    index /= base;
  }
  return r;
}

// Halton points with a Cranley-Patterson rotation. The irrational shift
// keeps the deterministic sequence off exact dyadic/triadic rationals, which
// otherwise align with removable-singularity curves of deep derivative
// trees.
EvalPoint quasi_point(const Rect& rect, std::uint64_t k) {
  const double su = halton(k, 2) + 0.41421356237309515;  // frac(sqrt(2))
  const double sv = halton(k, 3) + 0.73205080756887719;  // frac(sqrt(3))
  return EvalPoint{rect.u_lo + rect.u_span() * (su - std::floor(su)),
                   rect.v_lo + rect.v_span() * (sv - std::floor(sv))};
}

template <typename Pred>
bool sample_region(const SampleRegion& region, int trials, Pred&& ok) {
  if (trials < 8) throw ValidationError("zero test requires trials >= 8");
  if (region.rect.u_span() <= 0.0 || region.rect.v_span() <= 0.0)
    throw ValidationError("zero test rectangle must have positive area");

  const std::uint64_t cap = static_cast<std::uint64_t>(trials) * 64u;
  int regular = 0;
  for (std::uint64_t k = 1; k <= cap && regular < trials; ++k) {
    const EvalPoint p = quasi_point(region.rect, k);
    if (!region.admits(p)) continue;
    try {
      if (!ok(p)) return false;
      ++regular;
    } catch (const SingularPoint&) {
      continue;
    }
  }
  if (regular == 0)
    throw AllPointsSingular("every sampled point of the zero test was singular");
  return true;
}

}  // namespace

bool is_zero(const Expr& e, const SampleRegion& region, int trials, double tol) {
  double c;
  if (e.is_constant(c)) return std::fabs(c) <= tol;
  return sample_region(region, trials,
                       [&](EvalPoint p) { return std::fabs(e.eval(p)) <= tol; });
}

bool is_zero_scaled(const Expr& value, const Expr& scale, const SampleRegion& region,
                    int trials, double rel_tol, double abs_tol) {
  double c;
  if (value.is_constant(c) && c == 0.0) return true;
  return sample_region(region, trials, [&](EvalPoint p) {
    const double s = std::fabs(scale.eval(p));
    return std::fabs(value.eval(p)) <= abs_tol + rel_tol * s;
  });
}

bool is_zero_difference(const Expr& a, const Expr& b, const SampleRegion& region,
                        int trials, double rel_tol, double abs_tol) {
  double ca, cb;
  if (a.is_constant(ca) && b.is_constant(cb))
    return std::fabs(ca - cb) <= abs_tol + rel_tol * (std::fabs(ca) + std::fabs(cb));

  // Deep derivative towers evaluate with point-dependent noise, so the
  // decision is by consensus: extended precision per point, then the median
  // relative mismatch over the sample. A genuinely nonvanishing difference
  // sits at O(1) relative size; a cancelling one sits at rounding level.
  std::vector<double> mismatches;
  mismatches.reserve(static_cast<std::size_t>(trials));
  sample_region(region, trials, [&](EvalPoint p) {
    const long double va = eval_as<long double>(a, p);
    const long double vb = eval_as<long double>(b, p);
    const long double scale = std::fabs(va) + std::fabs(vb);
    const long double diff = std::fabs(va - vb);
    mismatches.push_back(
        static_cast<double>(diff / std::max<long double>(scale, abs_tol)));
    return true;
  });
  std::nth_element(mismatches.begin(), mismatches.begin() + mismatches.size() / 2,
                   mismatches.end());
  return mismatches[mismatches.size() / 2] <= rel_tol;
}

double max_abs_sampled(const Expr& e, const SampleRegion& region, int trials) {
  double m = 0.0;
  sample_region(region, trials, [&](EvalPoint p) {
    m = std::max(m, std::fabs(e.eval(p)));
    return true;
  });
  return m;
}

}  // namespace tailwave
