#include <optional>

#include "expr_node.hpp"
#include "tailwave/expr.hpp"

namespace tailwave {

using detail::Kind;
using detail::Node;

namespace {

const Node& N(const Expr& e) { return *e.node(); }

// Decomposition e = p*w + q with p, q free of w.
struct LinearForm {
  Expr p, q;
};

std::optional<LinearForm> linear_in(const Expr& e, Var w) {
  if (!e.depends_on(w)) return LinearForm{Expr::constant(0.0), e};
  const Node& n = N(e);
  switch (n.kind) {
    case Kind::Variable:
      return LinearForm{Expr::constant(1.0), Expr::constant(0.0)};
    case Kind::Sum: {
      auto a = linear_in(n.children[0], w), b = linear_in(n.children[1], w);
      if (!a || !b) return std::nullopt;
      return LinearForm{a->p + b->p, a->q + b->q};
    }
    case Kind::Negate: {
      auto a = linear_in(n.children[0], w);
      if (!a) return std::nullopt;
      return LinearForm{-a->p, -a->q};
    }
    case Kind::Product: {
      const Expr &a = n.children[0], &b = n.children[1];
      if (!a.depends_on(w)) {
        auto lb = linear_in(b, w);
        if (!lb) return std::nullopt;
        return LinearForm{a * lb->p, a * lb->q};
      }
      if (!b.depends_on(w)) {
        auto la = linear_in(a, w);
        if (!la) return std::nullopt;
        return LinearForm{la->p * b, la->q * b};
      }
      return std::nullopt;
    }
    case Kind::Quotient: {
      if (!n.children[1].depends_on(w)) {
        auto la = linear_in(n.children[0], w);
        if (!la) return std::nullopt;
        return LinearForm{la->p / n.children[1], la->q / n.children[1]};
      }
      return std::nullopt;
    }
    default:
      return std::nullopt;
  }
}

}  // namespace

std::optional<Expr> antiderivative(const Expr& e, Var w) {
  const Expr x = Expr::variable(w);
  if (!e.depends_on(w)) return e * x;

  const Node& n = N(e);
  switch (n.kind) {
    case Kind::Variable:
      return pow_int(x, 2) * 0.5;
    case Kind::Sum: {
      auto a = antiderivative(n.children[0], w), b = antiderivative(n.children[1], w);
      if (!a || !b) return std::nullopt;
      return *a + *b;
    }
    case Kind::Negate: {
      auto a = antiderivative(n.children[0], w);
      if (!a) return std::nullopt;
      return -*a;
    }
    case Kind::Product: {
      const Expr &a = n.children[0], &b = n.children[1];
      if (!a.depends_on(w)) {
        auto fb = antiderivative(b, w);
        if (!fb) return std::nullopt;
        return a * *fb;
      }
      if (!b.depends_on(w)) {
        auto fa = antiderivative(a, w);
        if (!fa) return std::nullopt;
        return *fa * b;
      }
      return std::nullopt;
    }
    case Kind::Quotient: {
      const Expr &num = n.children[0], &den = n.children[1];
      if (!den.depends_on(w)) {
        auto fn = antiderivative(num, w);
        if (!fn) return std::nullopt;
        return *fn / den;
      }
      if (!num.depends_on(w)) {
        // num / (p*w + q)^k
        if (N(den).kind == Kind::Power) {
          auto lf = linear_in(N(den).children[0], w);
          if (!lf || lf->p.is_literal_zero()) return std::nullopt;
          const int k = N(den).exponent;
          const Expr& base = N(den).children[0];
          if (k == 1) return num * ln_abs(base) / lf->p;
          return num * pow_int(base, 1 - k) / (Expr::constant(1 - k) * lf->p);
        }
        auto lf = linear_in(den, w);
        if (!lf || lf->p.is_literal_zero()) return std::nullopt;
        return num * ln_abs(den) / lf->p;
      }
      return std::nullopt;
    }
    case Kind::Power: {
      auto lf = linear_in(n.children[0], w);
      if (!lf || lf->p.is_literal_zero()) return std::nullopt;
      const int k = n.exponent;
      const Expr& base = n.children[0];
      if (k == -1) return ln_abs(base) / lf->p;
      return pow_int(base, k + 1) / (Expr::constant(k + 1) * lf->p);
    }
    case Kind::Exp: {
      auto lf = linear_in(n.children[0], w);
      if (!lf || lf->p.is_literal_zero()) return std::nullopt;
      return e / lf->p;
    }
    case Kind::Sin: {
      auto lf = linear_in(n.children[0], w);
      if (!lf || lf->p.is_literal_zero()) return std::nullopt;
      return -(cos(n.children[0]) / lf->p);
    }
    case Kind::Cos: {
      auto lf = linear_in(n.children[0], w);
      if (!lf || lf->p.is_literal_zero()) return std::nullopt;
      return sin(n.children[0]) / lf->p;
    }
    case Kind::LnAbs: {
      auto lf = linear_in(n.children[0], w);
      if (!lf || lf->p.is_literal_zero()) return std::nullopt;
      const Expr& arg = n.children[0];
      return (arg * ln_abs(arg) - arg) / lf->p;
    }
    default:
      return std::nullopt;
  }
}

}  // namespace tailwave
