#pragma once

#include <cstdint>
#include <vector>

#include "tailwave/expr.hpp"

namespace tailwave::detail {

enum class Kind : std::uint8_t {
  Constant,
  Variable,
  Sum,
  Product,
  Quotient,
  Power,
  Negate,
  Exp,
  LnAbs,
  Sin,
  Cos,
  Integral,
};

struct Node {
  Kind kind;
  double value = 0.0;           // Constant
  Var var = Var::u;             // Variable; integration variable for Integral
  int exponent = 0;             // Power
  double lower = 0.0;           // Integral lower limit
  std::vector<Expr> children;   // ordered
  std::uint64_t tree_size = 1;  // saturating, ignores sharing
};

inline const Node& node_of(const Expr& e) { return *e.node(); }

Expr make_node(Node n);

}  // namespace tailwave::detail
