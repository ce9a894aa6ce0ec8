#include <cctype>
#include <charconv>
#include <string>
#include <string_view>

#include "tailwave/expr.hpp"

namespace tailwave {

namespace {

// Recursive-descent parser for the coefficient grammar:
//
//   expr   := term  (('+'|'-') term)*
//   term   := unary (('*'|'/') unary)*
//   unary  := '-' unary | power
//   power  := atom ('^' ['-'] integer)?
//   atom   := number | 'u' | 'v' | func '(' expr ')' | '(' expr ')'
//   func   := 'exp' | 'ln' | 'sin' | 'cos' | 'abs'
//
// ln denotes ln|.|; abs(f) is stored as exp(ln|f|), which evaluates to |f|
// and differentiates to sign(f)*f'.
class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expr run() {
    Expr e = parse_sum();
    skip_ws();
    if (pos_ != text_.size()) fail("end of input or an operator");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& expected) const {
    throw SyntaxError(pos_, expected);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  bool accept(char c) {
    if (peek(c)) {
      ++pos_;
      return true;
    }
    return false;
  }

  Expr parse_sum() {
    Expr e = parse_term();
    for (;;) {
      if (accept('+')) {
        e = e + parse_term();
      } else if (accept('-')) {
        e = e - parse_term();
      } else {
        return e;
      }
    }
  }

  Expr parse_term() {
    Expr e = parse_unary();
    for (;;) {
      if (accept('*')) {
        e = e * parse_unary();
      } else if (accept('/')) {
        e = e / parse_unary();
      } else {
        return e;
      }
    }
  }

  Expr parse_unary() {
    if (accept('-')) return -parse_unary();
    return parse_power();
  }

  Expr parse_power() {
    Expr base = parse_atom();
    if (!accept('^')) return base;
    skip_ws();
    bool negative = false;
    if (pos_ < text_.size() && text_[pos_] == '-') {
      negative = true;
      ++pos_;
    }
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    if (pos_ == start) fail("an integer exponent");
    int exponent = 0;
    auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, exponent);
    if (ec != std::errc{}) fail("an integer exponent in range");
    (void)ptr;
    return pow_int(base, negative ? -exponent : exponent);
  }

  Expr parse_atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("a number, variable, function or '('");
    const char c = text_[pos_];

    if (accept('(')) {
      Expr e = parse_sum();
      if (!accept(')')) fail("')'");
      return e;
    }

    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();

    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      const std::string_view name = text_.substr(start, pos_ - start);
      if (name == "u") return Expr::variable(Var::u);
      if (name == "v") return Expr::variable(Var::v);
      if (name == "exp" || name == "ln" || name == "sin" || name == "cos" ||
          name == "abs") {
        if (!accept('(')) fail("'(' after function name");
        Expr arg = parse_sum();
        if (!accept(')')) fail("')'");
        if (name == "exp") return exp(arg);
        if (name == "ln") return ln_abs(arg);
        if (name == "sin") return sin(arg);
        if (name == "cos") return cos(arg);
        return exp(ln_abs(arg));  // abs
      }
      throw UnknownIdentifier(start, std::string(name));
    }

    fail("a number, variable, function or '('");
  }

  Expr parse_number() {
    const std::size_t start = pos_;
    bool saw_digit = false;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
      saw_digit = true;
    }
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      while (pos_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
        saw_digit = true;
      }
    }
    if (!saw_digit) fail("a numeric literal");
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t mark = pos_;
      ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      bool exp_digit = false;
      while (pos_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
        exp_digit = true;
      }
      if (!exp_digit) pos_ = mark;  // 'e' was the start of an identifier, not ours
    }
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
    if (ec != std::errc{} || ptr != text_.data() + pos_) fail("a numeric literal");
    return Expr::constant(value);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse(std::string_view text) { return Parser(text).run(); }

}  // namespace tailwave
