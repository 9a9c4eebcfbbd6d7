#include "reskernel/parser.hpp"

#include <cctype>

namespace resk {
namespace {

constexpr int kMaxExponent = 1 << 20;

class Parser {
 public:
  Parser(const std::string& text, const VarList& vars) : text_(text), vars_(vars) {}

  Polynomial run() {
    Polynomial p = parse_expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return p;
  }

 private:
  const std::string& text_;
  const VarList& vars_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek_is(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  bool accept(char c) {
    if (!peek_is(c)) return false;
    ++pos_;
    return true;
  }

  Polynomial parse_expr() {
    Polynomial acc = parse_term();
    for (;;) {
      if (accept('+'))
        acc = acc + parse_term();
      else if (accept('-'))
        acc = acc - parse_term();
      else
        return acc;
    }
  }

  Polynomial parse_term() {
    Polynomial acc = parse_factor();
    while (accept('*')) acc = acc * parse_factor();
    return acc;
  }

  Polynomial parse_factor() {
    bool negate = false;
    for (;;) {
      if (accept('-'))
        negate = !negate;
      else if (accept('+'))
        ;  // no-op sign
      else
        break;
    }
    Polynomial base = parse_primary();
    if (accept('^')) {
      int k = parse_exponent();
      base = base.pow(k);
    }
    return negate ? -base : base;
  }

  Polynomial parse_primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial inner = parse_expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return parse_rational();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_variable();
    fail(std::string("unexpected character '") + c + "'");
  }

  Int parse_natural() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == start) fail("expected a number");
    return Int(text_.substr(start, pos_ - start));
  }

  int parse_exponent() {
    std::size_t at = pos_;
    Int n = parse_natural();
    if (n > kMaxExponent) throw ParseError("exponent too large", at);
    return static_cast<int>(n);
  }

  Polynomial parse_rational() {
    Int num = parse_natural();
    Int den = 1;
    // A '/' directly after a number is a fraction (no implicit division of
    // expressions); keep it tight so "x/(y)" stays a syntax error.
    if (peek_is('/')) {
      ++pos_;
      std::size_t at = pos_;
      den = parse_natural();
      if (den == 0) throw ParseError("zero denominator", at);
    }
    return Polynomial::constant(vars_, make_rational(num, den));
  }

  Polynomial parse_variable() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    std::string name = text_.substr(start, pos_ - start);
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (vars_[i] == name) return Polynomial::variable(vars_, i);
    throw ParseError("unknown variable '" + name + "'", start);
  }
};

}  // namespace

Polynomial parse_polynomial(const std::string& text, const VarList& vars) {
  return Parser(text, vars).run();
}

}  // namespace resk
