#pragma once

#include <stdexcept>
#include <string>

#include "reskernel/polynomial.hpp"

namespace resk {

// Byte offset of the offending token is carried for CLI error reports.
struct ParseError : std::runtime_error {
  std::size_t position;
  ParseError(const std::string& what, std::size_t pos)
      : std::runtime_error(what + " (at offset " + std::to_string(pos) + ")"), position(pos) {}
};

// Grammar (whitespace allowed between tokens):
//   expr    := term (('+'|'-') term)*
//   term    := factor ('*' factor)*
//   factor  := ('+'|'-')* primary ('^' natural)?
//   primary := rational | variable | '(' expr ')'
//   rational:= natural ('/' natural)?
//   variable:= [A-Za-z_][A-Za-z0-9_]*
// No implicit multiplication. Variables must come from `vars`.
Polynomial parse_polynomial(const std::string& text, const VarList& vars);

}  // namespace resk
