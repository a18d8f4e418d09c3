#pragma once

#include <stdexcept>
#include <string>

#include "cb/expr.hpp"

namespace cb {

struct ParseError : std::runtime_error {
  size_t pos;
  ParseError(size_t p, const std::string& what)
      : std::runtime_error("parse error at position " + std::to_string(p) + ": " + what), pos(p) {}
};

// atoms X<k> P<k> Xt<k> Pt<k> r[l] rb[l] V[l] Vb[l] poly{...}, rational and i coefficients,
// juxtaposition or '*' composes, '+'/'-' add, '^' powers, parentheses group
OpExpr parse_expr(const std::string& text, int rank);

// polynomial in s<k>, b<k>, z<k>, zt<k>, u<k> and i over 2*rank Cartan variables (sigma then b)
MultiPoly parse_poly(const std::string& text, int rank);

}  // namespace cb
