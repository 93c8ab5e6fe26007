#pragma once

#include <string>
#include <string_view>

#include "wco/expr.hpp"

namespace wco {

/// Parses the function-expression grammar:
///
///   expr     := term (('+'|'-') term)*
///   term     := factor (('*'|'/') factor)*
///   factor   := '-' factor | atom ('^' exponent)?
///   exponent := signed_number | '(' signed_number ')'
///   atom     := 'z' | number | '(' expr ')' | func '(' args ')'
///
/// Numbers take an optional 'i' suffix for imaginary parts. Named
/// primitives: log, exp, compose(f,g), blaschke(a), dilation(r),
/// monomial(k), lens(s), testfn_f(alpha,w), testfn_g(w), testfn_h(alpha,w).
/// Throws ParseError (with position and expected tokens) or ArityError.
AnalyticFn parse_expr(std::string_view text);

/// Parses a constant such as "0.5", "-0.2i" or "0.3+0.4i".
Complex parse_complex(std::string_view text);

/// Prints a tree in a form parse_expr accepts; constants use 17
/// significant digits so print/parse round trips exactly.
std::string print_expr(const AnalyticFn& f);
std::string print_expr(const NodePtr& node);

}  // namespace wco
