#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "jetforge/polynomial.hpp"

namespace jetforge {

inline constexpr int kDefaultMaxDegree = 4;

/// Parses one polynomial over x1..xm.
///
///   expr    := term (('+' | '-') term)*
///   term    := unary ('*' unary)*
///   unary   := ('+' | '-') unary | power
///   power   := primary ('^' integer)?
///   primary := number | 'x' integer | '(' expr ')'
///
/// Numbers are decimal literals with an optional exponent. The Unicode
/// minus sign U+2212 is accepted as '-'. Throws DomainError with the
/// offending column on malformed input.
Polynomial parse_polynomial(std::string_view text, int m);

/// One string per component; rejects results above max_degree.
PolyMap parse_polymap(const std::vector<std::string>& components, int m,
                      int max_degree = kDefaultMaxDegree);

}  // namespace jetforge
