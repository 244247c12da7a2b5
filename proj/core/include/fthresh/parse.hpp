#pragma once

#include <string_view>
#include <vector>

#include "fthresh/polyring.hpp"

namespace fthresh {

/// Parses a polynomial in the variables of `ring`.
///
///   expr := sign? term (('+' | '-') term)*
///   term := coefficient? ('*'? variable ('^' natural)?)*
///
/// Coefficients are decimal integers reduced mod p; whitespace is ignored.
/// Variables are matched longest-first against the ring's names, so "xy"
/// reads as x*y in a ring with variables x, y. Errors carry the byte offset.
Polynomial parse_polynomial(std::string_view text, const RingPtr& ring);

/// Parses "g1; g2; ..." into a generator list (empty entries are rejected).
std::vector<Polynomial> parse_generators(std::string_view text, const RingPtr& ring);

/// Splits "a,b,c" into variable names.
std::vector<std::string> parse_variable_list(std::string_view text);

}  // namespace fthresh
