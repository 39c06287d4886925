#pragma once

#include <string_view>

#include "pncalc/polynomial.hpp"

namespace pncalc {

/// Parses the polynomial grammar
///
///   expr     := sign? term (('+'|'-') term)*
///   term     := factor ('*' factor)*
///   factor   := base ('^' nonneg-int)?
///   base     := rational | identifier | '(' expr ')'
///   rational := int ('/' positive-int)?
///
/// Identifiers must name a variable of `ring`. Whitespace is ignored.
/// Throws ParseError (syntax) or InputError (unknown identifier).
Polynomial parse_polynomial(std::string_view text, const Ring& ring);

}  // namespace pncalc
