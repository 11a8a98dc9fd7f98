#pragma once

#include <stdexcept>
#include <string>

#include "colorpoincare/grassmann.hpp"

namespace colorpoincare {

struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, size_t pos)
        : std::runtime_error(msg + " (at offset " + std::to_string(pos) + ")"), position(pos) {}
    size_t position;
};

// Grammar (whitespace-insensitive):
//   expr     := ['-'] term (('+' | '-') term)*
//   term     := factor ('*' factor)*
//   factor   := atom ['^' exponent]
//   atom     := rational | 'q' | 'i' | 'z8' | name '[' uint ']' | '(' expr ')'
//   rational := uint ['/' uint]
// Exponents may be negative for scalar atoms only.  Generator names are the
// eight canonical families th_r, th_g, th_b, thb_r, thb_g, thb_b, eta, etab,
// plus any parameter generators already declared on the algebra.
Multivector parse_expression(GrassmannAlgebra& alg, const std::string& src);

}  // namespace colorpoincare
