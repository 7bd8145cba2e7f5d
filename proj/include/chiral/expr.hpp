#pragma once

// Parser and printer for lattice expressions:
//   expr := term ('+' term)*
//   term := [int '*'] atom          (juxtaposed multipliers like "3A1" also ok)
//   atom := ['-'] name ['(' int ')'] | '<' int '>'
// Names: U, A<n>, D<n>, E<n>. Unicode angle brackets are accepted.

#include "chiral/lattice.hpp"

namespace chiral {

Lattice parse_lattice(const std::string& expr);

// Canonical form of an expression (parse + print round-trip).
std::string canonical_expr(const std::string& expr);
std::string print_expr(const Lattice& L);

}  // namespace chiral
