#pragma once

#include "jastit/ast.hpp"

#include <ostream>
#include <string>

namespace jastit
{

// Canonical concrete syntax with the minimal parentheses needed to re-parse
// to the same tree.
[[nodiscard]] std::string print_formula( const Formula& f );
[[nodiscard]] std::string print_term( const Term& t );

std::ostream& operator<<( std::ostream& os, const Formula& f );
std::ostream& operator<<( std::ostream& os, const Term& t );

} // namespace jastit
