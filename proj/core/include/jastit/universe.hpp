#pragma once

#include "jastit/ast.hpp"

#include <set>
#include <span>

namespace jastit
{

struct Universe
{
    std::set< Formula > formulas;
    std::set< Term > terms;

    friend bool operator==( const Universe&, const Universe& ) = default;
};

/// Subformula and subterm closure of the seeds. Proof terms met inside
/// formulas (t:A, E t, Prove, Proven) enter the term set.
[[nodiscard]] Universe closure_universe( std::span< const Formula > seed_formulas,
                                         std::span< const Term > seed_terms );

void add_subterms( std::set< Term >& into, const Term& t );
void add_subformulas( Universe& into, const Formula& f );

} // namespace jastit
