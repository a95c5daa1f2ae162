#include "jastit/universe.hpp"

namespace jastit
{

void add_subterms( std::set< Term >& into, const Term& t )
{
    if ( !into.insert( t ).second )
        return;
    switch ( t.type() )
    {
    case Term::kind::sum:
    case Term::kind::app:
        add_subterms( into, t.left() );
        add_subterms( into, t.right() );
        break;
    case Term::kind::check:
        add_subterms( into, t.inner() );
        break;
    default:
        break;
    }
}

void add_subformulas( Universe& into, const Formula& f )
{
    if ( !into.formulas.insert( f ).second )
        return;
    using K = Formula::kind;
    switch ( f.type() )
    {
    case K::proves:
    case K::prove:
    case K::proven:
        add_subterms( into.terms, f.term() );
        add_subformulas( into, f.body() );
        break;
    case K::presented:
        add_subterms( into.terms, f.term() );
        break;
    case K::negation:
    case K::stit:
    case K::box:
    case K::diamond:
    case K::know:
        add_subformulas( into, f.body() );
        break;
    case K::conjunction:
    case K::disjunction:
    case K::implication:
        add_subformulas( into, f.left() );
        add_subformulas( into, f.right() );
        break;
    case K::atom:
    case K::falsum:
        break;
    }
}

Universe closure_universe( std::span< const Formula > seed_formulas, std::span< const Term > seed_terms )
{
    Universe u;
    for ( const auto& f : seed_formulas )
        add_subformulas( u, f );
    for ( const auto& t : seed_terms )
        add_subterms( u.terms, t );
    return u;
}

} // namespace jastit
