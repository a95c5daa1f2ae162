#include "jastit/axioms.hpp"

#include "jastit/printer.hpp"

#include <map>
#include <set>

namespace jastit
{

using K = Formula::kind;

std::string to_string( AxiomGroup g ) { return "A" + std::to_string( static_cast< int >( g ) ); }

std::optional< AxiomGroup > axiom_group_from_string( std::string_view s )
{
    if ( s.size() == 2 && s[ 0 ] == 'A' && s[ 1 ] >= '0' && s[ 1 ] <= '9' )
        return static_cast< AxiomGroup >( s[ 1 ] - '0' );
    return std::nullopt;
}

std::string to_string( AxiomRange r ) { return r == AxiomRange::a0_a9 ? "A0-A9" : "A1-A9"; }

std::optional< AxiomRange > axiom_range_from_string( std::string_view s )
{
    if ( s == "A0-A9" )
        return AxiomRange::a0_a9;
    if ( s == "A1-A9" )
        return AxiomRange::a1_a9;
    return std::nullopt;
}

Formula normalize_diamonds( const Formula& f )
{
    switch ( f.type() )
    {
    case K::atom:
    case K::falsum:
    case K::presented:
        return f;
    case K::diamond:
        return Formula::negation( Formula::box( Formula::negation( normalize_diamonds( f.body() ) ) ) );
    case K::negation:
        return Formula::negation( normalize_diamonds( f.body() ) );
    case K::box:
        return Formula::box( normalize_diamonds( f.body() ) );
    case K::know:
        return Formula::know( normalize_diamonds( f.body() ) );
    case K::stit:
        return Formula::stit( f.agent(), normalize_diamonds( f.body() ) );
    case K::proves:
        return Formula::proves( f.term(), normalize_diamonds( f.body() ) );
    case K::prove:
        return Formula::prove( f.agent(), f.term(), normalize_diamonds( f.body() ) );
    case K::proven:
        return Formula::proven( f.term(), normalize_diamonds( f.body() ) );
    case K::conjunction:
        return Formula::conjunction( normalize_diamonds( f.left() ), normalize_diamonds( f.right() ) );
    case K::disjunction:
        return Formula::disjunction( normalize_diamonds( f.left() ), normalize_diamonds( f.right() ) );
    case K::implication:
        return Formula::implication( normalize_diamonds( f.left() ), normalize_diamonds( f.right() ) );
    }
    return f;
}

// --- A0 -----------------------------------------------------------------------

namespace
{

struct skeleton
{
    // Post-order program: letter index, or an operator over earlier slots.
    struct op
    {
        K type;
        int letter = -1;
        int a = -1;
        int b = -1;
    };
    std::vector< op > code;
    std::map< Formula, int > letters;

    int build( const Formula& f )
    {
        switch ( f.type() )
        {
        case K::falsum:
            code.push_back( { K::falsum } );
            break;
        case K::negation:
        {
            int a = build( f.body() );
            code.push_back( { K::negation, -1, a } );
            break;
        }
        case K::conjunction:
        case K::disjunction:
        case K::implication:
        {
            int a = build( f.left() );
            int b = build( f.right() );
            code.push_back( { f.type(), -1, a, b } );
            break;
        }
        default:
        {
            auto [ it, fresh ] = letters.emplace( f, static_cast< int >( letters.size() ) );
            if ( fresh && letters.size() > max_skeleton_letters )
                throw skeleton_too_large( "boolean skeleton has more than " + std::to_string( max_skeleton_letters ) +
                                          " letters" );
            code.push_back( { K::atom, it->second } );
            break;
        }
        }
        return static_cast< int >( code.size() ) - 1;
    }

    bool eval( std::uint32_t assignment, std::vector< char >& slots ) const
    {
        for ( std::size_t i = 0; i < code.size(); ++i )
        {
            const op& o = code[ i ];
            char v = 0;
            switch ( o.type )
            {
            case K::atom: v = ( ( assignment >> o.letter ) & 1U ) != 0 ? 1 : 0; break;
            case K::falsum: v = 0; break;
            case K::negation: v = slots[ o.a ] == 0 ? 1 : 0; break;
            case K::conjunction: v = ( slots[ o.a ] != 0 && slots[ o.b ] != 0 ) ? 1 : 0; break;
            case K::disjunction: v = ( slots[ o.a ] != 0 || slots[ o.b ] != 0 ) ? 1 : 0; break;
            case K::implication: v = ( slots[ o.a ] == 0 || slots[ o.b ] != 0 ) ? 1 : 0; break;
            default: break;
            }
            slots[ i ] = v;
        }
        return slots.back() != 0;
    }
};

} // namespace

bool is_tautology_instance( const Formula& f )
{
    skeleton s;
    s.build( normalize_diamonds( f ) );
    std::vector< char > slots( s.code.size() );
    const std::uint32_t rows = 1U << s.letters.size();
    for ( std::uint32_t a = 0; a < rows; ++a )
        if ( !s.eval( a, slots ) )
            return false;
    return true;
}

// --- A1 .. A9 -------------------------------------------------------------

namespace
{

// Modal operator of a box / stit node.
struct modality
{
    K type;
    std::string agent;

    friend bool operator==( const modality&, const modality& ) = default;
};

std::optional< modality > modal_of( const Formula& f )
{
    if ( f.is( K::box ) )
        return modality{ K::box, {} };
    if ( f.is( K::stit ) )
        return modality{ K::stit, f.agent() };
    return std::nullopt;
}

std::string suffix( const modality& m ) { return m.type == K::box ? "box" : "stit"; }

using bindings = std::vector< std::pair< std::string, std::string > >;

AxiomMatch matched( AxiomGroup g, std::string pattern, bindings b )
{
    return AxiomMatch{ g, std::move( pattern ), std::move( b ) };
}

std::string str( const Formula& f ) { return print_formula( f ); }
std::string str( const Term& t ) { return print_term( t ); }

// S5 (or S4 when `with_five` is false) schemes for one modality family.
std::optional< AxiomMatch > match_normal_modal( const Formula& f, AxiomGroup g, bool is_know, bool with_five )
{
    if ( !f.is( K::implication ) )
        return std::nullopt;
    const Formula& lhs = f.left();
    const Formula& rhs = f.right();

    auto op_of = [ & ]( const Formula& x ) -> std::optional< modality > {
        if ( is_know )
            return x.is( K::know ) ? std::optional< modality >( modality{ K::know, {} } ) : std::nullopt;
        return modal_of( x );
    };
    auto name = [ & ]( const char* scheme, const modality& m ) {
        return to_string( g ) + "/" + scheme + "-" + ( is_know ? std::string( "K" ) : suffix( m ) );
    };
    auto agent_binding = [ & ]( bindings b, const modality& m ) {
        if ( m.type == K::stit )
            b.emplace_back( "j", m.agent );
        return b;
    };

    if ( auto m = op_of( lhs ) )
    {
        // K: M(A -> B) -> (MA -> MB)
        if ( lhs.body().is( K::implication ) && rhs.is( K::implication ) && op_of( rhs.left() ) == m &&
             op_of( rhs.right() ) == m && rhs.left().body() == lhs.body().left() &&
             rhs.right().body() == lhs.body().right() )
            return matched( g, name( "K", *m ),
                            agent_binding( { { "A", str( lhs.body().left() ) }, { "B", str( lhs.body().right() ) } },
                                           *m ) );
        // T: MA -> A
        if ( lhs.body() == rhs )
            return matched( g, name( "T", *m ), agent_binding( { { "A", str( rhs ) } }, *m ) );
        // 4: MA -> MMA
        if ( op_of( rhs ) == m && op_of( rhs.body() ) == m && rhs.body().body() == lhs.body() )
            return matched( g, name( "4", *m ), agent_binding( { { "A", str( lhs.body() ) } }, *m ) );
    }
    // 5: ~MA -> M~MA
    if ( with_five && lhs.is( K::negation ) )
    {
        if ( auto m = op_of( lhs.body() ) )
            if ( op_of( rhs ) == m && rhs.body() == lhs )
                return matched( g, name( "5", *m ), agent_binding( { { "A", str( lhs.body().body() ) } }, *m ) );
    }
    return std::nullopt;
}

void flatten( const Formula& f, K connective, std::vector< Formula >& out )
{
    if ( f.is( connective ) )
    {
        flatten( f.left(), connective, out );
        flatten( f.right(), connective, out );
    }
    else
        out.push_back( f );
}

// ~[]~X, the normal form of <>X.
const Formula* possibly_body( const Formula& f )
{
    if ( f.is( K::negation ) && f.body().is( K::box ) && f.body().body().is( K::negation ) )
        return &f.body().body().body();
    return nullptr;
}

std::optional< AxiomMatch > match_a2( const Formula& f )
{
    // []A -> [j]A
    if ( f.is( K::implication ) && f.left().is( K::box ) && f.right().is( K::stit ) &&
         f.left().body() == f.right().body() )
        return matched( AxiomGroup::a2, "A2", { { "A", str( f.left().body() ) }, { "j", f.right().agent() } } );
    return std::nullopt;
}

std::optional< AxiomMatch > match_a3( const Formula& f )
{
    // (<>[j1]A1 & ... & <>[jn]An) -> <>([j1]A1 & ... & [jn]An), agents pairwise distinct
    if ( !f.is( K::implication ) )
        return std::nullopt;
    std::vector< Formula > premises;
    flatten( f.left(), K::conjunction, premises );
    const Formula* goal = possibly_body( f.right() );
    if ( goal == nullptr )
        return std::nullopt;
    std::vector< Formula > goals;
    flatten( *goal, K::conjunction, goals );
    if ( premises.size() != goals.size() )
        return std::nullopt;

    std::set< std::string > agents;
    bindings b;
    for ( std::size_t i = 0; i < premises.size(); ++i )
    {
        const Formula* inner = possibly_body( premises[ i ] );
        if ( inner == nullptr || !inner->is( K::stit ) || *inner != goals[ i ] )
            return std::nullopt;
        if ( !agents.insert( inner->agent() ).second )
            return std::nullopt;
        b.emplace_back( "j" + std::to_string( i + 1 ), inner->agent() );
        b.emplace_back( "A" + std::to_string( i + 1 ), str( inner->body() ) );
    }
    return matched( AxiomGroup::a3, "A3", std::move( b ) );
}

std::optional< AxiomMatch > match_a4( const Formula& f )
{
    // s:(A -> B) -> (t:A -> (s*t):B)
    if ( !f.is( K::implication ) || !f.left().is( K::proves ) || !f.right().is( K::implication ) )
        return std::nullopt;
    const Formula& major = f.left();
    const Formula& minor = f.right().left();
    const Formula& concl = f.right().right();
    if ( !major.body().is( K::implication ) || !minor.is( K::proves ) || !concl.is( K::proves ) )
        return std::nullopt;
    const Term& s = major.term();
    const Term& t = minor.term();
    if ( concl.term() != Term::app( s, t ) || minor.body() != major.body().left() ||
         concl.body() != major.body().right() )
        return std::nullopt;
    return matched( AxiomGroup::a4, "A4",
                    { { "s", str( s ) },
                      { "t", str( t ) },
                      { "A", str( major.body().left() ) },
                      { "B", str( major.body().right() ) } } );
}

std::optional< AxiomMatch > match_a5( const Formula& f )
{
    // t:A -> (!t:(t:A) & KA)
    if ( !f.is( K::implication ) || !f.left().is( K::proves ) || !f.right().is( K::conjunction ) )
        return std::nullopt;
    const Formula& premise = f.left();
    const Formula& checked = f.right().left();
    const Formula& known = f.right().right();
    if ( !checked.is( K::proves ) || checked.term() != Term::check( premise.term() ) || checked.body() != premise ||
         !known.is( K::know ) || known.body() != premise.body() )
        return std::nullopt;
    return matched( AxiomGroup::a5, "A5", { { "t", str( premise.term() ) }, { "A", str( premise.body() ) } } );
}

std::optional< AxiomMatch > match_a6( const Formula& f )
{
    // (s:A | t:A) -> (s+t):A
    if ( !f.is( K::implication ) || !f.left().is( K::disjunction ) || !f.right().is( K::proves ) )
        return std::nullopt;
    const Formula& l = f.left().left();
    const Formula& r = f.left().right();
    if ( !l.is( K::proves ) || !r.is( K::proves ) || l.body() != r.body() || f.right().body() != l.body() ||
         f.right().term() != Term::sum( l.term(), r.term() ) )
        return std::nullopt;
    return matched( AxiomGroup::a6, "A6", { { "s", str( l.term() ) }, { "t", str( r.term() ) }, { "A", str( l.body() ) } } );
}

std::optional< AxiomMatch > match_a8( const Formula& f )
{
    // KA -> []K[]A
    if ( f.is( K::implication ) && f.left().is( K::know ) && f.right().is( K::box ) &&
         f.right().body().is( K::know ) && f.right().body().body().is( K::box ) &&
         f.right().body().body().body() == f.left().body() )
        return matched( AxiomGroup::a8, "A8", { { "A", str( f.left().body() ) } } );
    return std::nullopt;
}

std::optional< AxiomMatch > match_a9( const Formula& f )
{
    // []E t -> K[]E t
    if ( f.is( K::implication ) && f.left().is( K::box ) && f.left().body().is( K::presented ) &&
         f.right().is( K::know ) && f.right().body() == f.left() )
        return matched( AxiomGroup::a9, "A9", { { "t", str( f.left().body().term() ) } } );
    return std::nullopt;
}

} // namespace

std::optional< AxiomMatch > is_axiom_instance( const Formula& f, AxiomGroup group )
{
    const Formula n = normalize_diamonds( f );
    switch ( group )
    {
    case AxiomGroup::a0:
        if ( is_tautology_instance( n ) )
            return matched( AxiomGroup::a0, "A0/tautology", {} );
        return std::nullopt;
    case AxiomGroup::a1: return match_normal_modal( n, group, false, true );
    case AxiomGroup::a2: return match_a2( n );
    case AxiomGroup::a3: return match_a3( n );
    case AxiomGroup::a4: return match_a4( n );
    case AxiomGroup::a5: return match_a5( n );
    case AxiomGroup::a6: return match_a6( n );
    case AxiomGroup::a7: return match_normal_modal( n, group, true, false );
    case AxiomGroup::a8: return match_a8( n );
    case AxiomGroup::a9: return match_a9( n );
    }
    return std::nullopt;
}

std::optional< AxiomMatch > find_axiom_instance( const Formula& f, AxiomRange range )
{
    for ( AxiomGroup g : all_axiom_groups )
    {
        if ( g == AxiomGroup::a0 && range == AxiomRange::a1_a9 )
            continue;
        try
        {
            if ( auto m = is_axiom_instance( f, g ) )
                return m;
        }
        catch ( const skeleton_too_large& )
        {
        }
    }
    return std::nullopt;
}

} // namespace jastit
