#include "jastit/ast.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace jastit
{

namespace
{

bool has_class( std::string_view name, std::string_view initials )
{
    if ( name.empty() || initials.find( name.front() ) == std::string_view::npos )
        return false;
    return std::all_of( name.begin() + 1, name.end(),
                        []( char c ) { return std::isdigit( static_cast< unsigned char >( c ) ) != 0; } );
}

std::size_t mix( std::size_t seed, std::size_t value )
{
    return seed ^ ( value + 0x9e3779b97f4a7c15ULL + ( seed << 6 ) + ( seed >> 2 ) );
}

template< typename T >
std::strong_ordering compare_args( const std::vector< T >& a, const std::vector< T >& b )
{
    if ( auto c = a.size() <=> b.size(); c != 0 )
        return c;
    for ( std::size_t i = 0; i < a.size(); ++i )
        if ( auto c = a[ i ] <=> b[ i ]; c != 0 )
            return c;
    return std::strong_ordering::equal;
}

} // namespace

bool is_variable_name( std::string_view name ) { return has_class( name, "xyzwu" ); }
bool is_constant_name( std::string_view name ) { return has_class( name, "abcd" ); }
bool is_atom_name( std::string_view name ) { return has_class( name, "pqrs" ); }

bool is_agent_name( std::string_view name )
{
    if ( name.empty() )
        return false;
    auto ident = []( char c ) { return std::isalnum( static_cast< unsigned char >( c ) ) != 0 || c == '_'; };
    return std::all_of( name.begin(), name.end(), ident );
}

// --- Term -------------------------------------------------------------------

namespace
{

std::shared_ptr< const Term::node > make_term( Term::kind k, std::string name, std::vector< Term > args )
{
    std::size_t h = mix( static_cast< std::size_t >( k ), std::hash< std::string >{}( name ) );
    std::size_t size = 1;
    for ( const auto& a : args )
    {
        h = mix( h, a.hash() );
        size += a.size();
    }
    return std::make_shared< const Term::node >( Term::node{ k, std::move( name ), std::move( args ), h, size } );
}

} // namespace

Term Term::variable( std::string name )
{
    if ( !is_variable_name( name ) )
        throw std::invalid_argument( "not a proof variable name: '" + name + "'" );
    return Term{ make_term( kind::variable, std::move( name ), {} ) };
}

Term Term::constant( std::string name )
{
    if ( !is_constant_name( name ) )
        throw std::invalid_argument( "not a proof constant name: '" + name + "'" );
    return Term{ make_term( kind::constant, std::move( name ), {} ) };
}

Term Term::sum( Term left, Term right )
{
    return Term{ make_term( kind::sum, {}, { std::move( left ), std::move( right ) } ) };
}

Term Term::app( Term left, Term right )
{
    return Term{ make_term( kind::app, {}, { std::move( left ), std::move( right ) } ) };
}

Term Term::check( Term inner ) { return Term{ make_term( kind::check, {}, { std::move( inner ) } ) }; }

Term::kind Term::type() const { return _node->type; }
const std::string& Term::name() const { return _node->name; }
const Term& Term::left() const { return _node->args.at( 0 ); }
const Term& Term::right() const { return _node->args.at( 1 ); }
const Term& Term::inner() const { return _node->args.at( 0 ); }
std::size_t Term::hash() const { return _node->hash; }
std::size_t Term::size() const { return _node->size; }

bool operator==( const Term& a, const Term& b )
{
    if ( a._node == b._node )
        return true;
    if ( a._node->hash != b._node->hash || a._node->type != b._node->type || a._node->name != b._node->name )
        return false;
    return a._node->args == b._node->args;
}

std::strong_ordering operator<=>( const Term& a, const Term& b )
{
    if ( a._node == b._node )
        return std::strong_ordering::equal;
    if ( auto c = a._node->type <=> b._node->type; c != 0 )
        return c;
    if ( auto c = a._node->name <=> b._node->name; c != 0 )
        return c;
    return compare_args( a._node->args, b._node->args );
}

// --- Formula ----------------------------------------------------------------

namespace
{

std::shared_ptr< const Formula::node > make_formula( Formula::kind k, std::string name, std::optional< Term > term,
                                                     std::vector< Formula > args )
{
    std::size_t h = mix( static_cast< std::size_t >( k ) + 0x51, std::hash< std::string >{}( name ) );
    std::size_t size = 1;
    if ( term )
    {
        h = mix( h, term->hash() );
        size += term->size();
    }
    for ( const auto& a : args )
    {
        h = mix( h, a.hash() );
        size += a.size();
    }
    return std::make_shared< const Formula::node >(
        Formula::node{ k, std::move( name ), std::move( term ), std::move( args ), h, size } );
}

void require_agent( const std::string& agent )
{
    if ( !is_agent_name( agent ) )
        throw std::invalid_argument( "not an agent identifier: '" + agent + "'" );
}

} // namespace

Formula Formula::atom( std::string name )
{
    if ( !is_atom_name( name ) )
        throw std::invalid_argument( "not an atom name: '" + name + "'" );
    return Formula{ make_formula( kind::atom, std::move( name ), std::nullopt, {} ) };
}

Formula Formula::falsum()
{
    static const Formula f{ make_formula( kind::falsum, {}, std::nullopt, {} ) };
    return f;
}

Formula::Formula() : Formula( falsum() ) {}

Formula Formula::negation( Formula f )
{
    return Formula{ make_formula( kind::negation, {}, std::nullopt, { std::move( f ) } ) };
}

Formula Formula::conjunction( Formula l, Formula r )
{
    return Formula{ make_formula( kind::conjunction, {}, std::nullopt, { std::move( l ), std::move( r ) } ) };
}

Formula Formula::disjunction( Formula l, Formula r )
{
    return Formula{ make_formula( kind::disjunction, {}, std::nullopt, { std::move( l ), std::move( r ) } ) };
}

Formula Formula::implication( Formula l, Formula r )
{
    return Formula{ make_formula( kind::implication, {}, std::nullopt, { std::move( l ), std::move( r ) } ) };
}

Formula Formula::stit( std::string agent, Formula f )
{
    require_agent( agent );
    return Formula{ make_formula( kind::stit, std::move( agent ), std::nullopt, { std::move( f ) } ) };
}

Formula Formula::box( Formula f ) { return Formula{ make_formula( kind::box, {}, std::nullopt, { std::move( f ) } ) }; }

Formula Formula::diamond( Formula f )
{
    return Formula{ make_formula( kind::diamond, {}, std::nullopt, { std::move( f ) } ) };
}

Formula Formula::know( Formula f ) { return Formula{ make_formula( kind::know, {}, std::nullopt, { std::move( f ) } ) }; }

Formula Formula::proves( Term t, Formula f )
{
    return Formula{ make_formula( kind::proves, {}, std::move( t ), { std::move( f ) } ) };
}

Formula Formula::presented( Term t ) { return Formula{ make_formula( kind::presented, {}, std::move( t ), {} ) }; }

Formula Formula::prove( std::string agent, Term t, Formula f )
{
    require_agent( agent );
    return Formula{ make_formula( kind::prove, std::move( agent ), std::move( t ), { std::move( f ) } ) };
}

Formula Formula::proven( Term t, Formula f )
{
    return Formula{ make_formula( kind::proven, {}, std::move( t ), { std::move( f ) } ) };
}

Formula::kind Formula::type() const { return _node->type; }
const std::string& Formula::name() const { return _node->name; }

const Term& Formula::term() const
{
    if ( !_node->term )
        throw std::logic_error( "formula node carries no proof term" );
    return *_node->term;
}

const Formula& Formula::body() const { return _node->args.at( 0 ); }
const Formula& Formula::left() const { return _node->args.at( 0 ); }
const Formula& Formula::right() const { return _node->args.at( 1 ); }

bool Formula::is_binary() const
{
    switch ( type() )
    {
    case kind::conjunction:
    case kind::disjunction:
    case kind::implication:
        return true;
    default:
        return false;
    }
}

bool Formula::is_boolean() const { return is_binary() || is( kind::negation ) || is( kind::falsum ); }

std::size_t Formula::hash() const { return _node->hash; }
std::size_t Formula::size() const { return _node->size; }

bool operator==( const Formula& a, const Formula& b )
{
    if ( a._node == b._node )
        return true;
    if ( a._node->hash != b._node->hash || a._node->type != b._node->type || a._node->name != b._node->name )
        return false;
    return a._node->term == b._node->term && a._node->args == b._node->args;
}

std::strong_ordering operator<=>( const Formula& a, const Formula& b )
{
    if ( a._node == b._node )
        return std::strong_ordering::equal;
    if ( auto c = a._node->type <=> b._node->type; c != 0 )
        return c;
    if ( auto c = a._node->name <=> b._node->name; c != 0 )
        return c;
    if ( a._node->term.has_value() != b._node->term.has_value() )
        return a._node->term.has_value() ? std::strong_ordering::greater : std::strong_ordering::less;
    if ( a._node->term )
        if ( auto c = *a._node->term <=> *b._node->term; c != 0 )
            return c;
    return compare_args( a._node->args, b._node->args );
}

// --- AgentSet ---------------------------------------------------------------

AgentSet::AgentSet( std::vector< std::string > agents ) : _agents{ std::move( agents ) }
{
    if ( _agents.empty() )
        throw std::invalid_argument( "agent set must not be empty" );
    for ( std::size_t i = 0; i < _agents.size(); ++i )
    {
        if ( !is_agent_name( _agents[ i ] ) )
            throw std::invalid_argument( "not an agent identifier: '" + _agents[ i ] + "'" );
        for ( std::size_t k = 0; k < i; ++k )
            if ( _agents[ k ] == _agents[ i ] )
                throw std::invalid_argument( "duplicate agent '" + _agents[ i ] + "'" );
    }
}

bool AgentSet::contains( std::string_view agent ) const { return index_of( agent ).has_value(); }

std::optional< std::size_t > AgentSet::index_of( std::string_view agent ) const
{
    for ( std::size_t i = 0; i < _agents.size(); ++i )
        if ( _agents[ i ] == agent )
            return i;
    return std::nullopt;
}

} // namespace jastit
