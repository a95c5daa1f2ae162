#include "jastit/semantics.hpp"

namespace jastit
{

using K = Formula::kind;

Formula expand_defined( const Formula& f )
{
    switch ( f.type() )
    {
    case K::atom:
    case K::falsum:
    case K::presented:
        return f;
    case K::negation:
        return Formula::negation( expand_defined( f.body() ) );
    case K::conjunction:
        return Formula::conjunction( expand_defined( f.left() ), expand_defined( f.right() ) );
    case K::disjunction:
        return Formula::disjunction( expand_defined( f.left() ), expand_defined( f.right() ) );
    case K::implication:
        return Formula::implication( expand_defined( f.left() ), expand_defined( f.right() ) );
    case K::stit:
        return Formula::stit( f.agent(), expand_defined( f.body() ) );
    case K::box:
        return Formula::box( expand_defined( f.body() ) );
    case K::diamond:
        return Formula::diamond( expand_defined( f.body() ) );
    case K::know:
        return Formula::know( expand_defined( f.body() ) );
    case K::proves:
        return Formula::proves( f.term(), expand_defined( f.body() ) );
    case K::prove: {
        const Formula et = Formula::presented( f.term() );
        return Formula::conjunction(
            Formula::conjunction( Formula::stit( f.agent(), et ), Formula::diamond( Formula::negation( et ) ) ),
            Formula::proves( f.term(), expand_defined( f.body() ) ) );
    }
    case K::proven:
        return Formula::conjunction( Formula::box( Formula::presented( f.term() ) ),
                                     Formula::proves( f.term(), expand_defined( f.body() ) ) );
    }
    return f;
}

Evaluator::Evaluator( const JstitModel& m, EvalOptions options ) : _m{ m }, _options{ options } {}

const Bits& Evaluator::truth_set( const Formula& f )
{
    if ( auto it = _cache.find( f ); it != _cache.end() )
        return it->second;
    Bits s = compute( f );
    return _cache.emplace( f, std::move( s ) ).first->second;
}

bool Evaluator::satisfies( EvalPoint at, const Formula& f )
{
    if ( !_m.is_point( at ) )
        throw evaluation_error( "history does not pass through the moment" );
    return truth_set( f )[ _m.point_index( at ) ];
}

std::optional< EvalPoint > Evaluator::first_failure( const Formula& f )
{
    const Bits& s = truth_set( f );
    for ( std::size_t p = 0; p < s.size(); ++p )
        if ( !s[ p ] )
            return _m.points()[ p ];
    return std::nullopt;
}

std::size_t Evaluator::agent_index( const std::string& agent ) const
{
    auto j = _m.agents().index_of( agent );
    if ( !j )
        throw evaluation_error( "unknown agent '" + agent + "'" );
    return *j;
}

// Per-moment flags: does s hold at every point of the moment?
std::vector< char > Evaluator::holds_everywhere_at( const Bits& s ) const
{
    std::vector< char > out( _m.moment_count(), 1 );
    for ( MomentId x = 0; x < _m.moment_count(); ++x )
    {
        auto [ b, e ] = _m.point_range( x );
        for ( std::size_t p = b; p < e && out[ x ]; ++p )
            out[ x ] = s[ p ] ? 1 : 0;
    }
    return out;
}

// Spread per-moment values to all points of each moment.
Bits Evaluator::moment_wide( const std::vector< char >& per_moment ) const
{
    Bits out( _m.points().size() );
    for ( MomentId x = 0; x < _m.moment_count(); ++x )
        if ( per_moment[ x ] )
        {
            auto [ b, e ] = _m.point_range( x );
            for ( std::size_t p = b; p < e; ++p )
                out.set( p );
        }
    return out;
}

Bits Evaluator::proves_set( const Term& t, const Formula& a )
{
    const auto everywhere = holds_everywhere_at( truth_set( a ) );
    const std::size_t n = _m.moment_count();
    const bool literal = _options.proves == EvalOptions::proves_clause::literal;
    std::vector< char > per_moment( n, 0 );
    for ( MomentId x = 0; x < n; ++x )
    {
        if ( !_m.evidence_holds( x, t, a ) )
            continue;
        bool all = true;
        for ( MomentId y = 0; y < n && all; ++y )
            if ( literal ? _m.re( x, y ) : _m.r( x, y ) )
                all = everywhere[ y ] != 0;
        per_moment[ x ] = all ? 1 : 0;
    }
    return moment_wide( per_moment );
}

Bits Evaluator::compute( const Formula& f )
{
    const std::size_t np = _m.points().size();
    const auto& points = _m.points();
    switch ( f.type() )
    {
    case K::atom: {
        const Bits* v = _m.valuation( f.name() );
        return v ? *v : Bits( np );
    }
    case K::falsum:
        return Bits( np );
    case K::negation:
        return ~truth_set( f.body() );
    case K::conjunction:
        return truth_set( f.left() ) & truth_set( f.right() );
    case K::disjunction:
        return truth_set( f.left() ) | truth_set( f.right() );
    case K::implication:
        return ~truth_set( f.left() ) | truth_set( f.right() );
    case K::box:
        return moment_wide( holds_everywhere_at( truth_set( f.body() ) ) );
    case K::diamond: {
        auto some = holds_everywhere_at( ~truth_set( f.body() ) );
        for ( auto& c : some )
            c = c ? 0 : 1;
        return moment_wide( some );
    }
    case K::know: {
        const auto everywhere = holds_everywhere_at( truth_set( f.body() ) );
        std::vector< char > per_moment( _m.moment_count(), 1 );
        for ( MomentId x = 0; x < _m.moment_count(); ++x )
            for ( MomentId y = 0; y < _m.moment_count() && per_moment[ x ]; ++y )
                if ( _m.r( x, y ) )
                    per_moment[ x ] = everywhere[ y ];
        return moment_wide( per_moment );
    }
    case K::stit: {
        const std::size_t j = agent_index( f.agent() );
        const Bits& body = truth_set( f.body() );
        Bits out( np );
        for ( std::size_t p = 0; p < np; ++p )
        {
            const auto [ x, h ] = points[ p ];
            bool all = true;
            for ( HistoryId g : _m.choice_cell( x, j, h ) )
                if ( !body[ _m.point_index( { x, g } ) ] )
                {
                    all = false;
                    break;
                }
            out[ p ] = all;
        }
        return out;
    }
    case K::proves:
        return proves_set( f.term(), f.body() );
    case K::presented: {
        Bits out( np );
        auto ti = _m.universe().term_index( f.term() );
        if ( ti )
            for ( std::size_t p = 0; p < np; ++p )
                out[ p ] = _m.act_contains_index( p, *ti );
        return out;
    }
    case K::prove:
    case K::proven: {
        if ( _options.defined == EvalOptions::defined_clause::expanded )
            return truth_set( expand_defined( f ) );
        const Bits& presented = truth_set( Formula::presented( f.term() ) );
        const Bits& proves = truth_set( Formula::proves( f.term(), f.body() ) );
        const bool is_prove = f.is( K::prove );
        const std::size_t j = is_prove ? agent_index( f.agent() ) : 0;
        Bits out( np );
        for ( std::size_t p = 0; p < np; ++p )
        {
            const auto [ x, h ] = points[ p ];
            if ( !proves[ p ] )
                continue;
            const auto& range = is_prove ? _m.choice_cell( x, j, h ) : _m.histories_through( x );
            bool all = true;
            for ( HistoryId g : range )
                all = all && presented[ _m.point_index( { x, g } ) ];
            if ( !all )
                continue;
            if ( is_prove )
            {
                bool some_absent = false;
                for ( HistoryId g : _m.histories_through( x ) )
                    some_absent = some_absent || !presented[ _m.point_index( { x, g } ) ];
                if ( !some_absent )
                    continue;
            }
            out.set( p );
        }
        return out;
    }
    }
    return Bits( np );
}

bool satisfies( const JstitModel& m, EvalPoint at, const Formula& f, EvalOptions options )
{
    Evaluator e( m, options );
    return e.satisfies( at, f );
}

Validity valid_in_model( const JstitModel& m, const Formula& f, EvalOptions options )
{
    Evaluator e( m, options );
    auto fail = e.first_failure( f );
    return { !fail.has_value(), fail };
}

} // namespace jastit
