#include "jastit/model.hpp"

#include "jastit/printer.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <set>

namespace jastit
{

namespace
{

constexpr std::size_t npos = std::numeric_limits< std::size_t >::max();

} // namespace

// --- relations ----------------------------------------------------------------

std::vector< std::vector< char > > preorder_closure( std::size_t n, const std::vector< std::pair< MomentId, MomentId > >& edges )
{
    std::vector< std::vector< char > > rel( n, std::vector< char >( n, 0 ) );
    for ( std::size_t i = 0; i < n; ++i )
        rel[ i ][ i ] = 1;
    for ( auto [ a, b ] : edges )
        rel[ a ][ b ] = 1;
    for ( std::size_t k = 0; k < n; ++k )
        for ( std::size_t i = 0; i < n; ++i )
            if ( rel[ i ][ k ] != 0 )
                for ( std::size_t j = 0; j < n; ++j )
                    if ( rel[ k ][ j ] != 0 )
                        rel[ i ][ j ] = 1;
    return rel;
}

std::vector< std::vector< MomentId > > maximal_chains( const std::vector< std::vector< char > >& order )
{
    // In a finite poset the maximal chains are exactly the paths along
    // immediate-successor edges from a minimal to a maximal element.
    const std::size_t n = order.size();
    auto lt = [ & ]( std::size_t a, std::size_t b ) { return a != b && order[ a ][ b ] != 0; };
    std::vector< std::vector< MomentId > > succ( n );
    std::vector< char > minimal( n, 1 );
    for ( std::size_t a = 0; a < n; ++a )
        for ( std::size_t b = 0; b < n; ++b )
        {
            if ( !lt( a, b ) )
                continue;
            minimal[ b ] = 0;
            bool immediate = true;
            for ( std::size_t c = 0; c < n && immediate; ++c )
                if ( lt( a, c ) && lt( c, b ) )
                    immediate = false;
            if ( immediate )
                succ[ a ].push_back( b );
        }

    std::vector< std::vector< MomentId > > chains;
    std::vector< MomentId > path;
    std::function< void( MomentId ) > walk = [ & ]( MomentId m ) {
        path.push_back( m );
        if ( succ[ m ].empty() )
            chains.push_back( path );
        for ( MomentId s : succ[ m ] )
            walk( s );
        path.pop_back();
    };
    for ( std::size_t m = 0; m < n; ++m )
        if ( minimal[ m ] != 0 )
            walk( m );
    return chains;
}

// --- UniverseIndex --------------------------------------------------------------

UniverseIndex::UniverseIndex( const Universe& u, const ModelFlags& flags )
    : _terms( u.terms.begin(), u.terms.end() ), _formulas( u.formulas.begin(), u.formulas.end() )
{
    for ( std::size_t i = 0; i < _terms.size(); ++i )
        _term_ix.emplace( _terms[ i ], i );
    for ( std::size_t i = 0; i < _formulas.size(); ++i )
        _formula_ix.emplace( _formulas[ i ], i );

    _cs.assign( _terms.size(), Bits( _formulas.size() ) );
    if ( !flags.normal )
        return;
    for ( std::size_t t = 0; t < _terms.size(); ++t )
    {
        if ( !_terms[ t ].is_constant() )
            continue;
        for ( std::size_t f = 0; f < _formulas.size(); ++f )
            if ( cs_contains( flags.cs, Formula::proves( _terms[ t ], _formulas[ f ] ), flags.normality_range ) )
                _cs[ t ].set( f );
    }
}

std::optional< std::size_t > UniverseIndex::term_index( const Term& t ) const
{
    auto it = _term_ix.find( t );
    if ( it == _term_ix.end() )
        return std::nullopt;
    return it->second;
}

std::optional< std::size_t > UniverseIndex::formula_index( const Formula& f ) const
{
    auto it = _formula_ix.find( f );
    if ( it == _formula_ix.end() )
        return std::nullopt;
    return it->second;
}

bool UniverseIndex::covers( const Universe& u ) const
{
    return std::all_of( u.terms.begin(), u.terms.end(), [ & ]( const Term& t ) { return _term_ix.contains( t ); } ) &&
           std::all_of( u.formulas.begin(), u.formulas.end(),
                        [ & ]( const Formula& f ) { return _formula_ix.contains( f ); } );
}

// --- JstitModel -------------------------------------------------------------------

namespace
{

Universe seed_universe( const ModelDescription& d )
{
    std::vector< Formula > formulas = d.extra_formulas;
    std::vector< Term > terms = d.extra_terms;
    for ( const auto& e : d.evidence )
    {
        formulas.push_back( e.formula );
        terms.push_back( e.term );
    }
    for ( const auto& [ m, per_history ] : d.act )
        for ( const auto& [ h, ts ] : per_history )
            terms.insert( terms.end(), ts.begin(), ts.end() );
    for ( const auto& [ atom, pts ] : d.valuation )
        if ( is_atom_name( atom ) )
            formulas.push_back( Formula::atom( atom ) );
    return closure_universe( formulas, terms );
}

} // namespace

JstitModel JstitModel::build( ModelDescription description, std::shared_ptr< const UniverseIndex > universe )
{
    JstitModel m;
    auto desc = std::make_shared< ModelDescription >( std::move( description ) );
    const ModelDescription& d = *desc;
    m._desc = desc;

    try
    {
        m._agents = AgentSet( d.agents );
    }
    catch ( const std::invalid_argument& e )
    {
        throw model_error( std::string( "agents: " ) + e.what() );
    }

    const std::size_t n = d.moments.size();
    if ( n == 0 )
        throw model_error( "a model needs at least one moment" );
    for ( std::size_t i = 0; i < n; ++i )
    {
        if ( d.moments[ i ].empty() )
            throw model_error( "empty moment identifier" );
        if ( !m._moment_ix.emplace( d.moments[ i ], i ).second )
            throw model_error( "duplicate moment id '" + d.moments[ i ] + "'" );
    }
    auto moment = [ & ]( const std::string& name, const char* where ) {
        auto it = m._moment_ix.find( name );
        if ( it == m._moment_ix.end() )
            throw model_error( std::string( where ) + ": unknown moment '" + name + "'" );
        return it->second;
    };
    auto edges = [ & ]( const std::vector< NamePair >& list, const char* where ) {
        std::vector< std::pair< MomentId, MomentId > > out;
        for ( const auto& [ a, b ] : list )
            out.emplace_back( moment( a, where ), moment( b, where ) );
        return out;
    };

    // Tree order from strict covering edges.
    auto cover = edges( d.cover, "cover" );
    for ( auto [ a, b ] : cover )
        if ( a == b )
            throw model_error( "cover: edge (" + d.moments[ a ] + ", " + d.moments[ a ] + ") is reflexive" );
    m._order = preorder_closure( n, cover );
    for ( std::size_t a = 0; a < n; ++a )
        for ( std::size_t b = a + 1; b < n; ++b )
            if ( m._order[ a ][ b ] != 0 && m._order[ b ][ a ] != 0 )
                throw model_error( "cover: cycle through '" + d.moments[ a ] + "' and '" + d.moments[ b ] +
                                   "' (order is not antisymmetric)" );

    m._r = preorder_closure( n, edges( d.r, "r" ) );
    if ( d.re )
        m._re = preorder_closure( n, edges( *d.re, "re" ) );
    else
        m._re = m._r;

    // Histories.
    auto chains = maximal_chains( m._order );
    std::sort( chains.begin(), chains.end(), []( const auto& a, const auto& b ) {
        if ( a.back() != b.back() )
            return a.back() < b.back();
        return a < b;
    } );
    std::map< MomentId, int > leaf_uses;
    for ( auto& c : chains )
    {
        History h;
        h.leaf = c.back();
        int k = ++leaf_uses[ h.leaf ];
        h.id = d.moments[ h.leaf ] + ( k > 1 ? "#" + std::to_string( k ) : "" );
        h.chain = std::move( c );
        m._histories.push_back( std::move( h ) );
    }
    const std::size_t hn = m._histories.size();
    m._through.assign( n, {} );
    m._passes.assign( hn, std::vector< char >( n, 0 ) );
    for ( HistoryId h = 0; h < hn; ++h )
        for ( MomentId x : m._histories[ h ].chain )
        {
            m._passes[ h ][ x ] = 1;
            m._through[ x ].push_back( h );
        }
    for ( auto& list : m._through )
        std::sort( list.begin(), list.end() );

    auto history = [ & ]( const std::string& id, MomentId at, const char* where ) {
        HistoryId h = 0;
        try
        {
            h = m.history_by_id( id );
        }
        catch ( const model_error& e )
        {
            throw model_error( std::string( where ) + ": " + e.what() );
        }
        if ( m._passes[ h ][ at ] == 0 )
            throw model_error( std::string( where ) + ": history '" + id + "' does not pass through moment '" +
                               d.moments[ at ] + "'" );
        return h;
    };

    // Evaluation points.
    m._point_ix.assign( n, std::vector< std::size_t >( hn, npos ) );
    m._moment_points.resize( n );
    for ( MomentId x = 0; x < n; ++x )
    {
        m._moment_points[ x ].first = m._points.size();
        for ( HistoryId h : m._through[ x ] )
        {
            m._point_ix[ x ][ h ] = m._points.size();
            m._points.push_back( { x, h } );
        }
        m._moment_points[ x ].second = m._points.size();
    }

    // Choice: vacuous unless declared.
    const std::size_t an = m._agents.size();
    m._choice.assign( n, std::vector< std::vector< std::vector< HistoryId > > >( an ) );
    for ( MomentId x = 0; x < n; ++x )
        for ( std::size_t j = 0; j < an; ++j )
            m._choice[ x ][ j ] = { m._through[ x ] };
    for ( const auto& [ mname, per_agent ] : d.choice )
    {
        MomentId x = moment( mname, "choice" );
        for ( const auto& [ agent, cells ] : per_agent )
        {
            auto j = m._agents.index_of( agent );
            if ( !j )
                throw model_error( "choice: unknown agent '" + agent + "' at moment '" + mname + "'" );
            std::vector< std::vector< HistoryId > > part;
            for ( const auto& cell : cells )
            {
                std::vector< HistoryId > hs;
                for ( const auto& id : cell )
                    hs.push_back( history( id, x, "choice" ) );
                std::sort( hs.begin(), hs.end() );
                part.push_back( std::move( hs ) );
            }
            m._choice[ x ][ *j ] = std::move( part );
        }
    }

    // Universes.
    Universe seeds = seed_universe( d );
    if ( universe )
    {
        if ( !universe->covers( seeds ) )
            throw model_error( "supplied universe does not cover the model's terms and formulas" );
        m._universe = std::move( universe );
    }
    else
    {
        m._universe = std::make_shared< const UniverseIndex >( seeds, d.flags );
    }
    const UniverseIndex& u = *m._universe;

    // Act.
    m._act.assign( m._points.size(), Bits( u.terms().size() ) );
    for ( const auto& [ mname, per_history ] : d.act )
    {
        MomentId x = moment( mname, "act" );
        for ( const auto& [ id, ts ] : per_history )
        {
            HistoryId h = history( id, x, "act" );
            for ( const auto& t : ts )
                m._act[ m._point_ix[ x ][ h ] ].set( *u.term_index( t ) );
        }
    }

    // Evidence.
    m._evidence.assign( n, std::vector< Bits >( u.terms().size(), Bits( u.formulas().size() ) ) );
    for ( const auto& e : d.evidence )
    {
        MomentId x = moment( e.moment, "evidence" );
        m._evidence[ x ][ *u.term_index( e.term ) ].set( *u.formula_index( e.formula ) );
    }

    // Valuation.
    for ( const auto& [ atom, pts ] : d.valuation )
    {
        if ( !is_atom_name( atom ) )
            throw model_error( "valuation: '" + atom + "' is not an atom name" );
        Bits bits( m._points.size() );
        for ( const auto& [ mname, id ] : pts )
        {
            MomentId x = moment( mname, "valuation" );
            HistoryId h = history( id, x, "valuation" );
            bits.set( m._point_ix[ x ][ h ] );
        }
        m._valuation.emplace( atom, std::move( bits ) );
    }
    return m;
}

std::optional< MomentId > JstitModel::find_moment( std::string_view name ) const
{
    auto it = _moment_ix.find( std::string( name ) );
    if ( it == _moment_ix.end() )
        return std::nullopt;
    return it->second;
}

HistoryId JstitModel::history_by_id( std::string_view id ) const
{
    std::optional< HistoryId > found;
    for ( HistoryId h = 0; h < _histories.size(); ++h )
        if ( _histories[ h ].id == id )
            found = h;
    if ( !found )
    {
        auto m = find_moment( id );
        if ( m && _histories.end() != std::find_if( _histories.begin(), _histories.end(),
                                                    [ & ]( const History& h ) { return h.leaf == *m; } ) )
            throw model_error( "history id '" + std::string( id ) + "' is ambiguous" );
        throw model_error( "unknown history '" + std::string( id ) + "' (histories are named by their last moment)" );
    }
    return *found;
}

const std::vector< HistoryId >& JstitModel::choice_cell( MomentId m, std::size_t agent, HistoryId h ) const
{
    for ( const auto& cell : _choice[ m ][ agent ] )
        if ( std::binary_search( cell.begin(), cell.end(), h ) )
            return cell;
    thread_local std::vector< HistoryId > singleton;
    singleton.assign( 1, h );
    return singleton;
}

bool JstitModel::is_point( EvalPoint p ) const
{
    return p.moment < _point_ix.size() && p.history < _histories.size() && _point_ix[ p.moment ][ p.history ] != npos;
}

std::size_t JstitModel::point_index( EvalPoint p ) const
{
    if ( !is_point( p ) )
        throw model_error( "not an evaluation point of the model" );
    return _point_ix[ p.moment ][ p.history ];
}

bool JstitModel::act_contains( EvalPoint p, const Term& t ) const
{
    auto ti = _universe->term_index( t );
    return ti && _act[ point_index( p ) ][ *ti ];
}

bool JstitModel::evidence_holds_index( MomentId m, std::size_t term, std::size_t formula ) const
{
    return _evidence[ m ][ term ][ formula ] || _universe->cs_admitted( term )[ formula ];
}

bool JstitModel::evidence_holds( MomentId m, const Term& t, const Formula& a ) const
{
    auto ti = _universe->term_index( t );
    auto fi = _universe->formula_index( a );
    if ( ti && fi )
        return evidence_holds_index( m, *ti, *fi );
    // Outside the universe only the constant specification can contribute.
    return flags().normal && t.is_constant() && cs_contains( flags().cs, Formula::proves( t, a ), flags().normality_range );
}

const Bits* JstitModel::valuation( std::string_view atom ) const
{
    auto it = _valuation.find( atom );
    return it == _valuation.end() ? nullptr : &it->second;
}

} // namespace jastit
