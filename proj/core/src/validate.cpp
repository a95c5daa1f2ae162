#include "jastit/validate.hpp"

#include "jastit/printer.hpp"

#include <algorithm>
#include <functional>

namespace jastit
{

std::vector< std::string > ValidationReport::constraints() const
{
    std::vector< std::string > out;
    for ( const auto& v : violations )
        if ( std::find( out.begin(), out.end(), v.constraint ) == out.end() )
            out.push_back( v.constraint );
    return out;
}

namespace
{

class checker
{
public:
    checker( const JstitModel& m, bool stop_early ) : _m{ m }, _stop{ stop_early }
    {
        const std::size_t n = m.moment_count();
        _inter.reserve( n );
        for ( MomentId x = 0; x < n; ++x )
        {
            auto [ b, e ] = m.point_range( x );
            Bits acc = m.act_bits( b );
            for ( std::size_t p = b + 1; p < e; ++p )
                acc &= m.act_bits( p );
            _inter.push_back( std::move( acc ) );
        }
    }

    ValidationReport run()
    {
        using fn = bool ( checker::* )();
        for ( fn check : { &checker::historical_connection, &checker::no_backward_branching, &checker::partitions,
                           &checker::undivided_choice, &checker::independence, &checker::monotonicity,
                           &checker::closure, &checker::expansion, &checker::no_new_proofs, &checker::divide,
                           &checker::future_matters, &checker::transparency, &checker::r_subset_re,
                           &checker::unirelational } )
            if ( !( this->*check )() )
                break;
        return std::move( _report );
    }

private:
    // Returns false when the caller should stop.
    bool report( std::string_view name, std::vector< std::string > witness )
    {
        _report.violations.push_back( { std::string( name ), std::move( witness ) } );
        return !_stop;
    }

    std::string mo( MomentId x ) const { return _m.moment_name( x ); }
    std::string hi( HistoryId h ) const { return _m.histories()[ h ].id; }
    std::string te( std::size_t t ) const { return print_term( _m.universe().terms()[ t ] ); }
    std::string fo( std::size_t f ) const { return print_formula( _m.universe().formulas()[ f ] ); }
    std::size_t n() const { return _m.moment_count(); }
    const Bits& act( MomentId x, HistoryId h ) const { return _m.act_bits( _m.point_index( { x, h } ) ); }

    Bits evidence_row( MomentId x, std::size_t t ) const
    {
        const auto& u = _m.universe();
        Bits row = u.cs_admitted( t );
        for ( std::size_t f = 0; f < u.formulas().size(); ++f )
            if ( _m.explicit_evidence( x, t, f ) )
                row.set( f );
        return row;
    }

    template< typename F >
    bool each_bit( const Bits& b, F&& f )
    {
        for ( auto i = b.find_first(); i != Bits::npos; i = b.find_next( i ) )
            if ( !f( i ) )
                return false;
        return true;
    }

    bool historical_connection()
    {
        for ( MomentId a = 0; a < n(); ++a )
            for ( MomentId b = a + 1; b < n(); ++b )
            {
                bool joined = false;
                for ( MomentId c = 0; c < n() && !joined; ++c )
                    joined = _m.before_eq( c, a ) && _m.before_eq( c, b );
                if ( !joined && !report( constraint::historical_connection, { mo( a ), mo( b ) } ) )
                    return false;
            }
        return true;
    }

    bool no_backward_branching()
    {
        for ( MomentId x = 0; x < n(); ++x )
            for ( MomentId a = 0; a < n(); ++a )
                for ( MomentId b = a + 1; b < n(); ++b )
                    if ( _m.before_eq( a, x ) && _m.before_eq( b, x ) && !_m.before_eq( a, b ) &&
                         !_m.before_eq( b, a ) &&
                         !report( constraint::no_backward_branching, { mo( x ), mo( a ), mo( b ) } ) )
                        return false;
        return true;
    }

    bool partitions()
    {
        for ( MomentId x = 0; x < n(); ++x )
            for ( std::size_t j = 0; j < _m.agents().size(); ++j )
            {
                std::vector< int > seen( _m.histories().size(), 0 );
                for ( const auto& cell : _m.choice( x, j ) )
                {
                    if ( cell.empty() && !report( constraint::choice_partition,
                                                  { mo( x ), _m.agents().names()[ j ], "empty cell" } ) )
                        return false;
                    for ( HistoryId h : cell )
                        ++seen[ h ];
                }
                for ( HistoryId h : _m.histories_through( x ) )
                    if ( seen[ h ] != 1 &&
                         !report( constraint::choice_partition,
                                  { mo( x ), _m.agents().names()[ j ], hi( h ),
                                    seen[ h ] == 0 ? "in no cell" : "in several cells" } ) )
                        return false;
            }
        return true;
    }

    bool undivided( MomentId x, HistoryId h, HistoryId g ) const
    {
        for ( MomentId y = 0; y < n(); ++y )
            if ( _m.before( x, y ) && _m.passes( h, y ) && _m.passes( g, y ) )
                return true;
        return false;
    }

    bool undivided_choice()
    {
        for ( MomentId x = 0; x < n(); ++x )
        {
            const auto& hs = _m.histories_through( x );
            for ( std::size_t a = 0; a < hs.size(); ++a )
                for ( std::size_t b = a + 1; b < hs.size(); ++b )
                {
                    if ( !undivided( x, hs[ a ], hs[ b ] ) )
                        continue;
                    for ( std::size_t j = 0; j < _m.agents().size(); ++j )
                        if ( _m.choice_cell( x, j, hs[ a ] ) != _m.choice_cell( x, j, hs[ b ] ) &&
                             !report( constraint::no_choice_between_undivided,
                                      { mo( x ), _m.agents().names()[ j ], hi( hs[ a ] ), hi( hs[ b ] ) } ) )
                            return false;
                }
        }
        return true;
    }

    bool independence()
    {
        const std::size_t agents = _m.agents().size();
        for ( MomentId x = 0; x < n(); ++x )
        {
            std::vector< std::size_t > pick( agents, 0 );
            bool failed = false;
            // Depth-first over one cell per agent, intersecting as we go.
            std::function< void( std::size_t, const std::vector< HistoryId >& ) > go =
                [ & ]( std::size_t j, const std::vector< HistoryId >& common ) {
                    if ( failed )
                        return;
                    if ( common.empty() )
                    {
                        failed = true;
                        return;
                    }
                    if ( j == agents )
                        return;
                    const auto& cells = _m.choice( x, j );
                    for ( std::size_t c = 0; c < cells.size() && !failed; ++c )
                    {
                        pick[ j ] = c;
                        std::vector< HistoryId > next;
                        std::set_intersection( common.begin(), common.end(), cells[ c ].begin(), cells[ c ].end(),
                                               std::back_inserter( next ) );
                        go( j + 1, next );
                    }
                };
            go( 0, _m.histories_through( x ) );
            if ( !failed )
                continue;
            std::vector< std::string > witness{ mo( x ) };
            for ( std::size_t j = 0; j < agents; ++j )
            {
                std::string cell = _m.agents().names()[ j ] + "={";
                const auto& cells = _m.choice( x, j );
                if ( pick[ j ] < cells.size() )
                    for ( std::size_t k = 0; k < cells[ pick[ j ] ].size(); ++k )
                        cell += ( k ? "," : "" ) + hi( cells[ pick[ j ] ][ k ] );
                witness.push_back( cell + "}" );
            }
            if ( !report( constraint::independence_of_agents, std::move( witness ) ) )
                return false;
        }
        return true;
    }

    bool monotonicity()
    {
        const auto& u = _m.universe();
        for ( MomentId a = 0; a < n(); ++a )
            for ( MomentId b = 0; b < n(); ++b )
            {
                if ( a == b || !_m.re( a, b ) )
                    continue;
                for ( std::size_t t = 0; t < u.terms().size(); ++t )
                    for ( std::size_t f = 0; f < u.formulas().size(); ++f )
                        if ( _m.explicit_evidence( a, t, f ) && !_m.evidence_holds_index( b, t, f ) &&
                             !report( constraint::evidence_monotonicity, { mo( a ), mo( b ), te( t ), fo( f ) } ) )
                            return false;
            }
        return true;
    }

    bool closure()
    {
        const auto& u = _m.universe();
        for ( MomentId x = 0; x < n(); ++x )
        {
            std::vector< Bits > rows;
            rows.reserve( u.terms().size() );
            for ( std::size_t t = 0; t < u.terms().size(); ++t )
                rows.push_back( evidence_row( x, t ) );

            for ( std::size_t ui = 0; ui < u.terms().size(); ++ui )
            {
                const Term& w = u.terms()[ ui ];
                switch ( w.type() )
                {
                case Term::kind::app: {
                    std::size_t s = *u.term_index( w.left() ), t = *u.term_index( w.right() );
                    bool ok = each_bit( rows[ s ], [ & ]( std::size_t f ) {
                        const Formula& imp = u.formulas()[ f ];
                        if ( !imp.is( Formula::kind::implication ) )
                            return true;
                        auto a = u.formula_index( imp.left() );
                        auto b = u.formula_index( imp.right() );
                        if ( !rows[ t ][ *a ] || rows[ ui ][ *b ] )
                            return true;
                        return report( constraint::evidence_closure, { mo( x ), "(a)", te( ui ), fo( *b ) } );
                    } );
                    if ( !ok )
                        return false;
                    break;
                }
                case Term::kind::sum: {
                    std::size_t s = *u.term_index( w.left() ), t = *u.term_index( w.right() );
                    Bits missing = ( rows[ s ] | rows[ t ] ) - rows[ ui ];
                    if ( !each_bit( missing, [ & ]( std::size_t f ) {
                             return report( constraint::evidence_closure, { mo( x ), "(b)", te( ui ), fo( f ) } );
                         } ) )
                        return false;
                    break;
                }
                case Term::kind::check: {
                    std::size_t t = *u.term_index( w.inner() );
                    bool ok = each_bit( rows[ t ], [ & ]( std::size_t f ) {
                        auto c = u.formula_index( Formula::proves( w.inner(), u.formulas()[ f ] ) );
                        if ( !c || rows[ ui ][ *c ] )
                            return true;
                        return report( constraint::evidence_closure, { mo( x ), "(c)", te( ui ), fo( *c ) } );
                    } );
                    if ( !ok )
                        return false;
                    break;
                }
                default:
                    break;
                }
            }
        }
        return true;
    }

    bool expansion()
    {
        for ( MomentId b = 0; b < n(); ++b )
            for ( MomentId a = 0; a < n(); ++a )
            {
                if ( !_m.before( a, b ) )
                    continue;
                for ( HistoryId h : _m.histories_through( b ) )
                    if ( _m.passes( h, a ) && !each_bit( act( a, h ) - act( b, h ), [ & ]( std::size_t t ) {
                             return report( constraint::expansion, { mo( a ), mo( b ), hi( h ), te( t ) } );
                         } ) )
                        return false;
            }
        return true;
    }

    bool no_new_proofs()
    {
        for ( MomentId x = 0; x < n(); ++x )
        {
            Bits earlier( _m.universe().terms().size() );
            for ( HistoryId h : _m.histories_through( x ) )
                for ( MomentId y : _m.histories()[ h ].chain )
                    if ( _m.before( y, x ) )
                        earlier |= act( y, h );
            if ( !each_bit( _inter[ x ] - earlier,
                            [ & ]( std::size_t t ) { return report( constraint::no_new_proofs, { mo( x ), te( t ) } ); } ) )
                return false;
        }
        return true;
    }

    bool divide()
    {
        for ( MomentId x = 0; x < n(); ++x )
        {
            const auto& hs = _m.histories_through( x );
            for ( std::size_t a = 0; a < hs.size(); ++a )
                for ( std::size_t b = a + 1; b < hs.size(); ++b )
                {
                    if ( !undivided( x, hs[ a ], hs[ b ] ) )
                        continue;
                    const Bits diff = act( x, hs[ a ] ) ^ act( x, hs[ b ] );
                    if ( !each_bit( diff, [ & ]( std::size_t t ) {
                             return report( constraint::divide, { mo( x ), hi( hs[ a ] ), hi( hs[ b ] ), te( t ) } );
                         } ) )
                        return false;
                }
        }
        return true;
    }

    bool future_matters()
    {
        for ( MomentId a = 0; a < n(); ++a )
            for ( MomentId b = 0; b < n(); ++b )
                if ( _m.before( a, b ) && !_m.r( a, b ) &&
                     !report( constraint::future_matters, { mo( a ), mo( b ) } ) )
                    return false;
        return true;
    }

    bool transparency()
    {
        for ( MomentId a = 0; a < n(); ++a )
            for ( MomentId b = 0; b < n(); ++b )
                if ( a != b && _m.re( a, b ) &&
                     !each_bit( _inter[ a ] - _inter[ b ], [ & ]( std::size_t t ) {
                         return report( constraint::transparency, { mo( a ), mo( b ), te( t ) } );
                     } ) )
                    return false;
        return true;
    }

    bool r_subset_re()
    {
        for ( MomentId a = 0; a < n(); ++a )
            for ( MomentId b = 0; b < n(); ++b )
                if ( _m.r( a, b ) && !_m.re( a, b ) && !report( constraint::r_subset_re, { mo( a ), mo( b ) } ) )
                    return false;
        return true;
    }

    bool unirelational()
    {
        if ( !_m.flags().unirelational )
            return true;
        for ( MomentId a = 0; a < n(); ++a )
            for ( MomentId b = 0; b < n(); ++b )
                if ( _m.re( a, b ) && !_m.r( a, b ) && !report( constraint::unirelational, { mo( a ), mo( b ) } ) )
                    return false;
        return true;
    }

    const JstitModel& _m;
    bool _stop;
    std::vector< Bits > _inter;  // terms present on every history through a moment
    ValidationReport _report;
};

} // namespace

ValidationReport validate( const JstitModel& m ) { return checker( m, false ).run(); }

bool is_valid_model( const JstitModel& m ) { return checker( m, true ).run().clean(); }

} // namespace jastit
