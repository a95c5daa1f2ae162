#include "jastit/search.hpp"

#include "jastit/semantics.hpp"
#include "jastit/validate.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <thread>

namespace jastit
{

namespace
{

constexpr std::size_t npos = std::numeric_limits< std::size_t >::max();

std::string moment_label( std::size_t i ) { return "m" + std::to_string( i ); }

// --- rooted trees -----------------------------------------------------------------

struct code_node
{
    std::vector< code_node > children;
};

code_node parse_code( std::string_view code, std::size_t& pos )
{
    code_node node;
    ++pos;  // '('
    while ( code[ pos ] == '(' )
        node.children.push_back( parse_code( code, pos ) );
    ++pos;  // ')'
    return node;
}

std::string canonical_code( const code_node& node )
{
    std::vector< std::string > parts;
    for ( const auto& c : node.children )
        parts.push_back( canonical_code( c ) );
    std::sort( parts.begin(), parts.end() );
    std::string out = "(";
    for ( const auto& p : parts )
        out += p;
    return out + ")";
}

void grow( code_node& node, code_node& root, std::set< std::string >& out )
{
    node.children.push_back( {} );
    out.insert( canonical_code( root ) );
    node.children.pop_back();
    for ( auto& c : node.children )
        grow( c, root, out );
}

// Parent array in breadth-first labelling, children in code order.
std::vector< std::size_t > parents_from_code( std::string_view code )
{
    std::size_t pos = 0;
    code_node root = parse_code( code, pos );
    std::vector< std::size_t > parent{ npos };
    std::vector< const code_node* > queue{ &root };
    for ( std::size_t i = 0; i < queue.size(); ++i )
        for ( const auto& c : queue[ i ]->children )
        {
            parent.push_back( i );
            queue.push_back( &c );
        }
    return parent;
}

// --- frames -------------------------------------------------------------------------

// A tree with its histories, blocks and evaluation points, laid out exactly
// as JstitModel::build lays out the corresponding model.
struct tree_frame
{
    std::size_t n = 0;
    std::vector< std::size_t > parent;
    std::vector< std::vector< MomentId > > children;
    std::vector< std::vector< char > > le;
    std::vector< MomentId > leaves;                          // history h ends at leaves[h]
    std::vector< std::vector< HistoryId > > through;
    std::vector< std::vector< std::vector< HistoryId > > > blocks;  // [m] histories per child (or {h} at a leaf)
    std::vector< std::vector< std::size_t > > block_of;      // [m][h], npos when h not through m
    std::vector< std::pair< MomentId, HistoryId > > points;
    std::vector< std::vector< std::size_t > > point_ix;      // [m][h]
    std::vector< std::string > names;
    std::vector< std::string > history_names;
};

tree_frame make_frame( const std::vector< std::size_t >& parent )
{
    tree_frame f;
    f.n = parent.size();
    f.parent = parent;
    f.children.resize( f.n );
    for ( std::size_t i = 1; i < f.n; ++i )
        f.children[ parent[ i ] ].push_back( i );
    f.le.assign( f.n, std::vector< char >( f.n, 0 ) );
    for ( std::size_t i = 0; i < f.n; ++i )
        for ( std::size_t a = i;; a = parent[ a ] )
        {
            f.le[ a ][ i ] = 1;
            if ( a == 0 )
                break;
        }
    for ( std::size_t i = 0; i < f.n; ++i )
    {
        f.names.push_back( moment_label( i ) );
        if ( f.children[ i ].empty() )
            f.leaves.push_back( i );
    }
    for ( MomentId leaf : f.leaves )
        f.history_names.push_back( f.names[ leaf ] );
    f.through.assign( f.n, {} );
    for ( HistoryId h = 0; h < f.leaves.size(); ++h )
        for ( MomentId m = 0; m < f.n; ++m )
            if ( f.le[ m ][ f.leaves[ h ] ] )
                f.through[ m ].push_back( h );
    f.blocks.resize( f.n );
    f.block_of.assign( f.n, std::vector< std::size_t >( f.leaves.size(), npos ) );
    for ( MomentId m = 0; m < f.n; ++m )
    {
        if ( f.children[ m ].empty() )
            f.blocks[ m ].push_back( f.through[ m ] );
        for ( MomentId c : f.children[ m ] )
            f.blocks[ m ].push_back( f.through[ c ] );
        for ( std::size_t b = 0; b < f.blocks[ m ].size(); ++b )
            for ( HistoryId h : f.blocks[ m ][ b ] )
                f.block_of[ m ][ h ] = b;
    }
    f.point_ix.assign( f.n, std::vector< std::size_t >( f.leaves.size(), npos ) );
    for ( MomentId m = 0; m < f.n; ++m )
        for ( HistoryId h : f.through[ m ] )
        {
            f.point_ix[ m ][ h ] = f.points.size();
            f.points.emplace_back( m, h );
        }
    if ( f.points.size() > 64 )
        throw std::invalid_argument( "search supports at most 64 evaluation points per model" );
    return f;
}

using relation = std::vector< std::vector< char > >;

bool transitive( const relation& r )
{
    const std::size_t n = r.size();
    for ( std::size_t a = 0; a < n; ++a )
        for ( std::size_t b = 0; b < n; ++b )
            if ( r[ a ][ b ] )
                for ( std::size_t c = 0; c < n; ++c )
                    if ( r[ b ][ c ] && !r[ a ][ c ] )
                        return false;
    return true;
}

// All preorders containing `base` (itself a preorder), in increasing order of
// the bitmask over the missing pairs.
std::vector< relation > preorders_above( const relation& base )
{
    const std::size_t n = base.size();
    std::vector< std::pair< std::size_t, std::size_t > > free;
    for ( std::size_t a = 0; a < n; ++a )
        for ( std::size_t b = 0; b < n; ++b )
            if ( !base[ a ][ b ] )
                free.emplace_back( a, b );
    if ( free.size() > 24 )
        throw std::invalid_argument( "too many moments for exhaustive enumeration of accessibility relations" );
    std::vector< relation > out;
    for ( std::uint64_t mask = 0; mask < ( std::uint64_t{ 1 } << free.size() ); ++mask )
    {
        relation r = base;
        for ( std::size_t i = 0; i < free.size(); ++i )
            if ( mask >> i & 1 )
                r[ free[ i ].first ][ free[ i ].second ] = 1;
        if ( transitive( r ) )
            out.push_back( std::move( r ) );
    }
    return out;
}

relation close( relation r )
{
    const std::size_t n = r.size();
    for ( std::size_t k = 0; k < n; ++k )
        for ( std::size_t a = 0; a < n; ++a )
            if ( r[ a ][ k ] )
                for ( std::size_t b = 0; b < n; ++b )
                    if ( r[ k ][ b ] )
                        r[ a ][ b ] = 1;
    return r;
}

// Partitions of {0..k-1} as restricted growth strings, lexicographic.
std::vector< std::vector< std::size_t > > set_partitions( std::size_t k )
{
    std::vector< std::vector< std::size_t > > out;
    std::vector< std::size_t > rgs( k, 0 );
    std::function< void( std::size_t, std::size_t ) > go = [ & ]( std::size_t i, std::size_t used ) {
        if ( i == k )
        {
            out.push_back( rgs );
            return;
        }
        for ( std::size_t c = 0; c <= used && c < k; ++c )
        {
            rgs[ i ] = c;
            go( i + 1, std::max( used, c + 1 ) );
        }
    };
    if ( k == 0 )
        return { {} };
    go( 0, 0 );
    return out;
}

// Cells of a block partition as block bitmasks.
std::vector< std::uint64_t > cell_masks( const std::vector< std::size_t >& rgs )
{
    std::vector< std::uint64_t > cells;
    for ( std::size_t b = 0; b < rgs.size(); ++b )
    {
        if ( rgs[ b ] >= cells.size() )
            cells.resize( rgs[ b ] + 1, 0 );
        cells[ rgs[ b ] ] |= std::uint64_t{ 1 } << b;
    }
    return cells;
}

bool independent( const std::vector< std::vector< std::uint64_t > >& per_agent )
{
    std::function< bool( std::size_t, std::uint64_t ) > go = [ & ]( std::size_t j, std::uint64_t common ) {
        if ( common == 0 )
            return false;
        if ( j == per_agent.size() )
            return true;
        for ( std::uint64_t cell : per_agent[ j ] )
            if ( !go( j + 1, common & cell ) )
                return false;
        return true;
    };
    return go( 0, ~std::uint64_t{ 0 } );
}

// Choice at one moment: one block partition per agent.
using moment_choice = std::vector< std::vector< std::size_t > >;

std::vector< moment_choice > moment_choices( std::size_t blocks, std::size_t agents )
{
    const auto parts = set_partitions( blocks );
    std::vector< moment_choice > out;
    moment_choice current( agents );
    std::function< void( std::size_t ) > go = [ & ]( std::size_t j ) {
        if ( j == agents )
        {
            std::vector< std::vector< std::uint64_t > > masks;
            for ( const auto& p : current )
                masks.push_back( cell_masks( p ) );
            if ( independent( masks ) )
                out.push_back( current );
            return;
        }
        for ( const auto& p : parts )
        {
            current[ j ] = p;
            go( j + 1 );
        }
    };
    go( 0 );
    return out;
}

// Act patterns for one term: point bitmasks satisfying expansion, no new
// proofs, divide (built in: one bit per block) and transparency over re.
bool act_pattern_ok( const tree_frame& f, const relation& re, std::uint64_t pts )
{
    auto at = [ & ]( MomentId m, HistoryId h ) { return ( pts >> f.point_ix[ m ][ h ] & 1 ) != 0; };
    std::vector< char > settled( f.n, 1 );
    for ( MomentId m = 0; m < f.n; ++m )
        for ( HistoryId h : f.through[ m ] )
            settled[ m ] = settled[ m ] && at( m, h );
    for ( MomentId m = 0; m < f.n; ++m )
    {
        if ( m != 0 )
            for ( HistoryId h : f.through[ m ] )
                if ( at( f.parent[ m ], h ) && !at( m, h ) )
                    return false;
        if ( settled[ m ] )
        {
            if ( m == 0 )
                return false;
            bool earlier = false;
            for ( HistoryId h : f.through[ m ] )
                earlier = earlier || at( f.parent[ m ], h );
            if ( !earlier )
                return false;
        }
    }
    for ( MomentId a = 0; a < f.n; ++a )
        for ( MomentId b = 0; b < f.n; ++b )
            if ( re[ a ][ b ] && settled[ a ] && !settled[ b ] )
                return false;
    return true;
}

std::uint64_t pattern_from_blocks( const tree_frame& f, std::uint64_t block_bits )
{
    std::uint64_t pts = 0;
    std::size_t v = 0;
    for ( MomentId m = 0; m < f.n; ++m )
    {
        for ( std::size_t b = 0; b < f.blocks[ m ].size(); ++b, ++v )
            if ( block_bits >> v & 1 )
                for ( HistoryId h : f.blocks[ m ][ b ] )
                    pts |= std::uint64_t{ 1 } << f.point_ix[ m ][ h ];
    }
    return pts;
}

std::size_t block_count( const tree_frame& f )
{
    std::size_t v = 0;
    for ( const auto& b : f.blocks )
        v += b.size();
    return v;
}

std::vector< std::uint64_t > act_patterns( const tree_frame& f, const relation& re )
{
    const std::size_t v = block_count( f );
    if ( v > 24 )
        throw std::invalid_argument( "too many moments for exhaustive enumeration of Act" );
    std::vector< std::uint64_t > out;
    for ( std::uint64_t bits = 0; bits < ( std::uint64_t{ 1 } << v ); ++bits )
    {
        auto pts = pattern_from_blocks( f, bits );
        if ( act_pattern_ok( f, re, pts ) )
            out.push_back( pts );
    }
    return out;
}

// Base evidence for one term: per moment a subset of `allowed` (bitmask over
// the evidence formulas), monotone along re.
using evidence_assignment = std::vector< std::uint64_t >;

std::vector< evidence_assignment > evidence_assignments( const relation& re, std::uint64_t allowed )
{
    const std::size_t n = re.size();
    std::vector< evidence_assignment > out;
    evidence_assignment cur( n, 0 );
    std::function< void( std::size_t ) > go = [ & ]( std::size_t m ) {
        if ( m == n )
        {
            out.push_back( cur );
            return;
        }
        // Ascending submasks of `allowed`.
        std::uint64_t s = 0;
        while ( true )
        {
            bool ok = true;
            for ( std::size_t k = 0; k < m && ok; ++k )
            {
                if ( re[ k ][ m ] && ( cur[ k ] & ~s ) != 0 )
                    ok = false;
                if ( re[ m ][ k ] && ( s & ~cur[ k ] ) != 0 )
                    ok = false;
            }
            if ( ok )
            {
                cur[ m ] = s;
                go( m + 1 );
            }
            if ( s == allowed )
                break;
            s = ( s - allowed ) & allowed;
        }
    };
    go( 0 );
    return out;
}

// --- evidence closure over the shared universe ---------------------------------------------

struct closure_rules
{
    struct app_rule
    {
        std::size_t u, s, t;
    };
    struct sum_rule
    {
        std::size_t u, s, t;
    };
    struct check_rule
    {
        std::size_t u, t;
        std::vector< std::pair< std::size_t, std::size_t > > lift;  // A -> t:A, both universe indices
    };
    struct implication
    {
        std::size_t f, a, b;
    };

    std::vector< app_rule > apps;
    std::vector< sum_rule > sums;
    std::vector< check_rule > checks;
    std::vector< implication > implications;

    explicit closure_rules( const UniverseIndex& u )
    {
        for ( std::size_t f = 0; f < u.formulas().size(); ++f )
        {
            const Formula& x = u.formulas()[ f ];
            if ( x.is( Formula::kind::implication ) )
                implications.push_back( { f, *u.formula_index( x.left() ), *u.formula_index( x.right() ) } );
        }
        for ( std::size_t i = 0; i < u.terms().size(); ++i )
        {
            const Term& t = u.terms()[ i ];
            switch ( t.type() )
            {
            case Term::kind::app:
                apps.push_back( { i, *u.term_index( t.left() ), *u.term_index( t.right() ) } );
                break;
            case Term::kind::sum:
                sums.push_back( { i, *u.term_index( t.left() ), *u.term_index( t.right() ) } );
                break;
            case Term::kind::check: {
                check_rule c{ i, *u.term_index( t.inner() ), {} };
                for ( std::size_t f = 0; f < u.formulas().size(); ++f )
                    if ( auto g = u.formula_index( Formula::proves( t.inner(), u.formulas()[ f ] ) ) )
                        c.lift.emplace_back( f, *g );
                checks.push_back( std::move( c ) );
                break;
            }
            default:
                break;
            }
        }
    }

    bool empty() const { return apps.empty() && sums.empty() && checks.empty(); }

    // Least fixpoint of the closure rules on one moment's rows.
    void close( std::vector< Bits >& rows ) const
    {
        bool changed = true;
        while ( changed )
        {
            changed = false;
            auto set = [ & ]( std::size_t t, std::size_t f ) {
                if ( !rows[ t ][ f ] )
                {
                    rows[ t ].set( f );
                    changed = true;
                }
            };
            for ( const auto& r : apps )
                for ( const auto& imp : implications )
                    if ( rows[ r.s ][ imp.f ] && rows[ r.t ][ imp.a ] )
                        set( r.u, imp.b );
            for ( const auto& r : sums )
            {
                Bits joined = rows[ r.s ] | rows[ r.t ];
                if ( !joined.is_subset_of( rows[ r.u ] ) )
                {
                    rows[ r.u ] |= joined;
                    changed = true;
                }
            }
            for ( const auto& r : checks )
                for ( auto [ a, g ] : r.lift )
                    if ( rows[ r.t ][ a ] )
                        set( r.u, g );
        }
    }
};

// --- the enumeration proper ------------------------------------------------------------------

struct context
{
    const SearchBounds& b;
    std::shared_ptr< const UniverseIndex > universe;
    closure_rules rules;
    std::vector< std::size_t > term_ix;      // bound term -> universe index
    std::vector< std::size_t > pool_ix;      // evidence formula -> universe index
    std::vector< std::uint64_t > allowed;    // per bound term: pool entries not already granted by CS
    std::vector< std::vector< Bits > > cs_rows_template;

    context( const SearchBounds& bounds, std::shared_ptr< const UniverseIndex > u )
        : b{ bounds }, universe{ std::move( u ) }, rules{ *universe }
    {
        for ( const auto& t : b.terms )
            term_ix.push_back( *universe->term_index( t ) );
        for ( const auto& f : b.evidence_formulas )
            pool_ix.push_back( *universe->formula_index( f ) );
        if ( pool_ix.size() > 63 )
            throw std::invalid_argument( "too many evidence formulas" );
        for ( std::size_t t : term_ix )
        {
            std::uint64_t a = 0;
            for ( std::size_t k = 0; k < pool_ix.size(); ++k )
                if ( !universe->cs_admitted( t )[ pool_ix[ k ] ] )
                    a |= std::uint64_t{ 1 } << k;
            allowed.push_back( a );
        }
    }
};

std::vector< Term > dedup_terms( std::vector< Term > ts )
{
    std::vector< Term > out;
    for ( auto& t : ts )
        if ( std::find( out.begin(), out.end(), t ) == out.end() )
            out.push_back( std::move( t ) );
    return out;
}

std::shared_ptr< const UniverseIndex > search_universe( const SearchBounds& b )
{
    std::vector< Formula > seeds = b.evidence_formulas;
    seeds.insert( seeds.end(), b.universe_formulas.begin(), b.universe_formulas.end() );
    for ( const auto& a : b.atoms )
        seeds.push_back( Formula::atom( a ) );
    return std::make_shared< const UniverseIndex >( closure_universe( seeds, b.terms ), b.flags );
}

// Static part of a model description for one frame.
ModelDescription frame_description( const context& cx, const tree_frame& f,
                                    const std::vector< moment_choice >& choice, const relation& r,
                                    const relation& re )
{
    ModelDescription d;
    d.agents = cx.b.agents.names();
    d.moments = f.names;
    for ( std::size_t i = 1; i < f.n; ++i )
        d.cover.emplace_back( f.names[ f.parent[ i ] ], f.names[ i ] );
    auto edges = [ & ]( const relation& rel ) {
        std::vector< NamePair > out;
        for ( std::size_t a = 0; a < f.n; ++a )
            for ( std::size_t c = 0; c < f.n; ++c )
                if ( a != c && rel[ a ][ c ] )
                    out.emplace_back( f.names[ a ], f.names[ c ] );
        return out;
    };
    d.r = edges( r );
    if ( re != r )
        d.re = edges( re );
    for ( MomentId m = 0; m < f.n; ++m )
        for ( std::size_t j = 0; j < choice[ m ].size(); ++j )
        {
            const auto& rgs = choice[ m ][ j ];
            auto cells_count = rgs.empty() ? 0 : *std::max_element( rgs.begin(), rgs.end() ) + 1;
            if ( cells_count <= 1 )
                continue;
            std::vector< std::vector< std::string > > cells( cells_count );
            for ( std::size_t blk = 0; blk < rgs.size(); ++blk )
                for ( HistoryId h : f.blocks[ m ][ blk ] )
                    cells[ rgs[ blk ] ].push_back( f.history_names[ h ] );
            d.choice[ f.names[ m ] ][ cx.b.agents.names()[ j ] ] = std::move( cells );
        }
    d.flags = cx.b.flags;
    d.flags.unirelational = re == r;
    return d;
}

struct enumeration
{
    const context& cx;
    const std::function< bool( const JstitModel&, std::size_t ) >& visit;
    EnumerationStats stats;
    std::size_t tree_index = 0;

    // Returns false to stop.
    bool frame( const tree_frame& f, const std::vector< moment_choice >& choice, const relation& r,
                const relation& re )
    {
        ++stats.frames;
        const auto& b = cx.b;
        const ModelDescription base = frame_description( cx, f, choice, r, re );
        const auto patterns = act_patterns( f, re );

        std::map< std::uint64_t, std::vector< evidence_assignment > > by_allowed;
        for ( auto a : cx.allowed )
            if ( !by_allowed.contains( a ) )
                by_allowed.emplace( a, evidence_assignments( re, a ) );

        const std::size_t terms = b.terms.size();
        const std::size_t np = f.points.size();
        const std::uint64_t val_end = np >= 64 ? 0 : std::uint64_t{ 1 } << np;

        std::vector< std::size_t > act_pick( terms, 0 );
        std::vector< std::size_t > ev_pick( terms, 0 );
        std::vector< std::uint64_t > val( b.atoms.size(), 0 );

        const auto& u = *cx.universe;
        const std::size_t ut = u.terms().size();
        const std::size_t uf = u.formulas().size();

        auto next = []( std::vector< std::size_t >& pick, auto size_of ) {
            for ( std::size_t i = pick.size(); i-- > 0; )
            {
                if ( ++pick[ i ] < size_of( i ) )
                    return true;
                pick[ i ] = 0;
            }
            return false;
        };

        do  // act
        {
            ModelDescription with_act = base;
            for ( std::size_t t = 0; t < terms; ++t )
            {
                const std::uint64_t pts = patterns[ act_pick[ t ] ];
                for ( std::size_t p = 0; p < np; ++p )
                    if ( pts >> p & 1 )
                        with_act.act[ f.names[ f.points[ p ].first ] ][ f.history_names[ f.points[ p ].second ] ]
                            .push_back( b.terms[ t ] );
            }
            std::fill( ev_pick.begin(), ev_pick.end(), 0 );
            do  // evidence
            {
                // Rows per moment: CS grants plus the chosen base, then closed.
                std::vector< std::vector< Bits > > rows( f.n, std::vector< Bits >( ut, Bits( uf ) ) );
                for ( MomentId m = 0; m < f.n; ++m )
                    for ( std::size_t t = 0; t < ut; ++t )
                        rows[ m ][ t ] = u.cs_admitted( t );
                for ( std::size_t t = 0; t < terms; ++t )
                {
                    const auto& ea = by_allowed.at( cx.allowed[ t ] )[ ev_pick[ t ] ];
                    for ( MomentId m = 0; m < f.n; ++m )
                        for ( std::size_t k = 0; k < cx.pool_ix.size(); ++k )
                            if ( ea[ m ] >> k & 1 )
                                rows[ m ][ cx.term_ix[ t ] ].set( cx.pool_ix[ k ] );
                }
                bool canonical = true;
                if ( !cx.rules.empty() )
                    for ( MomentId m = 0; m < f.n && canonical; ++m )
                    {
                        cx.rules.close( rows[ m ] );
                        // Base coordinates must not grow, else another base yields this model.
                        for ( std::size_t t = 0; t < terms && canonical; ++t )
                        {
                            const auto& ea = by_allowed.at( cx.allowed[ t ] )[ ev_pick[ t ] ];
                            for ( std::size_t k = 0; k < cx.pool_ix.size() && canonical; ++k )
                                if ( ( cx.allowed[ t ] >> k & 1 ) && !( ea[ m ] >> k & 1 ) &&
                                     rows[ m ][ cx.term_ix[ t ] ][ cx.pool_ix[ k ] ] )
                                    canonical = false;
                        }
                    }
                if ( !canonical )
                    continue;
                ModelDescription with_ev = with_act;
                for ( MomentId m = 0; m < f.n; ++m )
                    for ( std::size_t t = 0; t < ut; ++t )
                    {
                        Bits own = rows[ m ][ t ] - u.cs_admitted( t );
                        for ( auto i = own.find_first(); i != Bits::npos; i = own.find_next( i ) )
                            with_ev.evidence.push_back( { f.names[ m ], u.terms()[ t ], u.formulas()[ i ] } );
                    }
                std::fill( val.begin(), val.end(), 0 );
                while ( true )  // valuation
                {
                    ModelDescription d = with_ev;
                    for ( std::size_t a = 0; a < b.atoms.size(); ++a )
                    {
                        auto& list = d.valuation[ b.atoms[ a ] ];
                        for ( std::size_t p = 0; p < np; ++p )
                            if ( val[ a ] >> p & 1 )
                                list.emplace_back( f.names[ f.points[ p ].first ],
                                                   f.history_names[ f.points[ p ].second ] );
                    }
                    ++stats.models;
                    if ( !visit( JstitModel::build( std::move( d ), cx.universe ), tree_index ) )
                    {
                        stats.stopped = true;
                        return false;
                    }
                    std::size_t a = b.atoms.size();
                    while ( a-- > 0 )
                    {
                        if ( ++val[ a ] != val_end )
                            break;
                        val[ a ] = 0;
                    }
                    if ( a == std::numeric_limits< std::size_t >::max() )
                        break;
                }
            } while ( next( ev_pick, [ & ]( std::size_t t ) { return by_allowed.at( cx.allowed[ t ] ).size(); } ) );
        } while ( next( act_pick, [ & ]( std::size_t ) { return patterns.size(); } ) );
        return true;
    }

    bool tree( const tree_frame& f )
    {
        ++stats.trees;
        const std::size_t agents = cx.b.agents.size();
        std::vector< std::vector< moment_choice > > per_moment;
        for ( MomentId m = 0; m < f.n; ++m )
            per_moment.push_back( moment_choices( f.blocks[ m ].size(), agents ) );
        const auto rs = preorders_above( f.le );

        std::vector< std::size_t > pick( f.n, 0 );
        while ( true )
        {
            std::vector< moment_choice > choice;
            for ( MomentId m = 0; m < f.n; ++m )
                choice.push_back( per_moment[ m ][ pick[ m ] ] );
            for ( const auto& r : rs )
            {
                if ( cx.b.vary_re )
                {
                    for ( const auto& re : preorders_above( r ) )
                        if ( !frame( f, choice, r, re ) )
                            return false;
                }
                else if ( !frame( f, choice, r, r ) )
                {
                    return false;
                }
            }
            std::size_t m = f.n;
            while ( m-- > 0 )
            {
                if ( ++pick[ m ] < per_moment[ m ].size() )
                    break;
                pick[ m ] = 0;
            }
            if ( m == std::numeric_limits< std::size_t >::max() )
                return true;
        }
    }
};

EnumerationStats enumerate_impl( const SearchBounds& b,
                                 const std::function< bool( const JstitModel&, std::size_t ) >& visit, Shard shard,
                                 const std::function< bool( std::size_t ) >& keep_going )
{
    if ( b.max_moments == 0 )
        throw std::invalid_argument( "max_moments must be at least 1" );
    if ( shard.count == 0 || shard.index >= shard.count )
        throw std::invalid_argument( "invalid shard" );
    context cx( b, search_universe( b ) );
    enumeration e{ cx, visit, {}, 0 };
    std::size_t index = 0;
    for ( std::size_t n = std::max< std::size_t >( b.min_moments, 1 ); n <= b.max_moments; ++n )
        for ( const auto& code : rooted_tree_codes( n ) )
        {
            const std::size_t mine = index++;
            if ( mine % shard.count != shard.index )
                continue;
            if ( keep_going && !keep_going( mine ) )
                return e.stats;
            e.tree_index = mine;
            if ( !e.tree( make_frame( parents_from_code( code ) ) ) )
                return e.stats;
        }
    return e.stats;
}

// --- random generation -----------------------------------------------------------------------

std::size_t draw( std::mt19937_64& rng, std::size_t n ) { return n == 0 ? 0 : static_cast< std::size_t >( rng() % n ); }
bool coin( std::mt19937_64& rng, unsigned percent ) { return rng() % 100 < percent; }

void collect( const Formula& f, SearchBounds& b, std::set< std::string >& agents )
{
    using K = Formula::kind;
    auto add_term = [ & ]( const Term& t ) {
        if ( std::find( b.terms.begin(), b.terms.end(), t ) == b.terms.end() )
            b.terms.push_back( t );
    };
    auto add_pool = [ & ]( const Formula& a ) {
        if ( std::find( b.evidence_formulas.begin(), b.evidence_formulas.end(), a ) == b.evidence_formulas.end() )
            b.evidence_formulas.push_back( a );
    };
    switch ( f.type() )
    {
    case K::atom:
        if ( std::find( b.atoms.begin(), b.atoms.end(), f.name() ) == b.atoms.end() )
            b.atoms.push_back( f.name() );
        return;
    case K::falsum:
        return;
    case K::presented:
        add_term( f.term() );
        return;
    case K::proves:
    case K::proven:
    case K::prove:
        if ( f.is( K::prove ) )
            agents.insert( f.agent() );
        add_term( f.term() );
        add_pool( f.body() );
        collect( f.body(), b, agents );
        return;
    case K::stit:
        agents.insert( f.agent() );
        collect( f.body(), b, agents );
        return;
    case K::negation:
    case K::box:
    case K::diamond:
    case K::know:
        collect( f.body(), b, agents );
        return;
    case K::conjunction:
    case K::disjunction:
    case K::implication:
        collect( f.left(), b, agents );
        collect( f.right(), b, agents );
        return;
    }
}

std::optional< Witness > first_witness( const Formula& f, const SearchBounds& bounds, std::size_t jobs )
{
    const SearchBounds b = bounds_for( f, bounds );

    if ( const auto* r = std::get_if< SearchBounds::randomized_mode >( &b.mode ) )
    {
        std::mt19937_64 rng( r->seed );
        for ( std::size_t i = 0; i < r->samples; ++i )
        {
            JstitModel m = random_model( b, rng );
            Evaluator e( m );
            const Bits& s = e.truth_set( f );
            if ( auto p = s.find_first(); p != Bits::npos )
            {
                const EvalPoint at = m.points()[ p ];
                return Witness{ std::move( m ), at };
            }
        }
        return std::nullopt;
    }

    jobs = std::max< std::size_t >( jobs, 1 );
    std::vector< std::optional< std::pair< std::size_t, Witness > > > found( jobs );
    std::atomic< std::size_t > best{ std::numeric_limits< std::size_t >::max() };

    auto run = [ & ]( std::size_t s ) {
        auto visit = [ & ]( const JstitModel& m, std::size_t tree ) {
            Evaluator e( m );
            const Bits& set = e.truth_set( f );
            auto p = set.find_first();
            if ( p == Bits::npos )
                return true;
            found[ s ].emplace( tree, Witness{ m, m.points()[ p ] } );
            std::size_t cur = best.load();
            while ( tree < cur && !best.compare_exchange_weak( cur, tree ) )
            {
            }
            return false;
        };
        auto keep_going = [ & ]( std::size_t tree ) { return tree < best.load(); };
        enumerate_impl( b, visit, { s, jobs }, keep_going );
    };

    if ( jobs == 1 )
    {
        run( 0 );
    }
    else
    {
        std::vector< std::thread > threads;
        for ( std::size_t s = 0; s < jobs; ++s )
            threads.emplace_back( run, s );
        for ( auto& t : threads )
            t.join();
    }

    std::optional< Witness > out;
    std::size_t best_tree = std::numeric_limits< std::size_t >::max();
    for ( auto& w : found )
        if ( w && w->first < best_tree )
        {
            best_tree = w->first;
            out.emplace( std::move( w->second ) );
        }
    return out;
}

} // namespace

std::vector< std::string > rooted_tree_codes( std::size_t n )
{
    if ( n == 0 )
        return {};
    std::set< std::string > level{ "()" };
    for ( std::size_t k = 2; k <= n; ++k )
    {
        std::set< std::string > next;
        for ( const auto& code : level )
        {
            std::size_t pos = 0;
            code_node root = parse_code( code, pos );
            grow( root, root, next );
        }
        level = std::move( next );
    }
    return { level.begin(), level.end() };
}

SearchBounds bounds_for( const Formula& f, SearchBounds b )
{
    std::set< std::string > agents;
    collect( f, b, agents );
    if ( std::find( b.universe_formulas.begin(), b.universe_formulas.end(), f ) == b.universe_formulas.end() )
        b.universe_formulas.push_back( f );
    b.terms = dedup_terms( std::move( b.terms ) );
    std::vector< std::string > names = b.agents.names();
    for ( const auto& a : agents )
        if ( !b.agents.contains( a ) )
            names.push_back( a );
    b.agents = AgentSet( names );
    return b;
}

EnumerationStats enumerate_models( const SearchBounds& b, const ModelVisitor& visit, Shard shard )
{
    std::function< bool( const JstitModel&, std::size_t ) > v = [ & ]( const JstitModel& m, std::size_t ) {
        return visit( m );
    };
    return enumerate_impl( b, v, shard, {} );
}

std::optional< Witness > find_model( const Formula& f, const SearchBounds& b, std::size_t jobs )
{
    return first_witness( f, b, jobs );
}

std::optional< Witness > find_countermodel( const Formula& f, const SearchBounds& b, std::size_t jobs )
{
    return first_witness( Formula::negation( f ), bounds_for( f, b ), jobs );
}

JstitModel random_model( const SearchBounds& b, std::mt19937_64& rng )
{
    if ( b.max_moments == 0 || b.min_moments > b.max_moments )
        throw std::invalid_argument( "invalid moment bounds" );
    const std::size_t lo = std::max< std::size_t >( b.min_moments, 1 );
    context cx( b, search_universe( b ) );
    const auto& u = *cx.universe;

    for ( std::size_t attempt = 0; attempt < b.attempt_budget; ++attempt )
    {
        // Random recursive tree, already breadth-first compatible after relabelling.
        const std::size_t n = lo + draw( rng, b.max_moments - lo + 1 );
        std::vector< std::size_t > raw( n, npos );
        for ( std::size_t i = 1; i < n; ++i )
            raw[ i ] = draw( rng, i );
        std::vector< std::vector< std::size_t > > kids( n );
        for ( std::size_t i = 1; i < n; ++i )
            kids[ raw[ i ] ].push_back( i );
        std::vector< std::size_t > order{ 0 }, label( n, 0 );
        for ( std::size_t i = 0; i < order.size(); ++i )
            for ( auto c : kids[ order[ i ] ] )
                order.push_back( c );
        for ( std::size_t i = 0; i < n; ++i )
            label[ order[ i ] ] = i;
        std::vector< std::size_t > parent( n, npos );
        for ( std::size_t i = 1; i < n; ++i )
            parent[ label[ i ] ] = label[ raw[ i ] ];
        const tree_frame f = make_frame( parent );

        std::vector< moment_choice > choice;
        bool ok = true;
        for ( MomentId m = 0; m < f.n && ok; ++m )
        {
            moment_choice mc;
            std::vector< std::vector< std::uint64_t > > masks;
            for ( std::size_t j = 0; j < b.agents.size(); ++j )
            {
                const std::size_t k = f.blocks[ m ].size();
                std::vector< std::size_t > raw_cells( k ), rgs( k );
                for ( auto& c : raw_cells )
                    c = draw( rng, k );
                std::map< std::size_t, std::size_t > rename;
                for ( std::size_t i = 0; i < k; ++i )
                    rgs[ i ] = rename.try_emplace( raw_cells[ i ], rename.size() ).first->second;
                masks.push_back( cell_masks( rgs ) );
                mc.push_back( std::move( rgs ) );
            }
            ok = independent( masks );
            choice.push_back( std::move( mc ) );
        }
        if ( !ok )
            continue;

        relation r = f.le;
        for ( std::size_t a = 0; a < n; ++a )
            for ( std::size_t c = 0; c < n; ++c )
                if ( !r[ a ][ c ] && coin( rng, 20 ) )
                    r[ a ][ c ] = 1;
        r = close( r );
        relation re = r;
        if ( b.vary_re && coin( rng, 50 ) )
        {
            for ( std::size_t a = 0; a < n; ++a )
                for ( std::size_t c = 0; c < n; ++c )
                    if ( !re[ a ][ c ] && coin( rng, 20 ) )
                        re[ a ][ c ] = 1;
            re = close( re );
        }

        ModelDescription d = frame_description( cx, f, choice, r, re );

        // Act: a uniformly drawn valid pattern per term when the pattern space
        // is small enough to list, rejection sampling otherwise.
        const std::size_t v = block_count( f );
        std::vector< std::uint64_t > patterns;
        if ( v <= 16 )
            patterns = act_patterns( f, re );
        for ( const auto& t : b.terms )
        {
            std::uint64_t pts = 0;
            if ( !patterns.empty() )
            {
                pts = patterns[ draw( rng, patterns.size() ) ];
            }
            else
            {
                for ( std::size_t k = 0; k < 64; ++k )
                {
                    auto cand = pattern_from_blocks( f, rng() & ( ( std::uint64_t{ 1 } << v ) - 1 ) );
                    if ( act_pattern_ok( f, re, cand ) )
                    {
                        pts = cand;
                        break;
                    }
                }
            }
            for ( std::size_t p = 0; p < f.points.size(); ++p )
                if ( pts >> p & 1 )
                    d.act[ f.names[ f.points[ p ].first ] ][ f.history_names[ f.points[ p ].second ] ].push_back( t );
        }

        // Evidence: random base sets closed upward along re, then the closure rules.
        std::vector< std::vector< Bits > > rows( n, std::vector< Bits >( u.terms().size(), Bits( u.formulas().size() ) ) );
        for ( MomentId m = 0; m < n; ++m )
            for ( std::size_t t = 0; t < u.terms().size(); ++t )
                rows[ m ][ t ] = u.cs_admitted( t );
        for ( std::size_t t = 0; t < b.terms.size(); ++t )
            for ( std::size_t k = 0; k < cx.pool_ix.size(); ++k )
            {
                if ( !( cx.allowed[ t ] >> k & 1 ) )
                    continue;
                for ( MomentId m = 0; m < n; ++m )
                    if ( coin( rng, 30 ) )
                        for ( MomentId m2 = 0; m2 < n; ++m2 )
                            if ( re[ m ][ m2 ] )
                                rows[ m2 ][ cx.term_ix[ t ] ].set( cx.pool_ix[ k ] );
            }
        for ( MomentId m = 0; m < n; ++m )
        {
            cx.rules.close( rows[ m ] );
            for ( std::size_t t = 0; t < u.terms().size(); ++t )
            {
                Bits own = rows[ m ][ t ] - u.cs_admitted( t );
                for ( auto i = own.find_first(); i != Bits::npos; i = own.find_next( i ) )
                    d.evidence.push_back( { f.names[ m ], u.terms()[ t ], u.formulas()[ i ] } );
            }
        }

        for ( const auto& atom : b.atoms )
        {
            auto& list = d.valuation[ atom ];
            for ( const auto& [ m, h ] : f.points )
                if ( coin( rng, 50 ) )
                    list.emplace_back( f.names[ m ], f.history_names[ h ] );
        }

        JstitModel model = JstitModel::build( std::move( d ), cx.universe );
        if ( is_valid_model( model ) )
            return model;
    }
    throw search_exhausted( "no valid model found within " + std::to_string( b.attempt_budget ) + " attempts" );
}

JstitModel random_model( const SearchBounds& b, std::uint64_t seed )
{
    std::mt19937_64 rng( seed );
    return random_model( b, rng );
}

} // namespace jastit
