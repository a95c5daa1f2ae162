#include "jastit/model_io.hpp"
#include "jastit/parser.hpp"
#include "jastit/printer.hpp"
#include "jastit/search.hpp"
#include "jastit/semantics.hpp"
#include "jastit/validate.hpp"

#include <gtest/gtest.h>

#include <set>

namespace jastit
{
namespace
{

SearchBounds small_bounds( std::size_t moments )
{
    SearchBounds b;
    b.max_moments = moments;
    b.terms = { Term::variable( "x" ) };
    b.atoms = { "p" };
    b.evidence_formulas = { parse_formula( "p" ) };
    return b;
}

std::size_t count_models( const SearchBounds& b )
{
    return enumerate_models( b, []( const JstitModel& ) { return true; } ).models;
}

TEST( Search, RootedTreeCounts )
{
    const std::vector< std::size_t > expected{ 1, 1, 2, 4, 9, 20 };
    for ( std::size_t n = 1; n <= expected.size(); ++n )
        EXPECT_EQ( rooted_tree_codes( n ).size(), expected[ n - 1 ] ) << n;
}

TEST( Search, OneMoment )
{
    // Act at a lone root is empty; x:p and p are free.
    EXPECT_EQ( count_models( small_bounds( 1 ) ), 4u );
}

TEST( Search, TwoMomentsOnlyChain )
{
    // Chain m0 < m1. R is the order or its symmetric closure. With R = order
    // the base evidence is one of {}, {m1}, {m0, m1}; with the symmetric one
    // {} or both. Four valuations each.
    auto b = small_bounds( 2 );
    b.min_moments = 2;
    std::size_t n = 0;
    enumerate_models( b, [ & ]( const JstitModel& m ) {
        EXPECT_EQ( m.moment_count(), 2u );
        EXPECT_EQ( m.histories().size(), 1u );
        ++n;
        return true;
    } );
    EXPECT_EQ( n, 20u );
}

TEST( Search, PinnedCounts )
{
    EXPECT_EQ( count_models( small_bounds( 3 ) ), 4u + 20u + 1632u );
}

TEST( Search, EnumeratedModelsAreClean )
{
    auto b = small_bounds( 3 );
    b.vary_re = true;
    b.agents = AgentSet{ { "j1", "j2" } };
    std::size_t n = 0;
    enumerate_models( b, [ & ]( const JstitModel& m ) {
        ++n;
        const auto r = validate( m );
        EXPECT_TRUE( r.clean() ) << write_model( m );
        return r.clean();
    } );
    EXPECT_GT( n, 0u );
}

TEST( Search, StopsWhenVisitorSaysSo )
{
    std::size_t n = 0;
    const auto stats = enumerate_models( small_bounds( 3 ), [ & ]( const JstitModel& ) { return ++n < 5; } );
    EXPECT_TRUE( stats.stopped );
    EXPECT_EQ( n, 5u );
}

TEST( Search, ShardsPartitionTheEnumeration )
{
    const auto b = small_bounds( 4 );
    std::size_t total = 0;
    for ( std::size_t i = 0; i < 3; ++i )
        total += enumerate_models( b, []( const JstitModel& ) { return true; }, { i, 3 } ).models;
    EXPECT_EQ( total, count_models( b ) );
}

// Semantic fingerprint of a model over the bound vocabulary, independent of
// how its description spells things.
std::string fingerprint( const JstitModel& m )
{
    std::string s;
    const std::size_t n = m.moment_count();
    for ( MomentId a = 0; a < n; ++a )
        for ( MomentId b = 0; b < n; ++b )
            s += std::string{ m.r( a, b ) ? '1' : '0', m.re( a, b ) ? '1' : '0' };
    s += '|';
    for ( MomentId x = 0; x < n; ++x )
    {
        std::set< std::vector< HistoryId > > cells( m.choice( x, 0 ).begin(), m.choice( x, 0 ).end() );
        s += std::to_string( cells.size() );
    }
    s += '|';
    const Term x = Term::variable( "x" );
    for ( const EvalPoint& p : m.points() )
        s += m.act_contains( p, x ) ? '1' : '0';
    s += '|';
    for ( MomentId a = 0; a < n; ++a )
        s += m.evidence_holds( a, x, parse_formula( "p" ) ) ? '1' : '0';
    s += '|';
    const Bits* v = m.valuation( "p" );
    for ( std::size_t k = 0; k < m.points().size(); ++k )
        s += v && ( *v )[ k ] ? '1' : '0';
    return s;
}

using pair_list = std::vector< NamePair >;

// All transitive relations containing `base`, as pair lists over names.
std::vector< pair_list > transitive_supersets( const std::vector< std::string >& names, const pair_list& base )
{
    pair_list free;
    for ( const auto& a : names )
        for ( const auto& b : names )
            if ( a != b && std::ranges::find( base, NamePair{ a, b } ) == base.end() )
                free.emplace_back( a, b );
    std::vector< pair_list > out;
    for ( std::size_t mask = 0; mask < ( std::size_t{ 1 } << free.size() ); ++mask )
    {
        pair_list rel = base;
        for ( std::size_t i = 0; i < free.size(); ++i )
            if ( mask >> i & 1 )
                rel.push_back( free[ i ] );
        auto has = [ & ]( const std::string& a, const std::string& b ) {
            return a == b || std::ranges::find( rel, NamePair{ a, b } ) != rel.end();
        };
        bool ok = true;
        for ( const auto& a : names )
            for ( const auto& b : names )
                for ( const auto& c : names )
                    ok = ok && !( has( a, b ) && has( b, c ) && !has( a, c ) );
        if ( ok )
            out.push_back( rel );
    }
    return out;
}

// Every labelled model on a fixed three-moment tree, filtered by the validator.
std::set< std::string > brute_force( const pair_list& cover, const pair_list& order, bool vary_re )
{
    const std::vector< std::string > names{ "m0", "m1", "m2" };
    std::set< std::string > out;
    const bool fork = cover.size() == 2 && cover[ 0 ].first == cover[ 1 ].first;
    const std::vector< NamePair > points =
        fork ? std::vector< NamePair >{ { "m0", "m1" }, { "m0", "m2" }, { "m1", "m1" }, { "m2", "m2" } }
             : std::vector< NamePair >{ { "m0", "m2" }, { "m1", "m2" }, { "m2", "m2" } };
    const std::size_t np = points.size();
    for ( const auto& r : transitive_supersets( names, order ) )
        for ( const auto& re : vary_re ? transitive_supersets( names, r ) : std::vector< pair_list >{ r } )
            for ( int split = 0; split < ( fork ? 2 : 1 ); ++split )
                for ( std::size_t act = 0; act < ( std::size_t{ 1 } << np ); ++act )
                    for ( std::size_t ev = 0; ev < 8; ++ev )
                        for ( std::size_t val = 0; val < ( std::size_t{ 1 } << np ); ++val )
                        {
                            ModelDescription d;
                            d.agents = { "j1" };
                            d.moments = names;
                            d.cover = cover;
                            d.r = r;
                            d.re = re;
                            d.flags.unirelational = false;
                            if ( split )
                                d.choice[ "m0" ][ "j1" ] = { { "m1" }, { "m2" } };
                            for ( std::size_t k = 0; k < np; ++k )
                            {
                                if ( act >> k & 1 )
                                    d.act[ points[ k ].first ][ points[ k ].second ] = { Term::variable( "x" ) };
                                if ( val >> k & 1 )
                                    d.valuation[ "p" ].push_back( points[ k ] );
                            }
                            for ( std::size_t k = 0; k < 3; ++k )
                                if ( ev >> k & 1 )
                                    d.evidence.push_back( { names[ k ], Term::variable( "x" ), parse_formula( "p" ) } );
                            const auto m = JstitModel::build( d );
                            if ( is_valid_model( m ) )
                                out.insert( fingerprint( m ) );
                        }
    return out;
}

void compare_with_brute_force( bool vary_re )
{
    auto b = small_bounds( 3 );
    b.min_moments = 3;
    b.vary_re = vary_re;
    std::set< std::string > chain, fork;
    std::size_t visited = 0;
    enumerate_models( b, [ & ]( const JstitModel& m ) {
        ++visited;
        const auto& cover = m.description().cover;
        const bool is_fork = m.histories().size() == 2;
        EXPECT_TRUE( ( is_fork ? fork : chain ).insert( fingerprint( m ) ).second ) << "duplicate model";
        EXPECT_EQ( cover.size(), 2u );
        return true;
    } );
    const pair_list chain_cover{ { "m0", "m1" }, { "m1", "m2" } };
    const pair_list fork_cover{ { "m0", "m1" }, { "m0", "m2" } };
    EXPECT_EQ( chain, brute_force( chain_cover, { { "m0", "m1" }, { "m1", "m2" }, { "m0", "m2" } }, vary_re ) );
    EXPECT_EQ( fork, brute_force( fork_cover, fork_cover, vary_re ) );
    EXPECT_EQ( visited, chain.size() + fork.size() );
}

TEST( Search, AgreesWithBruteForceUnirelational ) { compare_with_brute_force( false ); }

TEST( Search, AgreesWithBruteForceVaryingRe ) { compare_with_brute_force( true ); }

TEST( FindModel, Satisfiable )
{
    SearchBounds b;
    const auto w = find_model( parse_formula( "E x & ~[]E x" ), b );
    ASSERT_TRUE( w );
    EXPECT_TRUE( is_valid_model( w->model ) );
    EXPECT_TRUE( satisfies( w->model, w->point, parse_formula( "E x & ~[]E x" ) ) );
    EXPECT_EQ( w->model.moment_count(), 3u );  // smallest branching tree
}

TEST( FindModel, Unsatisfiable )
{
    SearchBounds b;
    EXPECT_FALSE( find_model( parse_formula( "p & ~p" ), b ) );
}

TEST( FindModel, Countermodels )
{
    SearchBounds b;
    EXPECT_FALSE( find_countermodel( parse_formula( "[]E x -> E x" ), b ) );
    const auto w = find_countermodel( parse_formula( "E x -> []E x" ), b );
    ASSERT_TRUE( w );
    EXPECT_FALSE( satisfies( w->model, w->point, parse_formula( "E x -> []E x" ) ) );
}

TEST( FindModel, JobsGiveSameWitness )
{
    SearchBounds b;
    b.max_moments = 4;
    for ( const char* text : { "E x & ~[]E x", "Prove(j1, x, p) & <>p", "x:p & ~[]p", "p & ~p" } )
    {
        const Formula f = parse_formula( text );
        const auto one = find_model( f, b, 1 );
        const auto many = find_model( f, b, 3 );
        ASSERT_EQ( one.has_value(), many.has_value() ) << text;
        if ( one )
        {
            EXPECT_EQ( write_model( one->model ), write_model( many->model ) ) << text;
            EXPECT_EQ( one->point, many->point ) << text;
        }
    }
}

TEST( FindModel, RandomizedMode )
{
    SearchBounds b;
    b.max_moments = 5;
    b.mode = SearchBounds::randomized_mode{ 200, 3 };
    const auto w = find_model( parse_formula( "E x & ~[]E x" ), b );
    ASSERT_TRUE( w );
    EXPECT_TRUE( satisfies( w->model, w->point, parse_formula( "E x & ~[]E x" ) ) );
    EXPECT_FALSE( find_model( parse_formula( "p & ~p" ), b ) );
}

TEST( FindModel, BoundsForCollectsVocabulary )
{
    const auto b = bounds_for( parse_formula( "[j2](y*c):q -> Prove(j3, x, r)" ), SearchBounds{} );
    EXPECT_TRUE( b.agents.contains( "j2" ) );
    EXPECT_TRUE( b.agents.contains( "j3" ) );
    EXPECT_NE( std::ranges::find( b.atoms, "q" ), b.atoms.end() );
    EXPECT_NE( std::ranges::find( b.atoms, "r" ), b.atoms.end() );
    EXPECT_NE( std::ranges::find( b.terms, Term::variable( "x" ) ), b.terms.end() );
    EXPECT_NE( std::ranges::find( b.evidence_formulas, parse_formula( "q" ) ), b.evidence_formulas.end() );
}

TEST( RandomModel, DeterministicAndValid )
{
    SearchBounds b = small_bounds( 5 );
    b.agents = AgentSet{ { "j1", "j2" } };
    b.vary_re = true;
    std::set< std::string > seen;
    for ( std::uint64_t seed = 1; seed <= 50; ++seed )
    {
        const auto m = random_model( b, seed );
        EXPECT_TRUE( validate( m ).clean() ) << write_model( m );
        EXPECT_LE( m.moment_count(), 5u );
        EXPECT_EQ( write_model( m ), write_model( random_model( b, seed ) ) );
        seen.insert( write_model( m ) );
    }
    EXPECT_GT( seen.size(), 25u );  // small models repeat
}

TEST( RandomModel, RespectsMinimum )
{
    SearchBounds b = small_bounds( 5 );
    b.min_moments = 4;
    for ( std::uint64_t seed = 1; seed <= 20; ++seed )
        EXPECT_GE( random_model( b, seed ).moment_count(), 4u );
}

} // namespace
} // namespace jastit
