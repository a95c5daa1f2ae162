#include "generators.hpp"

#include "jastit/axioms.hpp"
#include "jastit/constant_spec.hpp"
#include "jastit/parser.hpp"
#include "jastit/printer.hpp"

#include <gtest/gtest.h>

namespace jastit
{
namespace
{

bool instance( std::string_view text, AxiomGroup g ) { return is_axiom_instance( parse_formula( text ), g ).has_value(); }

TEST( AxiomInstance, Examples )
{
    EXPECT_TRUE( instance( "[]p -> p", AxiomGroup::a1 ) );
    EXPECT_TRUE( instance( "x:(p -> q) -> (y:p -> x*y:q)", AxiomGroup::a4 ) );
    EXPECT_TRUE( instance( "K p -> []K[]p", AxiomGroup::a8 ) );
    EXPECT_TRUE( instance( "p -> p", AxiomGroup::a0 ) );
    EXPECT_FALSE( instance( "[]p -> []q", AxiomGroup::a1 ) );
}

TEST( AxiomInstance, ReportsPattern )
{
    auto m = is_axiom_instance( parse_formula( "[]p -> p" ), AxiomGroup::a1 );
    ASSERT_TRUE( m );
    EXPECT_EQ( m->pattern, "A1/T-box" );
}

TEST( AxiomInstance, S5ForBoxAndStit )
{
    EXPECT_TRUE( instance( "[j]p -> p", AxiomGroup::a1 ) );
    EXPECT_TRUE( instance( "[](p -> q) -> []p -> []q", AxiomGroup::a1 ) );
    EXPECT_TRUE( instance( "[j](p -> q) -> [j]p -> [j]q", AxiomGroup::a1 ) );
    EXPECT_TRUE( instance( "[j]p -> [j][j]p", AxiomGroup::a1 ) );
    EXPECT_TRUE( instance( "~[]p -> []~[]p", AxiomGroup::a1 ) );
    EXPECT_TRUE( instance( "<>p -> []<>p", AxiomGroup::a1 ) );
    EXPECT_FALSE( instance( "[j](p -> q) -> []p -> []q", AxiomGroup::a1 ) );
    EXPECT_FALSE( instance( "[j1]p -> [j2][j1]p", AxiomGroup::a1 ) );
    // K is S4 only.
    EXPECT_FALSE( instance( "~K p -> K~K p", AxiomGroup::a7 ) );
    EXPECT_TRUE( instance( "K p -> K K p", AxiomGroup::a7 ) );
    EXPECT_TRUE( instance( "K p -> p", AxiomGroup::a7 ) );
    EXPECT_FALSE( instance( "K p -> p", AxiomGroup::a1 ) );
}

TEST( AxiomInstance, RemainingGroups )
{
    EXPECT_TRUE( instance( "[]p -> [j]p", AxiomGroup::a2 ) );
    EXPECT_FALSE( instance( "[j]p -> []p", AxiomGroup::a2 ) );
    EXPECT_TRUE( instance( "<>[j1]p & <>[j2]q -> <>([j1]p & [j2]q)", AxiomGroup::a3 ) );
    EXPECT_FALSE( instance( "<>[j1]p & <>[j1]q -> <>([j1]p & [j1]q)", AxiomGroup::a3 ) );
    EXPECT_TRUE( instance( "x:p -> !x:x:p & K p", AxiomGroup::a5 ) );
    EXPECT_FALSE( instance( "x:p -> !y:x:p & K p", AxiomGroup::a5 ) );
    EXPECT_TRUE( instance( "x:p | y:p -> (x + y):p", AxiomGroup::a6 ) );
    EXPECT_FALSE( instance( "x:p | y:p -> (y + x):p", AxiomGroup::a6 ) );
    EXPECT_TRUE( instance( "[]E x -> K[]E x", AxiomGroup::a9 ) );
    EXPECT_FALSE( instance( "E x -> K E x", AxiomGroup::a9 ) );
    EXPECT_FALSE( instance( "x:(p -> q) -> (y:p -> y*x:q)", AxiomGroup::a4 ) );
}

TEST( AxiomInstance, TautologyTest )
{
    EXPECT_TRUE( instance( "K p | ~K p", AxiomGroup::a0 ) );
    EXPECT_TRUE( instance( "(p & ~p) -> false", AxiomGroup::a0 ) );
    EXPECT_FALSE( instance( "K p -> ~[]E x", AxiomGroup::a0 ) );
    EXPECT_FALSE( instance( "[]p -> p", AxiomGroup::a0 ) );
    // <>p and ~[]~p are the same letter after normalization.
    EXPECT_TRUE( instance( "<>p -> ~[]~p", AxiomGroup::a0 ) );
}

TEST( AxiomInstance, SkeletonTooLarge )
{
    std::string text = "p0";
    for ( int i = 1; i <= 21; ++i )
        text += " | p" + std::to_string( i );
    EXPECT_THROW( (void)is_axiom_instance( parse_formula( text ), AxiomGroup::a0 ), skeleton_too_large );
    EXPECT_FALSE( find_axiom_instance( parse_formula( text ) ) );
}

TEST( Normalization, Idempotent )
{
    testing::FormulaGenerator gen( 21 );
    for ( int i = 0; i < 300; ++i )
    {
        const Formula f = gen.formula();
        const Formula n = normalize_diamonds( f );
        EXPECT_EQ( normalize_diamonds( n ), n );
        for ( AxiomGroup g : all_axiom_groups )
        {
            if ( g == AxiomGroup::a0 )
                continue;
            EXPECT_EQ( is_axiom_instance( f, g ).has_value(), is_axiom_instance( n, g ).has_value() ) << print_formula( f );
        }
    }
}

TEST( SchemeInstances, GeneratorProducesInstances )
{
    testing::InstancePool pool{ { parse_formula( "p" ), parse_formula( "~q" ), parse_formula( "E x" ),
                                  parse_formula( "x:p" ), parse_formula( "<>p" ) },
                                { Term::variable( "x" ), parse_term( "c*x" ) },
                                { "j1", "j2" } };
    for ( int g = 0; g < 10; ++g )
        for ( const auto& f : testing::scheme_instances( g, pool, 50, 100 + g ) )
            EXPECT_TRUE( is_axiom_instance( f, all_axiom_groups[ g ] ) ) << g << ": " << print_formula( f );
}

TEST( ConstantSpecification, Membership )
{
    EXPECT_TRUE( cs_contains( ConstantSpec::axiomatic(), parse_formula( "c:([]p -> p)" ) ) );
    EXPECT_FALSE( cs_contains( ConstantSpec::empty(), parse_formula( "c:(p -> p)" ) ) );
    EXPECT_TRUE( cs_contains( ConstantSpec::iterated(), parse_formula( "d:c:([]p -> p)" ) ) );
    EXPECT_FALSE( cs_contains( ConstantSpec::axiomatic(), parse_formula( "d:c:([]p -> p)" ) ) );
    EXPECT_FALSE( cs_contains( ConstantSpec::axiomatic(), parse_formula( "x:([]p -> p)" ) ) );
    EXPECT_FALSE( cs_contains( ConstantSpec::axiomatic(), parse_formula( "c:(p -> q)" ) ) );
    EXPECT_TRUE( cs_contains( ConstantSpec::axiomatic(), parse_formula( "c:(p -> p)" ) ) );
    EXPECT_FALSE( cs_contains( ConstantSpec::axiomatic(), parse_formula( "c:(p -> p)" ), AxiomRange::a1_a9 ) );
    EXPECT_TRUE( cs_contains( ConstantSpec::axiomatic(), parse_formula( "c:(K p -> p)" ), AxiomRange::a1_a9 ) );
}

TEST( ConstantSpecification, ExplicitList )
{
    auto cs = ConstantSpec::explicit_list( { parse_formula( "c:(p -> p)" ), parse_formula( "d:c:(p -> p)" ) } );
    EXPECT_TRUE( cs_contains( cs, parse_formula( "d:c:(p -> p)" ) ) );
    EXPECT_FALSE( cs_contains( cs, parse_formula( "a:(p -> p)" ) ) );
    EXPECT_THROW( (void)ConstantSpec::explicit_list( { parse_formula( "d:c:(p -> p)" ) } ), std::invalid_argument );
    EXPECT_THROW( (void)ConstantSpec::explicit_list( { parse_formula( "c:(p -> q)" ) } ), std::invalid_argument );
    EXPECT_THROW( (void)ConstantSpec::explicit_list( { parse_formula( "x:(p -> p)" ) } ), std::invalid_argument );
}

TEST( ConstantSpecification, Names )
{
    for ( const char* name : { "empty", "axiomatic", "iterated" } )
    {
        auto cs = constant_spec_from_string( name );
        ASSERT_TRUE( cs );
        EXPECT_EQ( cs->name(), name );
    }
    EXPECT_FALSE( constant_spec_from_string( "bogus" ) );
}

} // namespace
} // namespace jastit
