#include "fixtures.hpp"

#include "jastit/model_io.hpp"
#include "jastit/validate.hpp"

#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include <algorithm>

namespace jastit
{
namespace
{

bool has( const ValidationReport& r, std::string_view name )
{
    const auto names = r.constraints();
    return std::ranges::find( names, std::string( name ) ) != names.end();
}

ValidationReport report_for( const std::string& fixture )
{
    return validate( load_model( testing::read_fixture( "models/" + fixture ) ) );
}

TEST( Validate, M1IsClean )
{
    const auto r = report_for( "M1.json" );
    EXPECT_TRUE( r.clean() ) << ( r.clean() ? "" : r.violations[ 0 ].constraint );
    EXPECT_TRUE( is_valid_model( load_model( testing::read_fixture( "models/M1.json" ) ) ) );
}

struct MutantCase
{
    const char* file;
    std::string_view constraint;
};

class Mutant : public ::testing::TestWithParam< MutantCase >
{
};

TEST_P( Mutant, ExactlyItsViolation )
{
    const auto& c = GetParam();
    const auto r = report_for( c.file );
    const auto names = r.constraints();
    ASSERT_EQ( names.size(), 1u ) << c.file << ": " << ( names.empty() ? "clean" : names[ 0 ] + " / " + names.back() );
    EXPECT_EQ( names[ 0 ], c.constraint );
    EXPECT_FALSE( is_valid_model( load_model( testing::read_fixture( std::string( "models/" ) + c.file ) ) ) );
}

INSTANTIATE_TEST_SUITE_P(
    Fixtures, Mutant,
    ::testing::Values( MutantCase{ "M1-mutant-historical-connection.json", constraint::historical_connection },
                       MutantCase{ "M1-mutant-backward-branching.json", constraint::no_backward_branching },
                       MutantCase{ "M1-mutant-undivided-choice.json", constraint::no_choice_between_undivided },
                       MutantCase{ "M1-mutant-independence.json", constraint::independence_of_agents },
                       MutantCase{ "M1-mutant-evidence-monotonicity.json", constraint::evidence_monotonicity },
                       MutantCase{ "M1-mutant-evidence-closure.json", constraint::evidence_closure },
                       MutantCase{ "M1-mutant-act.json", constraint::expansion },
                       MutantCase{ "M1-mutant-no-new-proofs.json", constraint::no_new_proofs },
                       MutantCase{ "M1-mutant-divide.json", constraint::divide },
                       MutantCase{ "M1-mutant-future-matters.json", constraint::future_matters },
                       MutantCase{ "M1-mutant-transparency.json", constraint::transparency } ),
    []( const auto& info ) {
        std::string name = info.param.file;
        name = name.substr( 10, name.size() - 15 );
        std::replace( name.begin(), name.end(), '-', '_' );
        return name;
    } );

TEST( Validate, ActMutantWitness )
{
    const auto r = report_for( "M1-mutant-act.json" );
    ASSERT_FALSE( r.violations.empty() );
    EXPECT_EQ( r.violations[ 0 ].witness, ( std::vector< std::string >{ "m0", "m2", "m2", "x" } ) );
}

TEST( Validate, FutureMattersOnTwoChain )
{
    const auto m = load_model( R"({ "agents": ["j1"], "moments": ["a", "b"], "cover": [["a", "b"]], "r": [] })" );
    const auto r = validate( m );
    ASSERT_EQ( r.constraints(), ( std::vector< std::string >{ std::string( constraint::future_matters ) } ) );
    EXPECT_EQ( r.violations[ 0 ].witness, ( std::vector< std::string >{ "a", "b" } ) );
}

TEST( Validate, ChoicePartition )
{
    auto j = nlohmann::json::parse( testing::read_fixture( "models/M1.json" ) );
    j[ "choice" ][ "m0" ][ "j1" ] = nlohmann::json::array( { { "m1" } } );
    auto r = validate( load_model( j.dump() ) );
    EXPECT_TRUE( has( r, constraint::choice_partition ) );
}

TEST( Validate, UnirelationalFlag )
{
    auto j = nlohmann::json::parse( testing::read_fixture( "models/M1.json" ) );
    j[ "re" ] = nlohmann::json::array( { { "m0", "m1" }, { "m0", "m2" }, { "m1", "m2" } } );
    auto r = validate( load_model( j.dump() ) );
    EXPECT_TRUE( has( r, constraint::unirelational ) );
    j[ "flags" ][ "unirelational" ] = false;
    r = validate( load_model( j.dump() ) );
    EXPECT_FALSE( has( r, constraint::unirelational ) );
}

TEST( Validate, RIncludedInRe )
{
    auto j = nlohmann::json::parse( testing::read_fixture( "models/M1.json" ) );
    j[ "re" ] = nlohmann::json::array( { { "m0", "m1" } } );
    j[ "flags" ][ "unirelational" ] = false;
    const auto r = validate( load_model( j.dump() ) );
    EXPECT_TRUE( has( r, constraint::r_subset_re ) );
}

TEST( Validate, IsValidAgreesWithReport )
{
    for ( const char* f : { "M1.json", "M1-mutant-act.json", "M1-mutant-divide.json", "M1-mutant-independence.json" } )
    {
        const auto m = load_model( testing::read_fixture( std::string( "models/" ) + f ) );
        EXPECT_EQ( is_valid_model( m ), validate( m ).clean() ) << f;
    }
}

} // namespace
} // namespace jastit
