#include "fixtures.hpp"

#include "cli.hpp"

#include "jastit/model_io.hpp"
#include "jastit/validate.hpp"

#include <gtest/gtest.h>

#include <sstream>

namespace jastit
{
namespace
{

struct Result
{
    int code;
    std::string out;
    std::string err;
};

Result run( std::vector< std::string > args, const std::string& stdin_text = "" )
{
    std::istringstream in( stdin_text );
    std::ostringstream out, err;
    const int code = cli::run( args, in, out, err );
    return { code, out.str(), err.str() };
}

std::string model( const char* name ) { return testing::fixture_path( std::string( "models/" ) + name ).string(); }

TEST( Cli, Parse )
{
    auto r = run( { "parse", "K (p) -> [j1]q" } );
    EXPECT_EQ( r.code, 0 );
    EXPECT_EQ( r.out, "K p -> [j1]q\n" );

    r = run( { "parse", "p &" } );
    EXPECT_EQ( r.code, 2 );
    EXPECT_NE( r.err.find( "position 3" ), std::string::npos ) << r.err;

    r = run( { "parse", "-" }, "x:p\n" );
    EXPECT_EQ( r.out, "x:p\n" );

    r = run( { "--json", "parse", "<>p" } );
    EXPECT_EQ( r.out, "{\"formula\":\"<>p\"}\n" );
}

TEST( Cli, Expand )
{
    EXPECT_EQ( run( { "expand", "Proven(x, p)" } ).out, "[]E x & x:p\n" );
}

TEST( Cli, CheckModel )
{
    auto r = run( { "check-model", model( "M1.json" ) } );
    EXPECT_EQ( r.code, 0 );
    EXPECT_EQ( r.out, "clean\n" );

    r = run( { "check-model", model( "M1-mutant-act.json" ) } );
    EXPECT_EQ( r.code, 1 );
    EXPECT_EQ( r.out, "Expansion of presented proofs: m0, m2, m2, x\n" );

    r = run( { "check-model", "-" }, testing::read_fixture( "models/M1-mutant-divide.json" ) );
    EXPECT_EQ( r.code, 1 );
    EXPECT_EQ( r.out.rfind( "Presenting a new proof makes histories divide:", 0 ), 0u ) << r.out;

    EXPECT_EQ( run( { "check-model", "/nonexistent.json" } ).code, 2 );
    EXPECT_EQ( run( { "check-model", model( "M1.json" ), "--cs", "bogus" } ).code, 2 );
    EXPECT_EQ( run( { "check-model", model( "M1.json" ), "--cs", "empty" } ).code, 0 );
}

TEST( Cli, Eval )
{
    auto r = run( { "eval", model( "M1.json" ), "E x", "--at", "m0/m2" } );
    EXPECT_EQ( r.code, 0 );
    EXPECT_EQ( r.out, "true\n" );

    r = run( { "eval", model( "M1.json" ), "[]E x", "--at", "m0/m2" } );
    EXPECT_EQ( r.code, 1 );
    EXPECT_EQ( r.out, "false\n" );

    r = run( { "eval", model( "M1.json" ), "E x", "--valid" } );
    EXPECT_EQ( r.code, 1 );
    EXPECT_EQ( r.out, "fails at m0/m1\n" );

    r = run( { "eval", model( "M1.json" ), "[j9]p", "--valid" } );
    EXPECT_EQ( r.code, 2 );
    EXPECT_NE( r.err.find( "j9" ), std::string::npos );

    EXPECT_EQ( run( { "eval", model( "M1.json" ), "p", "--at", "m1/m2" } ).code, 2 );
    EXPECT_EQ( run( { "eval", model( "M1.json" ), "p" } ).code, 2 );
    EXPECT_EQ( run( { "eval", model( "M1.json" ), "p", "--at", "m0/m1", "--valid" } ).code, 2 );
}

TEST( Cli, CheckProof )
{
    const auto path = testing::fixture_path( "proofs/lemma-theorems-2.prf" ).string();
    auto r = run( { "check-proof", path } );
    EXPECT_EQ( r.code, 0 );
    EXPECT_EQ( r.out, "accepted (11 steps)\n" );

    r = run( { "check-proof", path, "--nec", "off" } );
    EXPECT_EQ( r.code, 1 );
    EXPECT_NE( r.out.find( "nec-disabled" ), std::string::npos ) << r.out;

    r = run( { "check-proof", "-" }, "1. K p -> ~[]E x ; A0\n" );
    EXPECT_EQ( r.code, 1 );
    EXPECT_EQ( r.out, "rejected at step 1: not-axiom-instance: not an instance of A0\n" );

    r = run( { "check-proof", "-" }, "1. p -> p\n" );
    EXPECT_EQ( r.code, 2 );
}

TEST( Cli, FindModel )
{
    auto r = run( { "find-model", "E x & ~[]E x" } );
    EXPECT_EQ( r.code, 0 );
    ASSERT_EQ( r.out.rfind( "found at ", 0 ), 0u );
    const auto body = r.out.substr( r.out.find( '\n' ) + 1 );
    EXPECT_TRUE( validate( load_model( body ) ).clean() );

    r = run( { "find-model", "p & ~p", "--max-moments", "2" } );
    EXPECT_EQ( r.code, 1 );
    EXPECT_EQ( r.out, "none up to 2 moments\n" );

    r = run( { "find-countermodel", "E x -> []E x", "--jobs", "2" } );
    EXPECT_EQ( r.code, 0 );

    r = run( { "find-model", "E x & ~[]E x", "--random", "50", "--seed", "4", "--max-moments", "5" } );
    EXPECT_EQ( r.code, 0 );

    EXPECT_EQ( run( { "find-model", "p", "--max-moments", "0" } ).code, 2 );
}

TEST( Cli, Gen )
{
    auto a = run( { "gen", "--seed", "9" } );
    auto b = run( { "gen", "--seed", "9" } );
    EXPECT_EQ( a.code, 0 );
    EXPECT_EQ( a.out, b.out );
    EXPECT_TRUE( validate( load_model( a.out ) ).clean() );
}

TEST( Cli, Usage )
{
    EXPECT_EQ( run( {} ).code, 2 );
    EXPECT_EQ( run( { "frobnicate" } ).code, 2 );
    auto r = run( { "--help" } );
    EXPECT_EQ( r.code, 0 );
    EXPECT_NE( r.out.find( "check-model" ), std::string::npos );
}

} // namespace
} // namespace jastit
