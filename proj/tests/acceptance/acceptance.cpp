// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include "fixtures.hpp"
#include "generators.hpp"
#include "reference.hpp"

#include "jastit/axioms.hpp"
#include "jastit/model_io.hpp"
#include "jastit/parser.hpp"
#include "jastit/printer.hpp"
#include "jastit/proof.hpp"
#include "jastit/search.hpp"
#include "jastit/semantics.hpp"
#include "jastit/validate.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace
{

using namespace jastit;

struct Outcome
{
    bool ok = true;
    std::string detail;
};

struct Criterion
{
    int number;
    const char* title;
    double limit_seconds;
    std::function< Outcome() > run;
};

// ---- 1: round trip ----------------------------------------------------------

Outcome round_trip()
{
    testing::FormulaGenerator gen( 20261019 );
    for ( int i = 0; i < 1000; ++i )
    {
        const Formula f = gen.formula();
        const std::string text = print_formula( f );
        if ( parse_formula( text ) != f )
            return { false, "mismatch on " + text };
    }
    return { true, "1000 formulas" };
}

// ---- 2: validator on M1 and its mutants -------------------------------------

Outcome mutants()
{
    const auto clean = validate( load_model( testing::read_fixture( "models/M1.json" ) ) );
    if ( !clean.clean() )
        return { false, "M1 reports " + clean.constraints().front() };
    const std::vector< std::pair< const char*, std::string_view > > cases{
        { "historical-connection", constraint::historical_connection },
        { "backward-branching", constraint::no_backward_branching },
        { "undivided-choice", constraint::no_choice_between_undivided },
        { "independence", constraint::independence_of_agents },
        { "evidence-monotonicity", constraint::evidence_monotonicity },
        { "evidence-closure", constraint::evidence_closure },
        { "act", constraint::expansion },
        { "no-new-proofs", constraint::no_new_proofs },
        { "divide", constraint::divide },
        { "future-matters", constraint::future_matters },
        { "transparency", constraint::transparency },
    };
    for ( const auto& [ name, expected ] : cases )
    {
        const auto r = validate( load_model( testing::read_fixture( std::string( "models/M1-mutant-" ) + name + ".json" ) ) );
        const auto got = r.constraints();
        if ( got.size() != 1 || got[ 0 ] != expected )
            return { false, std::string( name ) + " reports " + std::to_string( got.size() ) + " constraint(s)" };
    }
    return { true, "M1 clean, 11 mutants exact" };
}

// ---- 3: soundness of A0-A9 on small models ---------------------------------

Outcome soundness()
{
    const Term x = Term::variable( "x" );
    testing::InstancePool pool{
        { parse_formula( "p" ), parse_formula( "~p" ), parse_formula( "E x" ), parse_formula( "x:p" ),
          parse_formula( "[j1]p" ), parse_formula( "[]E x" ), parse_formula( "K p" ), parse_formula( "<>~p" ),
          parse_formula( "p -> p" ), parse_formula( "x:(p -> p)" ) },
        { x, Term::check( x ), Term::app( x, x ), Term::sum( x, x ) },
        { "j1" } };
    std::vector< Formula > instances;
    for ( int g = 0; g < 10; ++g )
        for ( auto& f : testing::scheme_instances( g, pool, 100, 900 + g ) )
        {
            if ( !is_axiom_instance( f, all_axiom_groups[ g ] ) )
                return { false, "generator produced a non-instance: " + print_formula( f ) };
            instances.push_back( std::move( f ) );
        }

    SearchBounds b;
    b.max_moments = 3;
    b.terms = { x };
    b.atoms = { "p" };
    b.evidence_formulas = { parse_formula( "p" ), parse_formula( "~p" ), parse_formula( "p -> p" ),
                            parse_formula( "x:p" ) };
    b.universe_formulas = instances;

    std::string failure;
    std::size_t enumerated = 0;
    auto check = [ & ]( const JstitModel& m ) {
        Evaluator ev( m );
        for ( const auto& f : instances )
            if ( ev.first_failure( f ) )
            {
                failure = print_formula( f ) + " fails in\n" + write_model( m );
                return false;
            }
        return true;
    };
    enumerate_models( b, [ & ]( const JstitModel& m ) {
        ++enumerated;
        return check( m );
    } );
    if ( !failure.empty() )
        return { false, failure };

    b.max_moments = 5;
    b.vary_re = true;
    std::mt19937_64 rng( 3 );
    for ( int i = 0; i < 200; ++i )
        if ( !check( random_model( b, rng ) ) )
            return { false, failure };
    return { true, std::to_string( instances.size() ) + " instances, " + std::to_string( enumerated ) +
                       " enumerated + 200 random models" };
}

// ---- 4: a validity over four moments ----------------------------------------

Outcome four_moment_validity()
{
    const Formula f = parse_formula( "K(~[]E x | []E y) -> (~E x | E y)" );
    SearchBounds b;
    b.max_moments = 4;
    b.terms = { Term::variable( "x" ), Term::variable( "y" ) };
    b = bounds_for( f, b );
    std::size_t count = 0;
    std::string failure;
    enumerate_models( b, [ & ]( const JstitModel& m ) {
        ++count;
        if ( !valid_in_model( m, f ).valid )
        {
            failure = write_model( m );
            return false;
        }
        return true;
    } );
    if ( !failure.empty() )
        return { false, "countermodel:\n" + failure };
    return { true, std::to_string( count ) + " models" };
}

// ---- 5: K(<>p & <>~p) has no model -------------------------------------------

Outcome unsatisfiable()
{
    SearchBounds b;
    b.max_moments = 4;
    const auto w = find_model( parse_formula( "K(<>p & <>~p)" ), b );
    if ( w )
        return { false, "model found:\n" + write_model( w->model ) };
    return { true, "no model up to 4 moments" };
}

// ---- 6: lemma proofs and their mutations -----------------------------------

Outcome lemma_proofs()
{
    std::size_t rejected = 0;
    for ( const char* stem : { "lemma-theorems-1", "lemma-theorems-2" } )
    {
        const std::string text = testing::read_fixture( std::string( "proofs/" ) + stem + ".prf" );
        const auto verdict = check_proof( parse_proof( text ) );
        if ( !verdict.accepted )
            return { false, std::string( stem ) + " rejected at " + std::to_string( verdict.bad_index ) };

        std::istringstream list( testing::read_fixture( std::string( "proofs/" ) + stem + ".mutations" ) );
        std::string entry;
        while ( std::getline( list, entry ) )
        {
            if ( entry.empty() || entry[ 0 ] == '#' )
                continue;
            const auto bar = entry.find( " | " );
            const std::size_t target = std::stoul( entry.substr( 0, bar ) );
            std::istringstream in( text );
            std::ostringstream out;
            std::string line;
            for ( std::size_t n = 1; std::getline( in, line ); ++n )
                out << ( n == target ? entry.substr( bar + 3 ) : line ) << '\n';
            bool accepted = false;
            try
            {
                accepted = check_proof( parse_proof( out.str() ) ).accepted;
            }
            catch ( const proof_format_error& )
            {
            }
            if ( accepted )
                return { false, std::string( stem ) + " mutation accepted: " + entry };
            ++rejected;
        }
    }
    return { true, "2 proofs accepted, " + std::to_string( rejected ) + " mutations rejected" };
}

// ---- 7, 8: agreement of alternative clauses ---------------------------------

SearchBounds random_bounds( bool vary_re )
{
    SearchBounds b;
    b.max_moments = 5;
    b.agents = AgentSet{ { "j1", "j2" } };
    b.terms = { Term::variable( "x" ), Term::variable( "y" ) };
    b.atoms = { "p", "q" };
    b.evidence_formulas = { parse_formula( "p" ), parse_formula( "q" ), parse_formula( "p -> q" ) };
    b.vary_re = vary_re;
    return b;
}

testing::GeneratorConfig two_agent_language()
{
    testing::GeneratorConfig c;
    c.agents = { "j1", "j2" };
    c.atoms = { "p", "q" };
    c.variables = { "x", "y" };
    c.constants = { "c" };
    c.max_depth = 4;
    c.max_term_depth = 2;
    return c;
}

Outcome clause_agreement( bool unirelational, EvalOptions other, std::uint64_t seed )
{
    const auto b = random_bounds( !unirelational );
    std::mt19937_64 rng( seed );
    testing::FormulaGenerator gen( seed + 1, two_agent_language() );
    for ( int i = 0; i < 500; ++i )
    {
        const auto m = random_model( b, rng );
        Evaluator base( m );
        Evaluator alt( m, other );
        for ( int k = 0; k < 20; ++k )
        {
            const Formula f = gen.formula();
            if ( base.truth_set( f ) != alt.truth_set( f ) )
                return { false, "disagree on " + print_formula( f ) + " in\n" + write_model( m ) };
        }
    }
    return { true, "500 models x 20 formulas" };
}

// ---- 9: main evaluator against the reference --------------------------------

Outcome reference_agreement()
{
    testing::GeneratorConfig c;
    c.agents = { "j1" };
    c.atoms = { "p" };
    c.variables = { "x" };
    c.constants = { "c" };
    c.max_depth = 4;
    c.max_term_depth = 2;
    testing::FormulaGenerator gen( 99, c );
    std::vector< Formula > probes;
    for ( int i = 0; i < 50; ++i )
        probes.push_back( gen.formula() );

    SearchBounds b;
    b.max_moments = 3;
    b.terms = { Term::variable( "x" ) };
    b.atoms = { "p" };
    b.evidence_formulas = { parse_formula( "p" ) };
    b.vary_re = true;
    std::size_t count = 0;
    std::string failure;
    enumerate_models( b, [ & ]( const JstitModel& m ) {
        ++count;
        const testing::ReferenceEvaluator ref( m.description() );
        Evaluator ev( m );
        for ( const auto& f : probes )
        {
            const Bits& s = ev.truth_set( f );
            for ( std::size_t k = 0; k < m.points().size(); ++k )
            {
                const EvalPoint p = m.points()[ k ];
                if ( s[ k ] != ref.satisfies( m.moment_name( p.moment ), m.histories()[ p.history ].id, f ) )
                {
                    failure = print_formula( f ) + " at (" + m.moment_name( p.moment ) + ", " +
                              m.histories()[ p.history ].id + ") in\n" + write_model( m );
                    return false;
                }
            }
        }
        return true;
    } );
    if ( !failure.empty() )
        return { false, failure };
    return { true, "50 probes on " + std::to_string( count ) + " models" };
}

} // namespace

int main()
{
    using clock = std::chrono::steady_clock;
    const EvalOptions expanded{ EvalOptions::proves_clause::literal, EvalOptions::defined_clause::expanded };
    const EvalOptions simplified{ EvalOptions::proves_clause::simplified, EvalOptions::defined_clause::direct };
    const std::vector< Criterion > criteria{
        { 1, "parse(print(f)) = f on 1000 random formulas", 5, round_trip },
        { 2, "M1 clean, each mutant exactly its violation", 1, mutants },
        { 3, "A0-A9 instances valid on small models", 300, soundness },
        { 4, "K(~[]E x | []E y) -> (~E x | E y) valid up to 4 moments", 600, four_moment_validity },
        { 5, "K(<>p & <>~p) has no model up to 4 moments", 600, unsatisfiable },
        { 6, "lemma proofs accepted, mutations rejected", 1, lemma_proofs },
        { 7, "Prove/Proven direct vs expanded on 500 random models", 60,
          [ & ] { return clause_agreement( false, expanded, 7 ); } },
        { 8, "literal vs simplified proves clause on 500 unirelational models", 60,
          [ & ] { return clause_agreement( true, simplified, 8 ); } },
        { 9, "evaluator vs reference on all models up to 3 moments", 120, reference_agreement },
    };

    bool all = true;
    for ( const auto& c : criteria )
    {
        const auto start = clock::now();
        Outcome o;
        try
        {
            o = c.run();
        }
        catch ( const std::exception& e )
        {
            o = { false, std::string( "exception: " ) + e.what() };
        }
        const double seconds = std::chrono::duration< double >( clock::now() - start ).count();
        const bool in_time = seconds <= c.limit_seconds;
        const bool pass = o.ok && in_time;
        all = all && pass;
        std::printf( "criterion %d: %s  %s  [%.3fs / limit %.0fs]  %s%s\n", c.number, pass ? "PASS" : "FAIL", c.title,
                     seconds, c.limit_seconds, in_time ? "" : "(too slow) ", o.detail.c_str() );
        std::fflush( stdout );
    }
    return all ? 0 : 1;
}
