#include "cli.hpp"

#include "jastit/model_io.hpp"
#include "jastit/parser.hpp"
#include "jastit/printer.hpp"
#include "jastit/proof.hpp"
#include "jastit/search.hpp"
#include "jastit/semantics.hpp"
#include "jastit/validate.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

namespace jastit::cli
{
namespace
{

using json = nlohmann::json;

// Raised for bad input that is not a CLI11 usage error.
class input_error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

std::string slurp( const std::string& path, std::istream& in )
{
    if ( path == "-" )
        return { std::istreambuf_iterator< char >( in ), {} };
    std::ifstream file( path, std::ios::binary );
    if ( !file )
        throw input_error( "cannot read " + path );
    return { std::istreambuf_iterator< char >( file ), {} };
}

// Formula text given inline, or "-" for stdin.
std::string formula_text( const std::string& arg, std::istream& in )
{
    std::string text = arg == "-" ? slurp( arg, in ) : arg;
    while ( !text.empty() && ( text.back() == '\n' || text.back() == '\r' ) )
        text.pop_back();
    return text;
}

std::string point_name( const JstitModel& m, EvalPoint p )
{
    return m.moment_name( p.moment ) + "/" + m.histories()[ p.history ].id;
}

std::vector< std::string > split_commas( const std::string& s )
{
    std::vector< std::string > out;
    std::stringstream in( s );
    std::string item;
    while ( std::getline( in, item, ',' ) )
        if ( !item.empty() )
            out.push_back( item );
    return out;
}

struct Common
{
    bool json = false;
};

// ---- commands ----------------------------------------------------------------

int cmd_parse( const std::string& arg, const Common& c, std::istream& in, std::ostream& out )
{
    const Formula f = parse_formula( formula_text( arg, in ) );
    if ( c.json )
        out << json{ { "formula", print_formula( f ) } }.dump() << '\n';
    else
        out << print_formula( f ) << '\n';
    return exit_code::ok;
}

int cmd_expand( const std::string& arg, const Common& c, std::istream& in, std::ostream& out )
{
    const Formula f = expand_defined( parse_formula( formula_text( arg, in ) ) );
    if ( c.json )
        out << json{ { "formula", print_formula( f ) } }.dump() << '\n';
    else
        out << print_formula( f ) << '\n';
    return exit_code::ok;
}

struct FlagOverrides
{
    std::string cs;
    std::string normality_range;
};

JstitModel load_with_overrides( const std::string& path, const FlagOverrides& o, std::istream& in )
{
    ModelDescription d = parse_model_description( slurp( path, in ) );
    if ( !o.cs.empty() )
    {
        auto cs = constant_spec_from_string( o.cs );
        if ( !cs )
            throw input_error( "unknown constant specification '" + o.cs + "'" );
        d.flags.cs = *cs;
    }
    if ( !o.normality_range.empty() )
    {
        auto r = axiom_range_from_string( o.normality_range );
        if ( !r )
            throw input_error( "unknown normality range '" + o.normality_range + "'" );
        d.flags.normality_range = *r;
    }
    return JstitModel::build( std::move( d ) );
}

int cmd_check_model( const std::string& path, const FlagOverrides& o, const Common& c, std::istream& in,
                     std::ostream& out )
{
    const auto report = validate( load_with_overrides( path, o, in ) );
    if ( c.json )
    {
        json v = json::array();
        for ( const auto& x : report.violations )
            v.push_back( { { "constraint", x.constraint }, { "witness", x.witness } } );
        out << json{ { "clean", report.clean() }, { "violations", v } }.dump( 2 ) << '\n';
    }
    else if ( report.clean() )
        out << "clean\n";
    else
        for ( const auto& x : report.violations )
        {
            out << x.constraint << ':';
            for ( std::size_t i = 0; i < x.witness.size(); ++i )
                out << ( i ? ", " : " " ) << x.witness[ i ];
            out << '\n';
        }
    return report.clean() ? exit_code::ok : exit_code::negative;
}

struct EvalArgs
{
    std::string model;
    std::string formula;
    std::string at;
    bool valid = false;
    std::string proves = "literal";
    bool expand = false;
};

int cmd_eval( const EvalArgs& a, const Common& c, std::istream& in, std::ostream& out )
{
    const JstitModel m = load_model( slurp( a.model, in ) );
    const Formula f = parse_formula( formula_text( a.formula, in ), m.agents() );
    EvalOptions options;
    options.proves =
        a.proves == "simplified" ? EvalOptions::proves_clause::simplified : EvalOptions::proves_clause::literal;
    options.defined = a.expand ? EvalOptions::defined_clause::expanded : EvalOptions::defined_clause::direct;

    if ( a.valid )
    {
        const auto v = valid_in_model( m, f, options );
        if ( c.json )
        {
            json j{ { "valid", v.valid } };
            if ( v.failing )
                j[ "failing" ] = point_name( m, *v.failing );
            out << j.dump() << '\n';
        }
        else if ( v.valid )
            out << "valid\n";
        else
            out << "fails at " << point_name( m, *v.failing ) << '\n';
        return v.valid ? exit_code::ok : exit_code::negative;
    }

    const auto slash = a.at.find( '/' );
    if ( slash == std::string::npos )
        throw input_error( "--at expects moment/history" );
    const auto moment = m.find_moment( a.at.substr( 0, slash ) );
    if ( !moment )
        throw input_error( "unknown moment '" + a.at.substr( 0, slash ) + "'" );
    const EvalPoint p{ *moment, m.history_by_id( a.at.substr( slash + 1 ) ) };
    if ( !m.is_point( p ) )
        throw input_error( "history " + a.at.substr( slash + 1 ) + " does not pass through " + m.moment_name( *moment ) );
    const bool result = satisfies( m, p, f, options );
    if ( c.json )
        out << json{ { "point", a.at }, { "value", result } }.dump() << '\n';
    else
        out << ( result ? "true" : "false" ) << '\n';
    return result ? exit_code::ok : exit_code::negative;
}

struct ProofArgs
{
    std::string path;
    std::string cs;
    std::string nec;
};

int cmd_check_proof( const ProofArgs& a, const Common& c, std::istream& in, std::ostream& out )
{
    HilbertProof proof = parse_proof( slurp( a.path, in ) );
    if ( !a.cs.empty() )
    {
        auto cs = constant_spec_from_string( a.cs );
        if ( !cs )
            throw input_error( "unknown constant specification '" + a.cs + "'" );
        proof.options.cs = *cs;
    }
    if ( !a.nec.empty() )
        proof.options.nec_enabled = a.nec == "on";
    const auto v = check_proof( proof );
    if ( c.json )
    {
        json j{ { "accepted", v.accepted }, { "notes", v.notes } };
        if ( !v.accepted )
        {
            j[ "step" ] = v.bad_index;
            j[ "reason" ] = v.reason;
            j[ "detail" ] = v.detail;
        }
        out << j.dump( 2 ) << '\n';
    }
    else if ( v.accepted )
        out << "accepted (" << proof.steps.size() << " steps)\n";
    else
        out << "rejected at step " << v.bad_index << ": " << v.reason << ( v.detail.empty() ? "" : ": " ) << v.detail
            << '\n';
    return v.accepted ? exit_code::ok : exit_code::negative;
}

struct SearchArgs
{
    std::string formula;
    std::size_t max_moments = 3;
    std::string agents;
    std::size_t random = 0;
    std::uint64_t seed = 1;
    std::size_t jobs = 1;
    bool vary_re = false;
};

SearchBounds bounds_from( const SearchArgs& a )
{
    SearchBounds b;
    b.max_moments = a.max_moments;
    if ( !a.agents.empty() )
        b.agents = AgentSet( split_commas( a.agents ) );
    b.vary_re = a.vary_re;
    if ( a.random > 0 )
        b.mode = SearchBounds::randomized_mode{ a.random, a.seed };
    return b;
}

int cmd_search( const SearchArgs& a, bool counter, const Common& c, std::istream& in, std::ostream& out )
{
    const Formula f = parse_formula( formula_text( a.formula, in ) );
    const SearchBounds b = bounds_from( a );
    const auto w = counter ? find_countermodel( f, b, a.jobs ) : find_model( f, b, a.jobs );
    if ( c.json )
    {
        json j{ { "found", w.has_value() } };
        if ( w )
        {
            j[ "point" ] = point_name( w->model, w->point );
            j[ "model" ] = json::parse( write_model( w->model ) );
        }
        out << j.dump( 2 ) << '\n';
    }
    else if ( w )
        out << "found at " << point_name( w->model, w->point ) << '\n' << write_model( w->model ) << '\n';
    else
        out << "none up to " << a.max_moments << " moments\n";
    return w ? exit_code::ok : exit_code::negative;
}

int cmd_gen( std::uint64_t seed, std::size_t max_moments, const std::string& agents, std::ostream& out )
{
    SearchBounds b;
    b.max_moments = max_moments;
    if ( !agents.empty() )
        b.agents = AgentSet( split_commas( agents ) );
    b.terms = { Term::variable( "x" ) };
    b.atoms = { "p" };
    b.evidence_formulas = { Formula::atom( "p" ) };
    out << write_model( random_model( b, seed ) ) << '\n';
    return exit_code::ok;
}

} // namespace

int run( const std::vector< std::string >& args, std::istream& in, std::ostream& out, std::ostream& err )
{
    CLI::App app{ "Justification stit logic toolkit", "jastit" };
    app.require_subcommand( 1 );
    Common common;
    app.add_flag( "--json", common.json, "Machine-readable output" );

    std::string parse_arg;
    auto* parse = app.add_subcommand( "parse", "Parse a formula and print it canonically" );
    parse->add_option( "formula", parse_arg, "Formula text, or - for stdin" )->required();

    std::string expand_arg;
    auto* expand = app.add_subcommand( "expand", "Replace Prove and Proven by their definitions" );
    expand->add_option( "formula", expand_arg, "Formula text, or - for stdin" )->required();

    std::string model_path;
    FlagOverrides overrides;
    auto* check_model = app.add_subcommand( "check-model", "Validate a model file" );
    check_model->add_option( "model", model_path, "Model JSON file, or -" )->required();
    check_model->add_option( "--cs", overrides.cs, "Constant specification: empty, axiomatic, iterated" );
    check_model->add_option( "--normality-range", overrides.normality_range, "A0-A9 or A1-A9" );

    EvalArgs eval_args;
    auto* eval = app.add_subcommand( "eval", "Evaluate a formula in a model" );
    eval->add_option( "model", eval_args.model, "Model JSON file, or -" )->required();
    eval->add_option( "formula", eval_args.formula, "Formula text" )->required();
    auto* at = eval->add_option( "--at", eval_args.at, "Evaluation point moment/history" );
    auto* valid = eval->add_flag( "--valid", eval_args.valid, "Check truth at every point" );
    at->excludes( valid );
    eval->add_option( "--proves", eval_args.proves, "Clause for t:A" )
        ->check( CLI::IsMember( { "literal", "simplified" } ) );
    eval->add_flag( "--expand", eval_args.expand, "Evaluate Prove/Proven through their definitions" );

    ProofArgs proof_args;
    auto* check = app.add_subcommand( "check-proof", "Check a Hilbert proof file" );
    check->add_option( "proof", proof_args.path, "Proof file, or -" )->required();
    check->add_option( "--cs", proof_args.cs, "Override the @cs directive" );
    check->add_option( "--nec", proof_args.nec, "Override the @nec directive" )->check( CLI::IsMember( { "on", "off" } ) );

    SearchArgs search_args;
    auto add_search = [ & ]( const char* name, const char* help ) {
        auto* s = app.add_subcommand( name, help );
        s->add_option( "formula", search_args.formula, "Formula text, or - for stdin" )->required();
        s->add_option( "--max-moments", search_args.max_moments, "Largest tree size" )->check( CLI::Range( 1, 12 ) );
        s->add_option( "--agents", search_args.agents, "Comma-separated agents (default j1)" );
        s->add_option( "--random", search_args.random, "Sample this many random models instead" );
        s->add_option( "--seed", search_args.seed, "Seed for --random" );
        s->add_option( "--jobs", search_args.jobs, "Worker threads" )->check( CLI::Range( 1, 256 ) );
        s->add_flag( "--vary-re", search_args.vary_re, "Also try R_e strictly larger than R" );
        return s;
    };
    auto* find = add_search( "find-model", "Search for a model of a formula" );
    auto* counter = add_search( "find-countermodel", "Search for a point where a formula fails" );

    std::uint64_t gen_seed = 1;
    std::size_t gen_moments = 4;
    std::string gen_agents;
    auto* gen = app.add_subcommand( "gen", "Print a random valid model" );
    gen->add_option( "--seed", gen_seed, "Seed" );
    gen->add_option( "--max-moments", gen_moments, "Largest tree size" )->check( CLI::Range( 1, 12 ) );
    gen->add_option( "--agents", gen_agents, "Comma-separated agents (default j1)" );

    try
    {
        std::vector< std::string > reversed( args.rbegin(), args.rend() );
        app.parse( reversed );
    }
    catch ( const CLI::CallForHelp& e )
    {
        return app.exit( e, out, err );
    }
    catch ( const CLI::ParseError& e )
    {
        app.exit( e, out, err );
        return exit_code::error;
    }

    try
    {
        if ( parse->parsed() )
            return cmd_parse( parse_arg, common, in, out );
        if ( expand->parsed() )
            return cmd_expand( expand_arg, common, in, out );
        if ( check_model->parsed() )
            return cmd_check_model( model_path, overrides, common, in, out );
        if ( eval->parsed() )
        {
            if ( !eval_args.valid && eval_args.at.empty() )
                throw input_error( "eval needs --at or --valid" );
            return cmd_eval( eval_args, common, in, out );
        }
        if ( check->parsed() )
            return cmd_check_proof( proof_args, common, in, out );
        if ( find->parsed() )
            return cmd_search( search_args, false, common, in, out );
        if ( counter->parsed() )
            return cmd_search( search_args, true, common, in, out );
        if ( gen->parsed() )
            return cmd_gen( gen_seed, gen_moments, gen_agents, out );
    }
    catch ( const parse_error& e )
    {
        err << "error: " << e.what() << '\n';
        return exit_code::error;
    }
    catch ( const proof_format_error& e )
    {
        err << "error: " << e.what() << '\n';
        return exit_code::error;
    }
    catch ( const std::exception& e )
    {
        err << "error: " << e.what() << '\n';
        return exit_code::error;
    }
    return exit_code::error;
}

} // namespace jastit::cli
