#include "jastit/model_io.hpp"

#include "jastit/parser.hpp"
#include "jastit/printer.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace jastit
{

using nlohmann::json;

namespace
{

[[noreturn]] void fail( const std::string& where, const std::string& what )
{
    throw model_error( where + ": " + what );
}

const json& require_array( const json& j, const std::string& where )
{
    if ( !j.is_array() )
        fail( where, "expected an array" );
    return j;
}

const json& require_object( const json& j, const std::string& where )
{
    if ( !j.is_object() )
        fail( where, "expected an object" );
    return j;
}

std::string require_string( const json& j, const std::string& where )
{
    if ( !j.is_string() )
        fail( where, "expected a string" );
    return j.get< std::string >();
}

std::vector< std::string > strings( const json& j, const std::string& where )
{
    std::vector< std::string > out;
    for ( const auto& e : require_array( j, where ) )
        out.push_back( require_string( e, where ) );
    return out;
}

std::vector< NamePair > pairs( const json& j, const std::string& where )
{
    std::vector< NamePair > out;
    for ( const auto& e : require_array( j, where ) )
    {
        if ( !e.is_array() || e.size() != 2 )
            fail( where, "expected a pair [a, b], got " + e.dump() );
        out.emplace_back( require_string( e[ 0 ], where ), require_string( e[ 1 ], where ) );
    }
    return out;
}

Term term_of( const json& j, const std::string& where )
{
    auto text = require_string( j, where );
    try
    {
        return parse_term( text );
    }
    catch ( const parse_error& e )
    {
        fail( where, "term '" + text + "' " + e.what() );
    }
}

Formula formula_of( const json& j, const std::string& where, const AgentSet* agents )
{
    auto text = require_string( j, where );
    try
    {
        return parse_formula( text, agents );
    }
    catch ( const parse_error& e )
    {
        fail( where, "formula '" + text + "' " + e.what() );
    }
}

json pair_list( const std::vector< NamePair >& ps )
{
    json out = json::array();
    for ( const auto& [ a, b ] : ps )
        out.push_back( { a, b } );
    return out;
}

} // namespace

ModelDescription parse_model_description( std::string_view json_text )
{
    json doc;
    try
    {
        doc = json::parse( json_text );
    }
    catch ( const json::parse_error& e )
    {
        throw model_error( std::string( "malformed JSON: " ) + e.what() );
    }
    require_object( doc, "document" );

    static const std::set< std::string > known{ "agents", "moments", "cover",     "r",     "re",       "choice",
                                                "act",    "evidence", "valuation", "universe", "flags" };
    for ( const auto& [ key, value ] : doc.items() )
        if ( !known.contains( key ) )
            fail( "document", "unknown field '" + key + "'" );
    for ( const char* key : { "agents", "moments" } )
        if ( !doc.contains( key ) )
            fail( "document", std::string( "missing field '" ) + key + "'" );

    ModelDescription d;
    d.agents = strings( doc[ "agents" ], "agents" );
    d.moments = strings( doc[ "moments" ], "moments" );
    if ( doc.contains( "cover" ) )
        d.cover = pairs( doc[ "cover" ], "cover" );
    if ( doc.contains( "r" ) )
        d.r = pairs( doc[ "r" ], "r" );
    if ( doc.contains( "re" ) && !doc[ "re" ].is_null() )
        d.re = pairs( doc[ "re" ], "re" );

    std::optional< AgentSet > agents;
    try
    {
        agents.emplace( d.agents );
    }
    catch ( const std::invalid_argument& e )
    {
        fail( "agents", e.what() );
    }

    if ( doc.contains( "choice" ) )
        for ( const auto& [ m, per_agent ] : require_object( doc[ "choice" ], "choice" ).items() )
            for ( const auto& [ j, cells ] : require_object( per_agent, "choice." + m ).items() )
            {
                auto& out = d.choice[ m ][ j ];
                for ( const auto& cell : require_array( cells, "choice." + m + "." + j ) )
                    out.push_back( strings( cell, "choice." + m + "." + j ) );
            }

    if ( doc.contains( "act" ) )
        for ( const auto& [ m, per_history ] : require_object( doc[ "act" ], "act" ).items() )
            for ( const auto& [ h, terms ] : require_object( per_history, "act." + m ).items() )
            {
                auto& out = d.act[ m ][ h ];
                for ( const auto& t : require_array( terms, "act." + m + "." + h ) )
                    out.push_back( term_of( t, "act." + m + "." + h ) );
            }

    if ( doc.contains( "evidence" ) )
        for ( const auto& e : require_array( doc[ "evidence" ], "evidence" ) )
        {
            if ( !e.is_array() || e.size() != 3 )
                fail( "evidence", "expected a triple [moment, term, formula], got " + e.dump() );
            d.evidence.push_back(
                { require_string( e[ 0 ], "evidence" ), term_of( e[ 1 ], "evidence" ), formula_of( e[ 2 ], "evidence", &*agents ) } );
        }

    if ( doc.contains( "valuation" ) )
        for ( const auto& [ atom, pts ] : require_object( doc[ "valuation" ], "valuation" ).items() )
            d.valuation[ atom ] = pairs( pts, "valuation." + atom );

    if ( doc.contains( "universe" ) )
    {
        const auto& u = require_object( doc[ "universe" ], "universe" );
        if ( u.contains( "terms" ) )
            for ( const auto& t : require_array( u[ "terms" ], "universe.terms" ) )
                d.extra_terms.push_back( term_of( t, "universe.terms" ) );
        if ( u.contains( "formulas" ) )
            for ( const auto& f : require_array( u[ "formulas" ], "universe.formulas" ) )
                d.extra_formulas.push_back( formula_of( f, "universe.formulas", &*agents ) );
    }

    if ( doc.contains( "flags" ) )
    {
        const auto& f = require_object( doc[ "flags" ], "flags" );
        for ( const auto& [ key, value ] : f.items() )
        {
            if ( key == "normal" || key == "unirelational" )
            {
                if ( !value.is_boolean() )
                    fail( "flags." + key, "expected a boolean" );
                ( key == "normal" ? d.flags.normal : d.flags.unirelational ) = value.get< bool >();
            }
            else if ( key == "cs" )
            {
                auto cs = constant_spec_from_string( require_string( value, "flags.cs" ) );
                if ( !cs )
                    fail( "flags.cs", "expected empty, axiomatic or iterated" );
                d.flags.cs = *cs;
            }
            else if ( key == "normality_range" )
            {
                auto r = axiom_range_from_string( require_string( value, "flags.normality_range" ) );
                if ( !r )
                    fail( "flags.normality_range", "expected A0-A9 or A1-A9" );
                d.flags.normality_range = *r;
            }
            else
            {
                fail( "flags", "unknown flag '" + key + "'" );
            }
        }
    }
    return d;
}

JstitModel load_model( std::string_view json_text ) { return JstitModel::build( parse_model_description( json_text ) ); }

JstitModel load_model_file( const std::filesystem::path& path )
{
    std::ifstream in( path );
    if ( !in )
        throw model_error( "cannot open '" + path.string() + "'" );
    std::ostringstream text;
    text << in.rdbuf();
    return load_model( text.str() );
}

std::string write_model( const ModelDescription& d, int indent )
{
    json doc;
    doc[ "agents" ] = d.agents;
    doc[ "moments" ] = d.moments;
    doc[ "cover" ] = pair_list( d.cover );
    doc[ "r" ] = pair_list( d.r );
    if ( d.re )
        doc[ "re" ] = pair_list( *d.re );
    if ( !d.choice.empty() )
    {
        json choice = json::object();
        for ( const auto& [ m, per_agent ] : d.choice )
            for ( const auto& [ j, cells ] : per_agent )
                choice[ m ][ j ] = cells;
        doc[ "choice" ] = choice;
    }
    if ( !d.act.empty() )
    {
        json act = json::object();
        for ( const auto& [ m, per_history ] : d.act )
            for ( const auto& [ h, terms ] : per_history )
            {
                json list = json::array();
                for ( const auto& t : terms )
                    list.push_back( print_term( t ) );
                act[ m ][ h ] = list;
            }
        doc[ "act" ] = act;
    }
    if ( !d.evidence.empty() )
    {
        json ev = json::array();
        for ( const auto& e : d.evidence )
            ev.push_back( { e.moment, print_term( e.term ), print_formula( e.formula ) } );
        doc[ "evidence" ] = ev;
    }
    if ( !d.valuation.empty() )
    {
        json val = json::object();
        for ( const auto& [ atom, pts ] : d.valuation )
            val[ atom ] = pair_list( pts );
        doc[ "valuation" ] = val;
    }
    if ( !d.extra_terms.empty() || !d.extra_formulas.empty() )
    {
        json u = json::object();
        json terms = json::array();
        json formulas = json::array();
        for ( const auto& t : d.extra_terms )
            terms.push_back( print_term( t ) );
        for ( const auto& f : d.extra_formulas )
            formulas.push_back( print_formula( f ) );
        u[ "terms" ] = terms;
        u[ "formulas" ] = formulas;
        doc[ "universe" ] = u;
    }
    doc[ "flags" ] = { { "normal", d.flags.normal },
                       { "cs", d.flags.cs.name() },
                       { "unirelational", d.flags.unirelational } };
    if ( d.flags.normality_range != AxiomRange::a0_a9 )
        doc[ "flags" ][ "normality_range" ] = to_string( d.flags.normality_range );
    return doc.dump( indent );
}

std::string write_model( const JstitModel& m, int indent ) { return write_model( m.description(), indent ); }

} // namespace jastit
