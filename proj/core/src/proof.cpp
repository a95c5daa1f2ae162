#include "jastit/proof.hpp"

#include "jastit/parser.hpp"
#include "jastit/printer.hpp"

#include <charconv>
#include <sstream>

namespace jastit
{

using K = Formula::kind;

std::string to_string( const Justification& j )
{
    switch ( j.rule )
    {
    case Rule::axiom: return to_string( j.group );
    case Rule::mp: return "MP " + std::to_string( j.first ) + " " + std::to_string( j.second );
    case Rule::know_nec: return "KNEC " + std::to_string( j.first );
    case Rule::cs: return "CS";
    case Rule::r4: return "R4 " + std::to_string( j.first );
    case Rule::box_nec: return "BOXNEC " + std::to_string( j.first );
    case Rule::agent_nec: return "JNEC " + j.agent + " " + std::to_string( j.first );
    }
    return "?";
}

namespace
{

bool mentions_defined_modality( const Formula& f )
{
    switch ( f.type() )
    {
    case K::prove:
    case K::proven:
        return true;
    case K::atom:
    case K::falsum:
    case K::presented:
        return false;
    default:
        if ( f.is_binary() )
            return mentions_defined_modality( f.left() ) || mentions_defined_modality( f.right() );
        return mentions_defined_modality( f.body() );
    }
}

void flatten( const Formula& f, K connective, std::vector< Formula >& out )
{
    if ( f.is( connective ) )
    {
        flatten( f.left(), connective, out );
        flatten( f.right(), connective, out );
    }
    else
        out.push_back( f );
}

// KA -> (d_1 | ... | d_n); returns A and the flattened disjuncts.
bool split_r4( const Formula& f, Formula& known, std::vector< Formula >& disjuncts )
{
    if ( !f.is( K::implication ) || !f.left().is( K::know ) )
        return false;
    known = f.left().body();
    disjuncts.clear();
    flatten( f.right(), K::disjunction, disjuncts );
    return true;
}

struct checker
{
    const HilbertProof& proof;
    std::vector< Formula > normalized;
    ProofVerdict verdict;

    bool reject( std::size_t index, const char* why, std::string detail )
    {
        verdict.accepted = false;
        verdict.bad_index = index;
        verdict.reason = why;
        verdict.detail = std::move( detail );
        return false;
    }

    bool cited( std::size_t index, std::size_t line ) const { return line >= 1 && line < index; }

    bool step( std::size_t k )
    {
        const ProofStep& s = proof.steps[ k ];
        const std::size_t index = k + 1;
        if ( s.index != index )
            return reject( index, reason::bad_numbering,
                           "expected line " + std::to_string( index ) + ", found " + std::to_string( s.index ) );
        if ( mentions_defined_modality( s.formula ) )
            return reject( index, reason::defined_modality, "Prove/Proven are not part of the proof language" );

        const Justification& j = s.justification;
        const Formula& cur = normalized[ k ];
        auto premise = [ & ]( std::size_t line ) -> const Formula& { return normalized[ line - 1 ]; };

        switch ( j.rule )
        {
        case Rule::axiom:
        {
            std::optional< AxiomMatch > m;
            try
            {
                m = is_axiom_instance( s.formula, j.group );
            }
            catch ( const skeleton_too_large& e )
            {
                return reject( index, reason::skeleton_too_large, e.what() );
            }
            if ( !m )
                return reject( index, reason::not_axiom, "not an instance of " + to_string( j.group ) );
            verdict.notes.push_back( m->pattern );
            return true;
        }
        case Rule::mp:
        {
            if ( !cited( index, j.first ) || !cited( index, j.second ) )
                return reject( index, reason::bad_reference, "MP must cite earlier lines" );
            if ( premise( j.first ) != Formula::implication( premise( j.second ), cur ) )
                return reject( index, reason::mp_mismatch,
                               "line " + std::to_string( j.first ) + " is not line " + std::to_string( j.second ) +
                                   " -> current" );
            verdict.notes.push_back( "MP" );
            return true;
        }
        case Rule::know_nec:
        case Rule::box_nec:
        case Rule::agent_nec:
        {
            if ( !cited( index, j.first ) )
                return reject( index, reason::bad_reference, "necessitation must cite an earlier line" );
            if ( j.rule != Rule::know_nec && !proof.options.nec_enabled )
                return reject( index, reason::nec_disabled, "[] / [j] necessitation is switched off" );
            Formula expected = j.rule == Rule::know_nec  ? Formula::know( premise( j.first ) )
                               : j.rule == Rule::box_nec ? Formula::box( premise( j.first ) )
                                                         : Formula::stit( j.agent, premise( j.first ) );
            if ( cur != expected )
                return reject( index, reason::nec_mismatch, "expected " + print_formula( expected ) );
            verdict.notes.push_back( to_string( j ).substr( 0, to_string( j ).find( ' ' ) ) );
            return true;
        }
        case Rule::cs:
            if ( !cs_contains( proof.options.cs, s.formula ) )
                return reject( index, reason::not_in_cs,
                               "not a member of the " + proof.options.cs.name() + " constant specification" );
            verdict.notes.push_back( "CS" );
            return true;
        case Rule::r4:
        {
            if ( !cited( index, j.first ) )
                return reject( index, reason::bad_reference, "R4 must cite an earlier line" );
            Formula known = Formula::falsum();
            std::vector< Formula > from;
            if ( !split_r4( premise( j.first ), known, from ) || from.empty() )
                return reject( index, reason::r4_premise, "premise is not KA -> (~[]E t1 | ... | ~[]E tn)" );
            std::vector< Term > terms;
            for ( const auto& d : from )
            {
                if ( !d.is( K::negation ) || !d.body().is( K::box ) || !d.body().body().is( K::presented ) )
                    return reject( index, reason::r4_premise, "premise disjunct is not ~[]E t: " + print_formula( d ) );
                terms.push_back( d.body().body().term() );
            }
            Formula known_here = Formula::falsum();
            std::vector< Formula > to;
            if ( !split_r4( cur, known_here, to ) || known_here != known || to.size() != terms.size() )
                return reject( index, reason::r4_conclusion, "conclusion does not match KA -> (~E t1 | ... | ~E tn)" );
            for ( std::size_t i = 0; i < to.size(); ++i )
                if ( to[ i ] != Formula::negation( Formula::presented( terms[ i ] ) ) )
                    return reject( index, reason::r4_conclusion,
                                   "disjunct " + std::to_string( i + 1 ) + " should be ~E " + print_term( terms[ i ] ) );
            verdict.notes.push_back( "R4" );
            return true;
        }
        }
        return reject( index, reason::bad_reference, "unknown rule" );
    }
};

} // namespace

ProofVerdict check_proof( const HilbertProof& proof )
{
    checker c{ proof, {}, {} };
    if ( proof.steps.empty() )
    {
        c.reject( 1, reason::empty_proof, "proof has no lines" );
        return c.verdict;
    }
    c.normalized.reserve( proof.steps.size() );
    for ( const auto& s : proof.steps )
        c.normalized.push_back( normalize_diamonds( s.formula ) );
    for ( std::size_t k = 0; k < proof.steps.size(); ++k )
        if ( !c.step( k ) )
            return c.verdict;
    c.verdict.accepted = true;
    return c.verdict;
}

bool check_inconsistency_witness( std::span< const Formula > gamma, const HilbertProof& proof )
{
    if ( proof.steps.empty() )
        return false;
    const Formula last = normalize_diamonds( proof.steps.back().formula );
    if ( !last.is( K::implication ) || !last.right().is( K::falsum ) )
        return false;

    std::vector< Formula > members;
    for ( const auto& g : gamma )
        members.push_back( normalize_diamonds( g ) );
    auto member = [ & ]( const Formula& f ) {
        for ( const auto& m : members )
            if ( m == f )
                return true;
        return false;
    };
    // Any bracketing of a conjunction of members is accepted.
    auto covered = [ & ]( auto&& self, const Formula& f ) -> bool {
        if ( member( f ) )
            return true;
        return f.is( K::conjunction ) && self( self, f.left() ) && self( self, f.right() );
    };
    return covered( covered, last.left() );
}

// --- proof files ------------------------------------------------------------

proof_format_error::proof_format_error( std::size_t line, std::size_t column, const std::string& message )
    : std::runtime_error( "line " + std::to_string( line ) + ", column " + std::to_string( column ) + ": " + message ),
      _line{ line }, _column{ column }
{
}

namespace
{

std::string_view trim( std::string_view s )
{
    const char* ws = " \t\r\n";
    auto b = s.find_first_not_of( ws );
    if ( b == std::string_view::npos )
        return {};
    auto e = s.find_last_not_of( ws );
    return s.substr( b, e - b + 1 );
}

std::vector< std::string_view > words( std::string_view s )
{
    std::vector< std::string_view > out;
    std::size_t i = 0;
    while ( i < s.size() )
    {
        while ( i < s.size() && ( s[ i ] == ' ' || s[ i ] == '\t' ) )
            ++i;
        std::size_t b = i;
        while ( i < s.size() && s[ i ] != ' ' && s[ i ] != '\t' )
            ++i;
        if ( b < i )
            out.push_back( s.substr( b, i - b ) );
    }
    return out;
}

std::optional< std::size_t > number( std::string_view s )
{
    std::size_t v = 0;
    auto [ p, ec ] = std::from_chars( s.data(), s.data() + s.size(), v );
    if ( ec != std::errc{} || p != s.data() + s.size() )
        return std::nullopt;
    return v;
}

Justification parse_justification( std::string_view text, std::size_t line, std::size_t column )
{
    auto w = words( text );
    auto fail = [ & ]( const std::string& m ) -> Justification { throw proof_format_error( line, column, m ); };
    if ( w.empty() )
        return fail( "missing justification" );
    auto arg = [ & ]( std::size_t k ) {
        auto n = number( w[ k ] );
        if ( !n )
            fail( "expected line number, found '" + std::string( w[ k ] ) + "'" );
        return *n;
    };
    auto arity = [ & ]( std::size_t n ) {
        if ( w.size() != n + 1 )
            fail( std::string( w[ 0 ] ) + " takes " + std::to_string( n ) + " argument(s)" );
    };

    if ( auto g = axiom_group_from_string( w[ 0 ] ) )
    {
        arity( 0 );
        return Justification::axiom( *g );
    }
    if ( w[ 0 ] == "MP" )
    {
        arity( 2 );
        return Justification::modus_ponens( arg( 1 ), arg( 2 ) );
    }
    if ( w[ 0 ] == "KNEC" )
    {
        arity( 1 );
        return Justification::know_nec( arg( 1 ) );
    }
    if ( w[ 0 ] == "BOXNEC" )
    {
        arity( 1 );
        return Justification::box_nec( arg( 1 ) );
    }
    if ( w[ 0 ] == "JNEC" )
    {
        arity( 2 );
        if ( !is_agent_name( w[ 1 ] ) )
            fail( "expected agent, found '" + std::string( w[ 1 ] ) + "'" );
        return Justification::agent_nec( std::string( w[ 1 ] ), arg( 2 ) );
    }
    if ( w[ 0 ] == "CS" )
    {
        arity( 0 );
        return Justification::constant_spec();
    }
    if ( w[ 0 ] == "R4" )
    {
        arity( 1 );
        return Justification::r4( arg( 1 ) );
    }
    return fail( "unknown justification '" + std::string( w[ 0 ] ) + "'" );
}

} // namespace

HilbertProof parse_proof( std::string_view text )
{
    HilbertProof proof;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while ( start <= text.size() )
    {
        std::size_t end = text.find( '\n', start );
        if ( end == std::string_view::npos )
            end = text.size();
        std::string_view raw = text.substr( start, end - start );
        const std::size_t raw_offset = start;
        start = end + 1;
        ++line_no;

        std::string_view line = trim( raw );
        if ( line.empty() || line.front() == '#' )
            continue;
        auto column_of = [ & ]( std::string_view part ) { return static_cast< std::size_t >( part.data() - text.data() - raw_offset ) + 1; };

        if ( line.front() == '@' )
        {
            if ( !proof.steps.empty() )
                throw proof_format_error( line_no, column_of( line ), "directives must precede the first step" );
            auto w = words( line );
            if ( w.size() != 2 )
                throw proof_format_error( line_no, column_of( line ), "directive takes exactly one value" );
            if ( w[ 0 ] == "@cs" )
            {
                auto cs = constant_spec_from_string( w[ 1 ] );
                if ( !cs )
                    throw proof_format_error( line_no, column_of( w[ 1 ] ), "unknown constant specification '" +
                                                                                std::string( w[ 1 ] ) + "'" );
                proof.options.cs = *cs;
            }
            else if ( w[ 0 ] == "@nec" )
            {
                if ( w[ 1 ] != "on" && w[ 1 ] != "off" )
                    throw proof_format_error( line_no, column_of( w[ 1 ] ), "@nec expects on or off" );
                proof.options.nec_enabled = w[ 1 ] == "on";
            }
            else
                throw proof_format_error( line_no, column_of( line ), "unknown directive '" + std::string( w[ 0 ] ) + "'" );
            continue;
        }

        auto dot = line.find( '.' );
        if ( dot == std::string_view::npos )
            throw proof_format_error( line_no, column_of( line ), "expected 'N. <formula> ; <justification>'" );
        auto idx = number( trim( line.substr( 0, dot ) ) );
        if ( !idx )
            throw proof_format_error( line_no, column_of( line ), "expected line number before '.'" );
        std::string_view rest = line.substr( dot + 1 );
        auto semi = rest.rfind( ';' );
        if ( semi == std::string_view::npos )
            throw proof_format_error( line_no, column_of( rest ), "missing ';' before justification" );
        std::string_view formula_text = rest.substr( 0, semi );
        std::string_view just_text = trim( rest.substr( semi + 1 ) );

        ProofStep step;
        step.index = *idx;
        try
        {
            step.formula = parse_formula( formula_text );
        }
        catch ( const parse_error& e )
        {
            throw proof_format_error( line_no, column_of( formula_text ) + e.position(), e.detail() );
        }
        step.justification = parse_justification( just_text, line_no, column_of( just_text.empty() ? rest : just_text ) );
        proof.steps.push_back( std::move( step ) );
    }
    return proof;
}

std::string print_proof( const HilbertProof& proof )
{
    std::ostringstream out;
    out << "@cs " << proof.options.cs.name() << "\n";
    out << "@nec " << ( proof.options.nec_enabled ? "on" : "off" ) << "\n";
    for ( const auto& s : proof.steps )
        out << s.index << ". " << print_formula( s.formula ) << " ; " << to_string( s.justification ) << "\n";
    return out.str();
}

} // namespace jastit
