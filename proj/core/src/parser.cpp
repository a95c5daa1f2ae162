#include "jastit/parser.hpp"

#include <cctype>
#include <optional>
#include <vector>

namespace jastit
{

parse_error::parse_error( std::size_t position, const std::string& message )
    : std::runtime_error( "at position " + std::to_string( position ) + ": " + message ),
      _position{ position }, _detail{ message }
{
}

namespace
{

enum class tok
{
    ident,
    lparen,
    rparen,
    lbracket,
    rbracket,
    diamond,   // <>
    arrow,     // ->
    iff,       // <->
    bar,       // |
    amp,       // &
    tilde,     // ~
    colon,     // :
    comma,     // ,
    plus,      // +
    star,      // *
    bang,      // !
    end,
};

struct token
{
    tok type;
    std::string_view text;
    std::size_t pos;
};

std::vector< token > lex( std::string_view text )
{
    std::vector< token > out;
    std::size_t i = 0;
    auto ident_char = []( char c ) { return std::isalnum( static_cast< unsigned char >( c ) ) != 0 || c == '_'; };

    while ( i < text.size() )
    {
        char c = text[ i ];
        if ( std::isspace( static_cast< unsigned char >( c ) ) != 0 )
        {
            ++i;
            continue;
        }
        if ( ident_char( c ) )
        {
            std::size_t start = i;
            while ( i < text.size() && ident_char( text[ i ] ) )
                ++i;
            out.push_back( { tok::ident, text.substr( start, i - start ), start } );
            continue;
        }
        auto emit = [ & ]( tok t, std::size_t len ) {
            out.push_back( { t, text.substr( i, len ), i } );
            i += len;
        };
        switch ( c )
        {
        case '(': emit( tok::lparen, 1 ); break;
        case ')': emit( tok::rparen, 1 ); break;
        case '[': emit( tok::lbracket, 1 ); break;
        case ']': emit( tok::rbracket, 1 ); break;
        case '|': emit( tok::bar, 1 ); break;
        case '&': emit( tok::amp, 1 ); break;
        case '~': emit( tok::tilde, 1 ); break;
        case ':': emit( tok::colon, 1 ); break;
        case ',': emit( tok::comma, 1 ); break;
        case '+': emit( tok::plus, 1 ); break;
        case '*': emit( tok::star, 1 ); break;
        case '!': emit( tok::bang, 1 ); break;
        case '-':
            if ( text.substr( i, 2 ) == "->" )
            {
                emit( tok::arrow, 2 );
                break;
            }
            throw parse_error( i, "unexpected '-'" );
        case '<':
            if ( text.substr( i, 3 ) == "<->" )
            {
                emit( tok::iff, 3 );
                break;
            }
            if ( text.substr( i, 2 ) == "<>" )
            {
                emit( tok::diamond, 2 );
                break;
            }
            throw parse_error( i, "unexpected '<'" );
        default:
            throw parse_error( i, std::string( "unexpected character '" ) + c + "'" );
        }
    }
    out.push_back( { tok::end, {}, text.size() } );
    return out;
}

bool is_keyword( std::string_view s )
{
    return s == "K" || s == "E" || s == "false" || s == "Prove" || s == "Proven";
}

class parser
{
public:
    parser( std::string_view text, const AgentSet* agents ) : _tokens{ lex( text ) }, _agents{ agents } {}

    Formula formula_to_end()
    {
        Formula f = implication();
        expect_end();
        return f;
    }

    Term term_to_end()
    {
        Term t = term();
        expect_end();
        return t;
    }

private:
    const token& peek( std::size_t ahead = 0 ) const
    {
        std::size_t k = std::min( _pos + ahead, _tokens.size() - 1 );
        return _tokens[ k ];
    }

    bool at( tok t ) const { return peek().type == t; }
    bool at_ident( std::string_view s ) const { return at( tok::ident ) && peek().text == s; }

    const token& advance() { return _tokens[ _pos++ ]; }

    const token& expect( tok t, const char* what )
    {
        if ( !at( t ) )
            fail( std::string( "expected " ) + what );
        return advance();
    }

    void expect_end()
    {
        if ( !at( tok::end ) )
            fail( "unexpected '" + std::string( peek().text ) + "'" );
    }

    [[noreturn]] void fail( const std::string& message ) const
    {
        std::string found = at( tok::end ) ? "end of input" : "'" + std::string( peek().text ) + "'";
        throw parse_error( peek().pos, message + ", found " + found );
    }

    Formula implication()
    {
        Formula left = disjunction();
        if ( at( tok::arrow ) )
        {
            advance();
            return Formula::implication( std::move( left ), implication() );
        }
        if ( at( tok::iff ) )
        {
            advance();
            Formula right = implication();
            return Formula::conjunction( Formula::implication( left, right ), Formula::implication( right, left ) );
        }
        return left;
    }

    Formula disjunction()
    {
        Formula f = conjunction();
        while ( at( tok::bar ) )
        {
            advance();
            f = Formula::disjunction( std::move( f ), conjunction() );
        }
        return f;
    }

    Formula conjunction()
    {
        Formula f = unary();
        while ( at( tok::amp ) )
        {
            advance();
            f = Formula::conjunction( std::move( f ), unary() );
        }
        return f;
    }

    std::string agent()
    {
        const token& t = peek();
        if ( t.type != tok::ident || is_keyword( t.text ) )
            fail( "expected agent identifier" );
        std::string name{ t.text };
        if ( _agents != nullptr && !_agents->contains( name ) )
            throw unknown_agent_error( t.pos, "unknown agent '" + name + "'" );
        advance();
        return name;
    }

    // A term followed by ':' starts a justification formula; a bare '(' may
    // open either a parenthesised term or a grouped formula.
    std::optional< Formula > try_proves()
    {
        std::size_t saved = _pos;
        try
        {
            Term t = term();
            if ( at( tok::colon ) )
            {
                advance();
                return Formula::proves( std::move( t ), unary() );
            }
        }
        catch ( const parse_error& )
        {
        }
        _pos = saved;
        return std::nullopt;
    }

    Formula unary()
    {
        const token& t = peek();
        switch ( t.type )
        {
        case tok::tilde:
            advance();
            return Formula::negation( unary() );
        case tok::diamond:
            advance();
            return Formula::diamond( unary() );
        case tok::lbracket:
            advance();
            if ( at( tok::rbracket ) )
            {
                advance();
                return Formula::box( unary() );
            }
            {
                std::string j = agent();
                expect( tok::rbracket, "']'" );
                return Formula::stit( std::move( j ), unary() );
            }
        case tok::bang:
            return justification();
        case tok::lparen:
        {
            if ( auto f = try_proves() )
                return *f;
            advance();
            Formula inner = implication();
            expect( tok::rparen, "')'" );
            return inner;
        }
        case tok::ident:
            return identifier_led();
        default:
            fail( "expected formula" );
        }
    }

    Formula justification()
    {
        Term t = term();
        expect( tok::colon, "':' after proof term" );
        return Formula::proves( std::move( t ), unary() );
    }

    Formula identifier_led()
    {
        const token& t = peek();
        std::string_view s = t.text;
        if ( s == "K" )
        {
            advance();
            return Formula::know( unary() );
        }
        if ( s == "E" )
        {
            advance();
            if ( at( tok::ident ) && is_atom_name( peek().text ) )
                throw parse_error( peek().pos, "identifier class violation: 'E' expects a proof term, found atom '" +
                                                   std::string( peek().text ) + "'" );
            return Formula::presented( term_operand( "term expected after 'E'" ) );
        }
        if ( s == "false" )
        {
            advance();
            return Formula::falsum();
        }
        if ( s == "Prove" )
        {
            advance();
            expect( tok::lparen, "'(' after Prove" );
            std::string j = agent();
            expect( tok::comma, "','" );
            Term pt = term();
            expect( tok::comma, "','" );
            Formula body = implication();
            expect( tok::rparen, "')'" );
            return Formula::prove( std::move( j ), std::move( pt ), std::move( body ) );
        }
        if ( s == "Proven" )
        {
            advance();
            expect( tok::lparen, "'(' after Proven" );
            Term pt = term();
            expect( tok::comma, "','" );
            Formula body = implication();
            expect( tok::rparen, "')'" );
            return Formula::proven( std::move( pt ), std::move( body ) );
        }
        if ( is_atom_name( s ) )
        {
            advance();
            return Formula::atom( std::string( s ) );
        }
        if ( is_variable_name( s ) || is_constant_name( s ) )
            return justification();
        fail( "unknown identifier" );
    }

    Term term_operand( const char* message )
    {
        if ( at( tok::end ) )
            fail( message );
        return term();
    }

    Term term()
    {
        Term t = product();
        while ( at( tok::plus ) )
        {
            advance();
            t = Term::sum( std::move( t ), product() );
        }
        return t;
    }

    Term product()
    {
        Term t = checked();
        while ( at( tok::star ) )
        {
            advance();
            t = Term::app( std::move( t ), checked() );
        }
        return t;
    }

    Term checked()
    {
        const token& t = peek();
        if ( t.type == tok::bang )
        {
            advance();
            return Term::check( checked() );
        }
        if ( t.type == tok::lparen )
        {
            advance();
            Term inner = term();
            expect( tok::rparen, "')'" );
            return inner;
        }
        if ( t.type == tok::ident )
        {
            if ( is_variable_name( t.text ) )
            {
                advance();
                return Term::variable( std::string( t.text ) );
            }
            if ( is_constant_name( t.text ) )
            {
                advance();
                return Term::constant( std::string( t.text ) );
            }
            if ( is_atom_name( t.text ) )
                throw parse_error( t.pos, "identifier class violation: expected proof term, found atom '" +
                                              std::string( t.text ) + "'" );
        }
        fail( "term expected" );
    }

    std::vector< token > _tokens;
    std::size_t _pos = 0;
    const AgentSet* _agents;
};

} // namespace

Formula parse_formula( std::string_view text, const AgentSet* agents )
{
    return parser{ text, agents }.formula_to_end();
}

Formula parse_formula( std::string_view text, const AgentSet& agents ) { return parse_formula( text, &agents ); }

Term parse_term( std::string_view text ) { return parser{ text, nullptr }.term_to_end(); }

} // namespace jastit
