#include "jastit/printer.hpp"

#include <cctype>

namespace jastit
{

namespace
{

// Binding strength; larger binds tighter.
enum prec : int
{
    p_impl = 1,
    p_disj = 2,
    p_conj = 3,
    p_prefix = 4,
};

enum term_prec : int
{
    tp_sum = 1,
    tp_app = 2,
    tp_check = 3,
};

void term_to( std::string& out, const Term& t, int context )
{
    switch ( t.type() )
    {
    case Term::kind::variable:
    case Term::kind::constant:
        out += t.name();
        return;
    case Term::kind::check:
        out += '!';
        term_to( out, t.inner(), tp_check );
        return;
    case Term::kind::sum:
    case Term::kind::app:
    {
        const bool sum = t.type() == Term::kind::sum;
        const int own = sum ? tp_sum : tp_app;
        const bool wrap = own < context;
        if ( wrap )
            out += '(';
        term_to( out, t.left(), own );
        out += sum ? " + " : "*";
        term_to( out, t.right(), own + 1 );
        if ( wrap )
            out += ')';
        return;
    }
    }
}

bool starts_with_word( const std::string& s )
{
    return !s.empty() && ( std::isalnum( static_cast< unsigned char >( s.front() ) ) != 0 || s.front() == '_' );
}

void formula_to( std::string& out, const Formula& f, int context );

void prefixed( std::string& out, const char* op, const Formula& operand )
{
    std::string inner;
    formula_to( inner, operand, p_prefix );
    out += op;
    if ( std::isalpha( static_cast< unsigned char >( out.back() ) ) != 0 && starts_with_word( inner ) )
        out += ' ';
    out += inner;
}

void formula_to( std::string& out, const Formula& f, int context )
{
    using K = Formula::kind;
    switch ( f.type() )
    {
    case K::atom:
        out += f.name();
        return;
    case K::falsum:
        out += "false";
        return;
    case K::negation:
        prefixed( out, "~", f.body() );
        return;
    case K::box:
        prefixed( out, "[]", f.body() );
        return;
    case K::diamond:
        prefixed( out, "<>", f.body() );
        return;
    case K::know:
        prefixed( out, "K", f.body() );
        return;
    case K::stit:
        prefixed( out, ( "[" + f.agent() + "]" ).c_str(), f.body() );
        return;
    case K::proves:
        term_to( out, f.term(), tp_sum );
        out += ':';
        formula_to( out, f.body(), p_prefix );
        return;
    case K::presented:
        out += "E ";
        term_to( out, f.term(), tp_sum );
        return;
    case K::prove:
        out += "Prove(" + f.agent() + ", ";
        term_to( out, f.term(), tp_sum );
        out += ", ";
        formula_to( out, f.body(), p_impl );
        out += ')';
        return;
    case K::proven:
        out += "Proven(";
        term_to( out, f.term(), tp_sum );
        out += ", ";
        formula_to( out, f.body(), p_impl );
        out += ')';
        return;
    case K::conjunction:
    case K::disjunction:
    case K::implication:
    {
        int own = f.is( K::implication ) ? p_impl : f.is( K::disjunction ) ? p_disj : p_conj;
        const char* op = f.is( K::implication ) ? " -> " : f.is( K::disjunction ) ? " | " : " & ";
        // '->' associates to the right, '|' and '&' to the left.
        int left_ctx = f.is( K::implication ) ? own + 1 : own;
        int right_ctx = f.is( K::implication ) ? own : own + 1;
        bool wrap = own < context;
        if ( wrap )
            out += '(';
        formula_to( out, f.left(), left_ctx );
        out += op;
        formula_to( out, f.right(), right_ctx );
        if ( wrap )
            out += ')';
        return;
    }
    }
}

} // namespace

std::string print_formula( const Formula& f )
{
    std::string out;
    formula_to( out, f, p_impl );
    return out;
}

std::string print_term( const Term& t )
{
    std::string out;
    term_to( out, t, tp_sum );
    return out;
}

std::ostream& operator<<( std::ostream& os, const Formula& f ) { return os << print_formula( f ); }
std::ostream& operator<<( std::ostream& os, const Term& t ) { return os << print_term( t ); }

} // namespace jastit
