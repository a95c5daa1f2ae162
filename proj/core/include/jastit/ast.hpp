#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace jastit
{

// Identifier classes follow the usual letter conventions: proof variables
// start with one of x,y,z,w,u, proof constants with a,b,c,d and atoms with
// p,q,r,s. Each may carry a decimal suffix (x1, c12, p3).
[[nodiscard]] bool is_variable_name( std::string_view name );
[[nodiscard]] bool is_constant_name( std::string_view name );
[[nodiscard]] bool is_atom_name( std::string_view name );
[[nodiscard]] bool is_agent_name( std::string_view name );

/// Proof polynomial: x | c | s + t | s * t | !t.
///
/// Immutable value with shared structure. Copies are cheap, equality and
/// ordering are structural.
class Term
{
public:
    enum class kind : std::uint8_t { variable, constant, sum, app, check };

    static Term variable( std::string name );
    static Term constant( std::string name );
    static Term sum( Term left, Term right );
    static Term app( Term left, Term right );
    static Term check( Term inner );

    [[nodiscard]] kind type() const;
    [[nodiscard]] const std::string& name() const;   // variable / constant only
    [[nodiscard]] const Term& left() const;          // sum / app
    [[nodiscard]] const Term& right() const;         // sum / app
    [[nodiscard]] const Term& inner() const;         // check

    [[nodiscard]] bool is_variable() const { return type() == kind::variable; }
    [[nodiscard]] bool is_constant() const { return type() == kind::constant; }

    [[nodiscard]] std::size_t hash() const;
    [[nodiscard]] std::size_t size() const;

    friend bool operator==( const Term& a, const Term& b );
    friend std::strong_ordering operator<=>( const Term& a, const Term& b );

    struct node;

private:
    explicit Term( std::shared_ptr< const node > n ) : _node{ std::move( n ) } {}

    std::shared_ptr< const node > _node;
};

/// Formula of the logic, including the derived connectives (|, ->, false,
/// <>) and the defined proving modalities Prove(j,t,A) / Proven(t,A) as
/// first-class nodes.
class Formula
{
public:
    enum class kind : std::uint8_t
    {
        atom,
        falsum,
        negation,
        conjunction,
        disjunction,
        implication,
        stit,       // [j]A
        box,        // []A
        diamond,    // <>A
        know,       // KA
        proves,     // t:A
        presented,  // E t
        prove,      // Prove(j, t, A)
        proven,     // Proven(t, A)
    };

    /// Defaults to `false`.
    Formula();

    static Formula atom( std::string name );
    static Formula falsum();
    static Formula negation( Formula f );
    static Formula conjunction( Formula l, Formula r );
    static Formula disjunction( Formula l, Formula r );
    static Formula implication( Formula l, Formula r );
    static Formula stit( std::string agent, Formula f );
    static Formula box( Formula f );
    static Formula diamond( Formula f );
    static Formula know( Formula f );
    static Formula proves( Term t, Formula f );
    static Formula presented( Term t );
    static Formula prove( std::string agent, Term t, Formula f );
    static Formula proven( Term t, Formula f );

    [[nodiscard]] kind type() const;
    [[nodiscard]] bool is( kind k ) const { return type() == k; }

    // Atom name or agent of stit / prove.
    [[nodiscard]] const std::string& name() const;
    [[nodiscard]] const std::string& agent() const { return name(); }
    // Term of proves / presented / prove / proven.
    [[nodiscard]] const Term& term() const;
    // Operand of unary nodes and the body of proves / prove / proven.
    [[nodiscard]] const Formula& body() const;
    [[nodiscard]] const Formula& left() const;
    [[nodiscard]] const Formula& right() const;

    [[nodiscard]] bool is_binary() const;
    [[nodiscard]] bool is_boolean() const;  // negation, binary connectives, falsum

    [[nodiscard]] std::size_t hash() const;
    [[nodiscard]] std::size_t size() const;

    friend bool operator==( const Formula& a, const Formula& b );
    friend std::strong_ordering operator<=>( const Formula& a, const Formula& b );

    struct node;

private:
    explicit Formula( std::shared_ptr< const node > n ) : _node{ std::move( n ) } {}

    std::shared_ptr< const node > _node;
};

struct Term::node
{
    Term::kind type;
    std::string name;
    std::vector< Term > args;
    std::size_t hash;
    std::size_t size;
};

struct Formula::node
{
    Formula::kind type;
    std::string name;
    std::optional< Term > term;
    std::vector< Formula > args;
    std::size_t hash;
    std::size_t size;
};

/// Ordered list of distinct agent identifiers.
class AgentSet
{
public:
    AgentSet() = default;
    explicit AgentSet( std::vector< std::string > agents );

    [[nodiscard]] const std::vector< std::string >& names() const { return _agents; }
    [[nodiscard]] std::size_t size() const { return _agents.size(); }
    [[nodiscard]] bool empty() const { return _agents.empty(); }
    [[nodiscard]] bool contains( std::string_view agent ) const;
    [[nodiscard]] std::optional< std::size_t > index_of( std::string_view agent ) const;

    friend bool operator==( const AgentSet&, const AgentSet& ) = default;

private:
    std::vector< std::string > _agents;
};

} // namespace jastit

template<>
struct std::hash< jastit::Term >
{
    std::size_t operator()( const jastit::Term& t ) const noexcept { return t.hash(); }
};

template<>
struct std::hash< jastit::Formula >
{
    std::size_t operator()( const jastit::Formula& f ) const noexcept { return f.hash(); }
};
