#pragma once

#include "jastit/ast.hpp"

#include <stdexcept>
#include <string>
#include <string_view>

namespace jastit
{

/// Raised for malformed formula or term text. `position()` is the 0-based
/// byte offset of the offending token.
class parse_error : public std::runtime_error
{
public:
    parse_error( std::size_t position, const std::string& message );

    [[nodiscard]] std::size_t position() const { return _position; }
    [[nodiscard]] const std::string& detail() const { return _detail; }

private:
    std::size_t _position;
    std::string _detail;
};

/// `[j]` named an agent outside the declared agent set.
class unknown_agent_error : public parse_error
{
public:
    using parse_error::parse_error;
};

/// Concrete grammar, loosest binding first:
///
///   formula := impl
///   impl    := disj ( ('->' | '<->') impl )?          right-assoc
///   disj    := conj ( '|' conj )*                      left-assoc
///   conj    := unary ( '&' unary )*                    left-assoc
///   unary   := '~' unary | 'K' unary | '[]' unary | '<>' unary
///            | '[' agent ']' unary | term ':' unary | 'E' term
///            | 'Prove' '(' agent ',' term ',' formula ')'
///            | 'Proven' '(' term ',' formula ')'
///            | 'false' | atom | '(' formula ')'
///   term    := prod ( '+' prod )*   prod := check ( '*' check )*
///   check   := '!' check | var | const | '(' term ')'
///
/// `A <-> B` is read as `(A -> B) & (B -> A)`. When `agents` is given every
/// agent mentioned must belong to it.
[[nodiscard]] Formula parse_formula( std::string_view text, const AgentSet* agents = nullptr );
[[nodiscard]] Formula parse_formula( std::string_view text, const AgentSet& agents );

[[nodiscard]] Term parse_term( std::string_view text );

} // namespace jastit
