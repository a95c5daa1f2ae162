#pragma once

#include "jastit/ast.hpp"
#include "jastit/model.hpp"

#include <optional>
#include <stdexcept>
#include <unordered_map>

namespace jastit
{

/// A formula mentions an agent the model does not declare.
class evaluation_error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

struct EvalOptions
{
    // literal: A in E(m,t) and A at every point R_e-reachable from m.
    // simplified: A in E(m,t) and KA (agrees with literal when R_e = R).
    enum class proves_clause : std::uint8_t { literal, simplified };
    // direct: the satisfaction clauses of Prove / Proven.
    // expanded: evaluate expand_defined of the node instead.
    enum class defined_clause : std::uint8_t { direct, expanded };

    proves_clause proves = proves_clause::literal;
    defined_clause defined = defined_clause::direct;
};

/// Evaluates formulas over one model by computing truth sets (one bit per
/// evaluation point, in JstitModel::points() order). Truth sets of
/// subformulas are cached, so evaluating many related formulas against the
/// same model is cheap. Not thread-safe; use one evaluator per thread.
class Evaluator
{
public:
    explicit Evaluator( const JstitModel& m, EvalOptions options = {} );

    [[nodiscard]] const Bits& truth_set( const Formula& f );
    [[nodiscard]] bool satisfies( EvalPoint at, const Formula& f );
    /// First point (in point order) where f fails, if any.
    [[nodiscard]] std::optional< EvalPoint > first_failure( const Formula& f );

    [[nodiscard]] const JstitModel& model() const { return _m; }

private:
    Bits compute( const Formula& f );
    Bits moment_wide( const std::vector< char >& per_moment ) const;
    std::vector< char > holds_everywhere_at( const Bits& s ) const;
    Bits proves_set( const Term& t, const Formula& a );
    std::size_t agent_index( const std::string& agent ) const;

    const JstitModel& _m;
    EvalOptions _options;
    std::unordered_map< Formula, Bits > _cache;
};

[[nodiscard]] bool satisfies( const JstitModel& m, EvalPoint at, const Formula& f, EvalOptions options = {} );

struct Validity
{
    bool valid = true;
    std::optional< EvalPoint > failing;  // first failing point in point order
};

[[nodiscard]] Validity valid_in_model( const JstitModel& m, const Formula& f, EvalOptions options = {} );

/// Replaces Prove(j,t,A) by [j]E t & <>~E t & t:A and Proven(t,A) by
/// []E t & t:A, recursively.
[[nodiscard]] Formula expand_defined( const Formula& f );

} // namespace jastit
