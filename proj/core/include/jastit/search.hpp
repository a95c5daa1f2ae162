#pragma once

#include "jastit/ast.hpp"
#include "jastit/model.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace jastit
{

/// random_model ran out of attempts.
class search_exhausted : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

struct SearchBounds
{
    struct exhaustive_mode
    {
    };
    struct randomized_mode
    {
        std::size_t samples = 100;
        std::uint64_t seed = 1;
    };

    std::size_t max_moments = 3;
    std::size_t min_moments = 1;
    AgentSet agents{ { "j1" } };
    // Terms that may appear in Act and carry base evidence.
    std::vector< Term > terms;
    std::vector< std::string > atoms;
    // Formulas A for which base evidence A in E(m, t) is enumerated.
    std::vector< Formula > evidence_formulas;
    // Further universe seeds. Their subterms and subformulas receive the
    // evidence forced by the closure properties but no base evidence.
    std::vector< Formula > universe_formulas;
    // Also enumerate R_e strictly above R (non-unirelational models).
    bool vary_re = false;
    ModelFlags flags;
    std::variant< exhaustive_mode, randomized_mode > mode = exhaustive_mode{};
    // Candidate structures random_model may reject before giving up.
    std::size_t attempt_budget = 1000;
};

/// Extends the universes of `b` with the agents, terms, atoms and evidence
/// bodies (the A of every t:A, Prove and Proven) occurring in `f`, and seeds
/// the universe with `f` itself.
[[nodiscard]] SearchBounds bounds_for( const Formula& f, SearchBounds b );

struct Shard
{
    std::size_t index = 0;
    std::size_t count = 1;
};

struct EnumerationStats
{
    std::size_t trees = 0;
    std::size_t frames = 0;  // (tree, choice, R, R_e) combinations
    std::size_t models = 0;
    bool stopped = false;  // the visitor asked to stop
};

/// Return false to stop the enumeration.
using ModelVisitor = std::function< bool( const JstitModel& ) >;

/// Every validator-clean normal model within the bounds, up to the
/// canonical breadth-first labelling m0, m1, ... of the tree.
///
/// Order: trees by moment count, then by canonical shape code; within a
/// tree, choice, then R, then R_e, then Act, then evidence, then the
/// valuation, each in a fixed lexicographic order. Evidence is enumerated
/// for the bound terms over `evidence_formulas`; entries for compound terms
/// of the universe are the least closure of that base. A shard visits the
/// trees whose index is congruent to `shard.index` modulo `shard.count`,
/// keeping the global order among them.
EnumerationStats enumerate_models( const SearchBounds& b, const ModelVisitor& visit, Shard shard = {} );

struct Witness
{
    JstitModel model;
    EvalPoint point;
};

/// First model (in enumeration order, or sample order in randomized mode)
/// with a point satisfying f, together with the first such point. The bounds
/// are extended with bounds_for first. `jobs` > 1 shards the exhaustive
/// search over threads; the result is the same witness as a sequential run.
[[nodiscard]] std::optional< Witness > find_model( const Formula& f, const SearchBounds& b, std::size_t jobs = 1 );

/// find_model for ~f; the point is one where f fails.
[[nodiscard]] std::optional< Witness > find_countermodel( const Formula& f, const SearchBounds& b,
                                                          std::size_t jobs = 1 );

/// A random validator-clean normal model with between min_moments and
/// max_moments moments, deterministic for a given generator state. Throws
/// search_exhausted when attempt_budget candidates were rejected.
[[nodiscard]] JstitModel random_model( const SearchBounds& b, std::mt19937_64& rng );
[[nodiscard]] JstitModel random_model( const SearchBounds& b, std::uint64_t seed );

/// Canonical codes of the unlabelled rooted trees with n nodes, in
/// enumeration order.
[[nodiscard]] std::vector< std::string > rooted_tree_codes( std::size_t n );

} // namespace jastit
