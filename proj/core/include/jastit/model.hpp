#pragma once

#include "jastit/ast.hpp"
#include "jastit/axioms.hpp"
#include "jastit/constant_spec.hpp"
#include "jastit/universe.hpp"

#include <boost/dynamic_bitset.hpp>

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace jastit
{

using MomentId = std::size_t;
using HistoryId = std::size_t;
using Bits = boost::dynamic_bitset<>;

class model_error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// A maximal chain of moments, named after its last moment.
struct History
{
    MomentId leaf = 0;
    std::vector< MomentId > chain;  // in temporal order
    std::string id;                 // leaf name; "#k" suffix only on invalid trees
};

struct EvalPoint
{
    MomentId moment = 0;
    HistoryId history = 0;

    friend bool operator==( const EvalPoint&, const EvalPoint& ) = default;
    friend auto operator<=>( const EvalPoint&, const EvalPoint& ) = default;
};

struct ModelFlags
{
    bool normal = true;
    ConstantSpec cs = ConstantSpec::axiomatic();
    bool unirelational = true;
    AxiomRange normality_range = AxiomRange::a0_a9;
};

struct EvidenceEntry
{
    std::string moment;
    Term term;
    Formula formula;
};

using NamePair = std::pair< std::string, std::string >;

/// Name-level description of a model, one field per component of the JSON
/// document. `choice` maps moment -> agent -> cells of history ids, `act`
/// maps moment -> history id -> terms, `valuation` maps atom -> (moment,
/// history id) pairs.
struct ModelDescription
{
    std::vector< std::string > agents;
    std::vector< std::string > moments;
    std::vector< NamePair > cover;
    std::vector< NamePair > r;
    std::optional< std::vector< NamePair > > re;
    std::map< std::string, std::map< std::string, std::vector< std::vector< std::string > > > > choice;
    std::map< std::string, std::map< std::string, std::vector< Term > > > act;
    std::vector< EvidenceEntry > evidence;
    std::map< std::string, std::vector< NamePair > > valuation;
    std::vector< Term > extra_terms;
    std::vector< Formula > extra_formulas;
    ModelFlags flags;
};

/// Indexed finite universes plus the constant-specification membership table
/// for every (constant, formula) pair inside them.
class UniverseIndex
{
public:
    UniverseIndex( const Universe& u, const ModelFlags& flags );

    [[nodiscard]] const std::vector< Term >& terms() const { return _terms; }
    [[nodiscard]] const std::vector< Formula >& formulas() const { return _formulas; }
    [[nodiscard]] std::optional< std::size_t > term_index( const Term& t ) const;
    [[nodiscard]] std::optional< std::size_t > formula_index( const Formula& f ) const;
    // Formulas A with t:A admitted by the constant specification (constant terms only).
    [[nodiscard]] const Bits& cs_admitted( std::size_t term ) const { return _cs[ term ]; }

    [[nodiscard]] bool covers( const Universe& u ) const;

private:
    std::vector< Term > _terms;
    std::vector< Formula > _formulas;
    std::unordered_map< Term, std::size_t > _term_ix;
    std::unordered_map< Formula, std::size_t > _formula_ix;
    std::vector< Bits > _cs;
};

/// Finite jstit model. Immutable after construction; every query is
/// read-only.
///
/// Moments are indexed in declaration order. Histories are the maximal
/// chains of the order, sorted by the position of their last moment.
/// Evaluation points are (moment, history) pairs with the history passing
/// through the moment, sorted by moment then history, so the points of one
/// moment form a contiguous block.
class JstitModel
{
public:
    /// Resolves names, closes cover / r / re, derives histories and the
    /// universes. Throws model_error on structural defects. A non-null
    /// `universe` is used instead of recomputing it from the seeds; it must
    /// cover them.
    static JstitModel build( ModelDescription description, std::shared_ptr< const UniverseIndex > universe = {} );

    [[nodiscard]] const ModelDescription& description() const { return *_desc; }
    [[nodiscard]] const ModelFlags& flags() const { return _desc->flags; }
    [[nodiscard]] const AgentSet& agents() const { return _agents; }

    [[nodiscard]] std::size_t moment_count() const { return _desc->moments.size(); }
    [[nodiscard]] const std::string& moment_name( MomentId m ) const { return _desc->moments[ m ]; }
    [[nodiscard]] std::optional< MomentId > find_moment( std::string_view name ) const;

    // m <= m' in the tree order (reflexive).
    [[nodiscard]] bool before_eq( MomentId a, MomentId b ) const { return _order[ a ][ b ]; }
    [[nodiscard]] bool before( MomentId a, MomentId b ) const { return a != b && _order[ a ][ b ]; }
    [[nodiscard]] bool r( MomentId a, MomentId b ) const { return _r[ a ][ b ]; }
    [[nodiscard]] bool re( MomentId a, MomentId b ) const { return _re[ a ][ b ]; }

    [[nodiscard]] const std::vector< History >& histories() const { return _histories; }
    [[nodiscard]] const std::vector< HistoryId >& histories_through( MomentId m ) const { return _through[ m ]; }
    [[nodiscard]] bool passes( HistoryId h, MomentId m ) const { return _passes[ h ][ m ]; }
    /// Unique history with this id; throws model_error when unknown.
    [[nodiscard]] HistoryId history_by_id( std::string_view id ) const;

    // Choice partition of H_m for agent index `agent`; vacuous when undeclared.
    [[nodiscard]] const std::vector< std::vector< HistoryId > >& choice( MomentId m, std::size_t agent ) const
    {
        return _choice[ m ][ agent ];
    }
    // Cell of `h` in choice(m, agent): its first cell containing h, else {h}.
    [[nodiscard]] const std::vector< HistoryId >& choice_cell( MomentId m, std::size_t agent, HistoryId h ) const;

    [[nodiscard]] const std::vector< EvalPoint >& points() const { return _points; }
    [[nodiscard]] std::size_t point_index( EvalPoint p ) const;
    [[nodiscard]] bool is_point( EvalPoint p ) const;
    [[nodiscard]] std::pair< std::size_t, std::size_t > point_range( MomentId m ) const { return _moment_points[ m ]; }

    [[nodiscard]] const UniverseIndex& universe() const { return *_universe; }
    [[nodiscard]] const std::shared_ptr< const UniverseIndex >& shared_universe() const { return _universe; }

    /// t in Act(m, h).
    [[nodiscard]] bool act_contains( EvalPoint p, const Term& t ) const;
    [[nodiscard]] bool act_contains_index( std::size_t point, std::size_t term ) const { return _act[ point ][ term ]; }
    [[nodiscard]] const Bits& act_bits( std::size_t point ) const { return _act[ point ]; }

    /// A in E(m, t): an explicit evidence triple, or t a constant whose
    /// membership the constant specification grants (normal models only).
    [[nodiscard]] bool evidence_holds( MomentId m, const Term& t, const Formula& a ) const;
    [[nodiscard]] bool evidence_holds_index( MomentId m, std::size_t term, std::size_t formula ) const;
    [[nodiscard]] bool explicit_evidence( MomentId m, std::size_t term, std::size_t formula ) const
    {
        return _evidence[ m ][ term ][ formula ];
    }

    /// Points where the atom holds, or nullptr when the valuation is empty.
    [[nodiscard]] const Bits* valuation( std::string_view atom ) const;

private:
    JstitModel() = default;

    std::shared_ptr< const ModelDescription > _desc;
    AgentSet _agents;
    std::unordered_map< std::string, MomentId > _moment_ix;
    std::vector< std::vector< char > > _order, _r, _re;
    std::vector< History > _histories;
    std::vector< std::vector< HistoryId > > _through;
    std::vector< std::vector< char > > _passes;
    std::vector< std::vector< std::vector< std::vector< HistoryId > > > > _choice;  // [m][agent] -> cells
    std::vector< EvalPoint > _points;
    std::vector< std::vector< std::size_t > > _point_ix;                      // [m][h], npos when h not in H_m
    std::vector< std::pair< std::size_t, std::size_t > > _moment_points;       // [begin, end)
    std::shared_ptr< const UniverseIndex > _universe;
    std::vector< Bits > _act;                          // per point, over universe terms
    std::vector< std::vector< Bits > > _evidence;      // [m][term] over universe formulas
    std::map< std::string, Bits, std::less<> > _valuation;  // atom -> points
};

/// Maximal chains of a finite partial order given as a reflexive-transitive
/// relation matrix. Works on any partial order, tree-shaped or not.
[[nodiscard]] std::vector< std::vector< MomentId > > maximal_chains( const std::vector< std::vector< char > >& order );

/// Reflexive-transitive closure of an edge list over n elements.
[[nodiscard]] std::vector< std::vector< char > > preorder_closure( std::size_t n,
                                                                   const std::vector< std::pair< MomentId, MomentId > >& edges );

} // namespace jastit
