#pragma once

#include "jastit/ast.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace jastit
{

enum class AxiomGroup : std::uint8_t { a0, a1, a2, a3, a4, a5, a6, a7, a8, a9 };

inline constexpr AxiomGroup all_axiom_groups[] = { AxiomGroup::a0, AxiomGroup::a1, AxiomGroup::a2, AxiomGroup::a3,
                                                   AxiomGroup::a4, AxiomGroup::a5, AxiomGroup::a6, AxiomGroup::a7,
                                                   AxiomGroup::a8, AxiomGroup::a9 };

[[nodiscard]] std::string to_string( AxiomGroup g );
[[nodiscard]] std::optional< AxiomGroup > axiom_group_from_string( std::string_view s );

/// Which scheme groups count as axioms for constant-specification purposes.
enum class AxiomRange : std::uint8_t { a0_a9, a1_a9 };

[[nodiscard]] std::string to_string( AxiomRange r );
[[nodiscard]] std::optional< AxiomRange > axiom_range_from_string( std::string_view s );

class skeleton_too_large : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::size_t max_skeleton_letters = 20;

struct AxiomMatch
{
    AxiomGroup group;
    std::string pattern;  // e.g. "A1/T-box"
    std::vector< std::pair< std::string, std::string > > bindings;
};

/// Rewrites every <>A into ~[]~A. Idempotent.
[[nodiscard]] Formula normalize_diamonds( const Formula& f );

/// Classical tautology test on the boolean skeleton: maximal non-boolean
/// subformulas become letters. Throws skeleton_too_large beyond
/// max_skeleton_letters distinct letters.
[[nodiscard]] bool is_tautology_instance( const Formula& f );

/// Matches `f` against the schemes of one group, modulo <>-normalization.
/// A0 may throw skeleton_too_large.
[[nodiscard]] std::optional< AxiomMatch > is_axiom_instance( const Formula& f, AxiomGroup group );

/// First group in `range` that `f` instantiates. Oversized skeletons count
/// as non-instances here.
[[nodiscard]] std::optional< AxiomMatch > find_axiom_instance( const Formula& f,
                                                               AxiomRange range = AxiomRange::a0_a9 );

} // namespace jastit
