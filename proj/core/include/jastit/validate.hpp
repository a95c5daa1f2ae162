#pragma once

#include "jastit/model.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace jastit
{

// Constraint names used in reports.
namespace constraint
{
inline constexpr std::string_view historical_connection = "Historical connection";
inline constexpr std::string_view no_backward_branching = "No backward branching";
inline constexpr std::string_view no_choice_between_undivided = "No choice between undivided histories";
inline constexpr std::string_view independence_of_agents = "Independence of agents";
inline constexpr std::string_view evidence_monotonicity = "Monotonicity of evidence";
inline constexpr std::string_view evidence_closure = "Evidence closure properties";
inline constexpr std::string_view expansion = "Expansion of presented proofs";
inline constexpr std::string_view no_new_proofs = "No new proofs guaranteed";
inline constexpr std::string_view divide = "Presenting a new proof makes histories divide";
inline constexpr std::string_view future_matters = "Future always matters";
inline constexpr std::string_view transparency = "Presented proofs are epistemically transparent";
// Structural conditions from the model definition itself.
inline constexpr std::string_view r_subset_re = "R included in R_e";
inline constexpr std::string_view choice_partition = "Choice partition";
inline constexpr std::string_view unirelational = "Unirelational";
} // namespace constraint

struct Violation
{
    std::string constraint;
    // Moments, histories (by id), agents, terms and formulas, printed.
    std::vector< std::string > witness;

    friend bool operator==( const Violation&, const Violation& ) = default;
};

struct ValidationReport
{
    std::vector< Violation > violations;

    [[nodiscard]] bool clean() const { return violations.empty(); }
    /// Distinct constraint names in first-occurrence order.
    [[nodiscard]] std::vector< std::string > constraints() const;
};

/// Runs every check and collects all violations. Closure properties of the
/// evidence function are checked over the model's finite universes.
[[nodiscard]] ValidationReport validate( const JstitModel& m );

/// Cheaper yes/no variant that stops at the first violation.
[[nodiscard]] bool is_valid_model( const JstitModel& m );

} // namespace jastit
