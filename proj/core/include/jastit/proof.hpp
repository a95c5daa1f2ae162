#pragma once

#include "jastit/ast.hpp"
#include "jastit/axioms.hpp"
#include "jastit/constant_spec.hpp"

#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace jastit
{

enum class Rule : std::uint8_t
{
    axiom,      // A0..A9
    mp,         // from i: A -> B and j: A infer B
    know_nec,   // from A infer KA
    cs,         // member of the constant specification
    r4,         // KA -> (~[]Et1 | ...) gives KA -> (~Et1 | ...)
    box_nec,    // from A infer []A (nec_enabled only)
    agent_nec,  // from A infer [j]A (nec_enabled only)
};

struct Justification
{
    Rule rule = Rule::axiom;
    AxiomGroup group = AxiomGroup::a0;  // rule == axiom
    std::size_t first = 0;              // mp: implication line; others: premise line
    std::size_t second = 0;             // mp: antecedent line
    std::string agent;                  // agent_nec

    static Justification axiom( AxiomGroup g ) { return { Rule::axiom, g, 0, 0, {} }; }
    static Justification modus_ponens( std::size_t impl, std::size_t ante ) { return { Rule::mp, {}, impl, ante, {} }; }
    static Justification know_nec( std::size_t i ) { return { Rule::know_nec, {}, i, 0, {} }; }
    static Justification constant_spec() { return { Rule::cs, {}, 0, 0, {} }; }
    static Justification r4( std::size_t i ) { return { Rule::r4, {}, i, 0, {} }; }
    static Justification box_nec( std::size_t i ) { return { Rule::box_nec, {}, i, 0, {} }; }
    static Justification agent_nec( std::string j, std::size_t i ) { return { Rule::agent_nec, {}, i, 0, std::move( j ) }; }
};

[[nodiscard]] std::string to_string( const Justification& j );

struct ProofStep
{
    std::size_t index = 0;  // 1-based, contiguous
    Formula formula;
    Justification justification;
};

struct ProofOptions
{
    bool nec_enabled = true;
    ConstantSpec cs = ConstantSpec::axiomatic();
};

struct HilbertProof
{
    std::vector< ProofStep > steps;
    ProofOptions options;
};

/// Reason codes carried by a rejection.
namespace reason
{
inline constexpr const char* bad_numbering = "bad-numbering";
inline constexpr const char* bad_reference = "bad-reference";
inline constexpr const char* defined_modality = "defined-modality";
inline constexpr const char* not_axiom = "not-axiom-instance";
inline constexpr const char* skeleton_too_large = "skeleton-too-large";
inline constexpr const char* mp_mismatch = "mp-mismatch";
inline constexpr const char* nec_mismatch = "nec-mismatch";
inline constexpr const char* nec_disabled = "nec-disabled";
inline constexpr const char* not_in_cs = "not-in-cs";
inline constexpr const char* r4_premise = "r4-premise-shape";
inline constexpr const char* r4_conclusion = "r4-conclusion-mismatch";
inline constexpr const char* empty_proof = "empty-proof";
} // namespace reason

struct ProofVerdict
{
    bool accepted = false;
    std::size_t bad_index = 0;  // 1-based; 0 when accepted
    std::string reason;         // one of jastit::reason
    std::string detail;
    std::vector< std::string > notes;  // per accepted step, e.g. "A1/T-box"

    explicit operator bool() const { return accepted; }
};

[[nodiscard]] ProofVerdict check_proof( const HilbertProof& proof );

/// Shape check for an inconsistency witness: the last line is C -> false
/// where C is a conjunction (any association) of members of `gamma`.
/// Expects a proof already accepted by check_proof.
[[nodiscard]] bool check_inconsistency_witness( std::span< const Formula > gamma, const HilbertProof& proof );

class proof_format_error : public std::runtime_error
{
public:
    proof_format_error( std::size_t line, std::size_t column, const std::string& message );

    [[nodiscard]] std::size_t line() const { return _line; }
    [[nodiscard]] std::size_t column() const { return _column; }

private:
    std::size_t _line;
    std::size_t _column;
};

/// Proof file format:
///
///   # comment
///   @cs empty|axiomatic|iterated
///   @nec on|off
///   1. p -> p ; A0
///   2. K(p -> p) ; KNEC 1
///
/// Justifications: A0..A9, MP i j, KNEC i, BOXNEC i, JNEC j i, CS, R4 i.
/// Directives must precede the first step.
[[nodiscard]] HilbertProof parse_proof( std::string_view text );
[[nodiscard]] std::string print_proof( const HilbertProof& proof );

} // namespace jastit
