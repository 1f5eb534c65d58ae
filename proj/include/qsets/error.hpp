#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qsets {

/// Failure categories raised by constructors and decision procedures.
enum class Errc {
    malformed_table,
    not_a_lattice,
    not_associative,
    not_distributive,
    not_commutative,
    not_symmetric,
    not_transitive,
    extent_law_fails,
    not_a_morphism,
    property_required,
    bad_module_arith,
    domain_mismatch,
    too_large,
    strength_required,
    not_scott_complete,
    not_gluing_complete,
    not_a_qset,
    no_upper_approximation,
    parse_error,
};

constexpr std::string_view errc_name(Errc c) noexcept
{
    switch (c) {
    case Errc::malformed_table: return "MalformedTable";
    case Errc::not_a_lattice: return "NotALattice";
    case Errc::not_associative: return "NotAssociative";
    case Errc::not_distributive: return "NotDistributive";
    case Errc::not_commutative: return "NotCommutative";
    case Errc::not_symmetric: return "NotSymmetric";
    case Errc::not_transitive: return "NotTransitive";
    case Errc::extent_law_fails: return "ExtentLawFails";
    case Errc::not_a_morphism: return "NotAMorphism";
    case Errc::property_required: return "PropertyRequired";
    case Errc::bad_module_arith: return "BadModuleArith";
    case Errc::domain_mismatch: return "DomainMismatch";
    case Errc::too_large: return "TooLarge";
    case Errc::strength_required: return "StrengthRequired";
    case Errc::not_scott_complete: return "NotScottComplete";
    case Errc::not_gluing_complete: return "NotGluingComplete";
    case Errc::not_a_qset: return "NotAQSet";
    case Errc::no_upper_approximation: return "NoUpperApproximation";
    case Errc::parse_error: return "ParseError";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& detail)
        : std::runtime_error(std::string(errc_name(code)) + ": " + detail), code_(code)
    {
    }

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

} // namespace qsets
