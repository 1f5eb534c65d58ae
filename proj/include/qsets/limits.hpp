#pragma once

#include "error.hpp"

#include <cmath>
#include <cstddef>
#include <string>

namespace qsets {

/// Size guards for the exhaustive procedures.
struct Limits {
    std::size_t max_family_carrier = 16; ///< carriers whose subsets are enumerated
    std::size_t max_rel_carrier = 4;     ///< |X|, |Y| for relational hom enumeration
    std::size_t max_rel_quantale = 6;    ///< |Q| for relational hom enumeration
    double max_search_space = 1e8;       ///< raw product bound for DFS enumerations
    std::size_t max_double_enum = 8;     ///< |𝔖X| above which 𝔖X is certified, not enumerated
    bool force_strength = false;         ///< run strength-gated constructions anyway
};

namespace detail {

inline void guard_space(double base, double exponent, const Limits& lim, const char* what)
{
    const double space = std::pow(base, exponent);
    if (space > lim.max_search_space)
        throw Error(Errc::too_large, std::string(what) + ": search space " + std::to_string(space) +
                                         " exceeds the configured bound");
}

} // namespace detail

} // namespace qsets
