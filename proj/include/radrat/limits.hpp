#pragma once

#include <cstdint>

namespace radrat {

/// Process-wide work caps. Set once at startup (the CLI does this from flags and
/// RR_* environment variables); every operation only reads them.
struct Limits {
    /// Largest admissible basis dimension prod(q_i).
    std::uint64_t dimension_cap = 4096;
    /// First precision tried by sign determination; doubled on each retry.
    std::uint32_t sign_start_bits = 64;
    /// Precision at which sign determination gives up.
    std::uint32_t precision_cap_bits = 1u << 16;
    /// Largest box volume the enumeration oracle will walk.
    std::uint64_t enumeration_cap = 10'000'000;
    /// Trial division runs over candidate divisors below this bound.
    std::uint64_t trial_division_bound = 1u << 16;
    /// Pollard-rho iteration budget per split attempt.
    std::uint64_t rho_iteration_budget = 2'000'000;
};

inline Limits& limits() {
    static Limits instance;
    return instance;
}

} // namespace radrat
