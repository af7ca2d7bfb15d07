#pragma once

#include <cstdint>
#include <string>

namespace lcr {

// Size limits shared by the power construction, the solvers and the brute-force oracles.
struct Caps {
    std::uint64_t power_vars = 100'000;
    std::uint64_t unknowns = 200'000;
    std::uint64_t nonzeros = 4'000'000;
    std::uint64_t brute_force = 10'000'000;
};

// Parses "key=value,key=value" with keys power_vars, unknowns, nonzeros, brute_force.
// Unknown keys or malformed values throw Error(InvalidInput).
auto parse_caps(const std::string & text, Caps base = {}) -> Caps;

// Defaults overridden by the LCR_CAPS environment variable when it is set.
auto caps_from_env() -> Caps;

}
