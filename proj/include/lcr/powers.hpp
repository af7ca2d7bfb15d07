#pragma once

#include <lcr/caps.hpp>
#include <lcr/label_cover.hpp>

#include <cstdint>
#include <vector>

namespace lcr {

enum class PowerMode { Reduced, Full };

// Index bookkeeping for X^k: power variable t corresponds to the tuple of base variables
// whose mixed-radix digits (first most significant) spell t, and likewise for elements.
class PowerMeta {
public:
    PowerMeta() = default;
    PowerMeta(std::uint32_t k, std::vector<std::uint32_t> base_domain_sizes);

    auto k() const -> std::uint32_t { return _k; }
    auto base_variables() const -> std::uint32_t { return static_cast<std::uint32_t>(_sizes.size()); }
    auto power_variables() const -> std::uint64_t;

    auto tuple(std::uint64_t index) const -> std::vector<std::uint32_t>;
    auto index(const std::vector<std::uint32_t> & tuple) const -> std::uint64_t;

    auto domain_size(const std::vector<std::uint32_t> & tuple) const -> std::uint64_t;
    // Base element indices of element e of the power variable for tuple.
    auto element(const std::vector<std::uint32_t> & tuple, std::uint64_t e) const -> std::vector<std::uint32_t>;
    auto element_index(const std::vector<std::uint32_t> & tuple, const std::vector<std::uint32_t> & elems) const
        -> std::uint64_t;

private:
    std::uint32_t _k = 0;
    std::vector<std::uint32_t> _sizes;
};

struct PowerInstance {
    LcInstance instance;
    PowerMeta meta;
    std::size_t type1_constraints = 0;
    std::size_t type2_constraints = 0;
};

// The k-th saturated power. Constraints of type (1) come first, then type (2) grouped by
// variable tuple and ordered by the map sigma written as (sigma(1), ..., sigma(k)).
// Throws Error(LevelZero) for k = 0 and Error(SizeCapExceeded) past caps.power_vars power
// variables or caps.unknowns power points.
auto saturated_power(const LcInstance & d, std::uint32_t k, PowerMode mode = PowerMode::Reduced,
    const Caps & caps = Caps{}) -> PowerInstance;

// Every map [k] -> [k] (0-based) in lexicographic order.
auto all_self_maps(std::uint32_t k) -> std::vector<std::vector<std::uint32_t>>;

// One LC variable per subset U of CSP variables with |U| <= k (by size, then
// lexicographically), with the partial solutions on U as domain and one restriction
// constraint per proper inclusion U < U'.
auto partial_power(const CspInstance & csp, std::uint32_t k, const Caps & caps = Caps{}) -> LcInstance;

auto to_json(const PowerMeta & meta) -> Json;

}
