#pragma once

#include <json.hpp>

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace lcr {

// Domain labels are metadata: atoms (strings or integers) or arrays of labels for
// tuple-valued domains. All algorithms work on positions.
using Json = nlohmann::ordered_json;
using Label = Json;

struct Variable {
    std::string name;
    std::vector<Label> domain;
};

struct CspConstraint {
    std::vector<std::uint32_t> scope;
    // Tuples of domain indices, one entry per scope position.
    std::vector<std::vector<std::uint32_t>> relation;
};

struct CspInstance {
    std::vector<Variable> variables;
    std::vector<CspConstraint> constraints;

    // Checks scope indices and tuple ranges and removes duplicate tuples (first occurrence
    // kept). Throws Error(InvalidInput).
    auto normalize() -> void;
};

struct LcConstraint {
    std::uint32_t target = 0;
    std::uint32_t source = 0;
    // map[b] is the target-domain index assigned to source-domain index b.
    std::vector<std::uint32_t> map;
};

struct LcInstance {
    std::vector<Variable> variables;
    std::vector<LcConstraint> constraints;

    // Checks indices and map tables; throws Error(InvalidInput).
    auto validate() const -> void;

    auto domain_size(std::uint32_t x) const -> std::uint32_t
    {
        return static_cast<std::uint32_t>(variables[x].domain.size());
    }
};

struct Point {
    std::uint32_t var = 0;
    std::uint32_t elem = 0;

    auto operator<=>(const Point &) const = default;
};

auto domain_sizes(const LcInstance & d) -> std::vector<std::uint32_t>;

// Global numbering of points in (variable, element) lexicographic order.
class PointIndex {
public:
    explicit PointIndex(const LcInstance & d);
    explicit PointIndex(const std::vector<std::uint32_t> & domain_sizes);

    auto size() const -> std::uint32_t { return _total; }
    auto id(Point p) const -> std::uint32_t { return _offset[p.var] + p.elem; }
    auto id(std::uint32_t var, std::uint32_t elem) const -> std::uint32_t { return _offset[var] + elem; }
    auto point(std::uint32_t id) const -> Point { return {_var_of[id], id - _offset[_var_of[id]]}; }
    auto var_of(std::uint32_t id) const -> std::uint32_t { return _var_of[id]; }
    auto offset(std::uint32_t var) const -> std::uint32_t { return _offset[var]; }
    auto domain_size(std::uint32_t var) const -> std::uint32_t { return _offset[var + 1] - _offset[var]; }
    auto variables() const -> std::uint32_t { return static_cast<std::uint32_t>(_offset.size() - 1); }

private:
    std::vector<std::uint32_t> _offset;
    std::vector<std::uint32_t> _var_of;
    std::uint32_t _total = 0;
};

using Assignment = std::vector<std::uint32_t>;

auto lc_of_csp(const CspInstance & csp) -> LcInstance;

// Throws Error(ShapeMismatch) when the assignment has the wrong length or an index is out
// of range.
auto check_lc_solution(const LcInstance & d, const Assignment & a) -> bool;
auto check_csp_solution(const CspInstance & csp, const Assignment & a) -> bool;

// Extends a CSP solution to lc_of_csp by choosing, for every constraint, the index of the
// relation tuple it realizes. Throws Error(InvalidInput) if the assignment is not a solution.
auto extend_csp_solution(const CspInstance & csp, const Assignment & a) -> Assignment;

// Components of the shape graph, each sorted, ordered by their least variable.
auto connected_components(const LcInstance & d) -> std::vector<std::vector<std::uint32_t>>;
auto is_connected(const LcInstance & d) -> bool;

// The sub-instance on the given variables (in the given order) with every constraint whose
// endpoints both lie inside.
auto induced_subinstance(const LcInstance & d, const std::vector<std::uint32_t> & vars) -> LcInstance;

auto disjoint_union(const LcInstance & a, const LcInstance & b) -> LcInstance;

// Maximal scope length over all constraints (0 without constraints).
auto max_arity(const CspInstance & csp) -> std::size_t;

}
