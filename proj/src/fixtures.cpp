#include <lcr/fixtures.hpp>

namespace lcr::fixtures {

namespace {
    auto binary_domain() -> std::vector<Label> { return {Label(0), Label(1)}; }
}

auto three_constraint_csp() -> CspInstance
{
    CspInstance csp;
    csp.variables = {{"x", binary_domain()}, {"y", binary_domain()}, {"z", binary_domain()}};
    csp.constraints = {
        {{0}, {{1}}},
        {{0, 1}, {{0, 1}, {1, 0}}},
        {{1, 2}, {{0, 0}, {0, 1}, {1, 1}}},
    };
    csp.normalize();
    return csp;
}

auto three_constraint_solution() -> Assignment
{
    return {1, 0, 0, 0, 1, 0};
}

auto three_constraint_ac_domains() -> std::vector<std::vector<std::uint32_t>>
{
    return {{1}, {0}, {0, 1}, {0}, {1}, {0, 1}};
}

auto cycle_csp() -> CspInstance
{
    CspInstance csp;
    csp.variables = {{"x", binary_domain()}, {"y", binary_domain()}, {"z", binary_domain()}, {"u", binary_domain()}};
    std::vector<std::vector<std::uint32_t>> leq = {{0, 0}, {0, 1}, {1, 1}};
    csp.constraints = {
        {{0, 1}, leq},
        {{1, 2}, leq},
        {{2, 3}, leq},
        {{3, 0}, {{0, 1}}},
    };
    csp.normalize();
    return csp;
}

auto cycle_z2_solution() -> std::vector<std::vector<std::uint32_t>>
{
    return {{0, 1}, {0, 1}, {1, 0}, {1, 0}, {0, 0, 1}, {1, 1, 1}, {1, 0, 0}, {1}};
}

auto cycle_level2_matrix() -> std::vector<std::vector<std::uint32_t>>
{
    // Point order: x0 x1 y0 y1 z0 z1 u0 u1, (x<=y) 00 01 11, (y<=z) 00 01 11,
    // (z<=u) 00 01 11, (u<x) 01.
    return {
        {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
        {0, 1, 0, 1, 1, 0, 1, 0, 0, 0, 1, 1, 1, 1, 1, 0, 0, 1},
        {0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 0, 1, 1, 0, 0, 1, 1, 0},
        {0, 1, 0, 1, 0, 1, 1, 0, 0, 0, 1, 0, 0, 1, 1, 1, 1, 1},
        {0, 1, 1, 0, 1, 0, 1, 0, 1, 1, 1, 1, 0, 0, 1, 0, 0, 1},
        {0, 0, 1, 1, 0, 0, 0, 0, 1, 1, 0, 0, 1, 1, 0, 0, 0, 0},
        {0, 1, 0, 1, 1, 0, 1, 0, 0, 0, 1, 1, 1, 1, 1, 0, 0, 1},
        {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
        {0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 0, 1, 1, 0, 0, 1, 1, 0},
        {0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 0, 1, 1, 0, 0, 1, 1, 0},
        {0, 1, 0, 1, 1, 0, 1, 0, 0, 0, 1, 1, 1, 1, 1, 0, 0, 1},
        {0, 1, 1, 0, 1, 0, 1, 0, 1, 1, 1, 1, 0, 0, 1, 0, 0, 1},
        {0, 1, 1, 0, 0, 1, 1, 0, 1, 1, 1, 0, 1, 0, 1, 1, 1, 1},
        {0, 1, 0, 1, 0, 1, 1, 0, 0, 0, 1, 0, 0, 1, 1, 1, 1, 1},
        {0, 1, 0, 1, 1, 0, 1, 0, 0, 0, 1, 1, 1, 1, 1, 0, 0, 1},
        {0, 0, 1, 1, 0, 0, 0, 0, 1, 1, 0, 0, 1, 1, 0, 0, 0, 0},
        {0, 0, 1, 1, 0, 0, 0, 0, 1, 1, 0, 0, 1, 1, 0, 0, 0, 0},
        {0, 1, 0, 1, 1, 0, 1, 0, 0, 0, 1, 1, 1, 1, 1, 0, 0, 1},
    };
}

}
