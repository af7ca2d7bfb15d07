#pragma once

// Small worked instances used by the tests, the acceptance suite and `lcr fixture`.

#include <lcr/label_cover.hpp>

#include <cstdint>
#include <vector>

namespace lcr::fixtures {

// x = 1, x != y, y <= z over {0,1}. Relations are listed in lexicographic order, so the
// constraint variables of lc_of_csp have domains {1}, {01,10}, {00,01,11}.
auto three_constraint_csp() -> CspInstance;

// The solution x=1, y=0, z=0 extended to the LC instance.
auto three_constraint_solution() -> Assignment;

// Arc-consistent subdomains of the LC instance, as sorted index lists per variable.
auto three_constraint_ac_domains() -> std::vector<std::vector<std::uint32_t>>;

// The cycle x <= y, y <= z, z <= u, u < x over {0,1}; no classical solution.
auto cycle_csp() -> CspInstance;

// A Z_2 solution of lc(cycle_csp()), one residue vector per LC variable.
auto cycle_z2_solution() -> std::vector<std::vector<std::uint32_t>>;

// An 18 x 18 symmetric Z_2 matrix over the points of lc(cycle_csp()) in point order,
// solving the second saturated power.
auto cycle_level2_matrix() -> std::vector<std::vector<std::uint32_t>>;

}
