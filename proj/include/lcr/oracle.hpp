#pragma once

#include <lcr/caps.hpp>
#include <lcr/label_cover.hpp>
#include <lcr/modular_linalg.hpp>

#include <optional>
#include <string>

namespace lcr {

// Lexicographically first satisfying assignment (first variable most significant).
// Throws Error(SearchSpaceTooLarge) when the product of the domains exceeds caps.brute_force.
auto brute_solve_csp(const CspInstance & csp, const Caps & caps = Caps{}) -> std::optional<Assignment>;

// Lexicographically first LC solution, by backtracking in variable order. Throws
// Error(SearchSpaceTooLarge) once more than caps.brute_force search nodes are visited.
auto brute_solve_lc(const LcInstance & d, const Caps & caps = Caps{}) -> std::optional<Assignment>;

struct LinearEquation {
    std::vector<std::uint32_t> vars;
    std::vector<std::int64_t> coeffs;
    std::int64_t rhs = 0;
};

// Equations sum_j c_j x_j = rhs over Z_n.
struct LinearSystem {
    std::int64_t n = 2;
    std::uint32_t num_vars = 0;
    std::vector<LinearEquation> equations;
};

// Scopes are uniform random sets of 1..max_arity distinct variables, coefficients uniform
// in [1, n), right-hand sides uniform in [0, n). Deterministic in the seed.
auto gen_linear_system(std::int64_t n, std::uint32_t num_vars, std::uint32_t num_eqs, std::uint64_t seed,
    std::uint32_t max_arity = 3) -> LinearSystem;

// Variables over {0, ..., n-1}, one constraint per equation listing its solution tuples.
// Throws Error(CapExceeded) when a relation would exceed caps.brute_force tuples.
auto csp_of_linear_system(const LinearSystem & sys, const Caps & caps = Caps{}) -> CspInstance;

auto gen_linear_system_csp(std::int64_t n, std::uint32_t num_vars, std::uint32_t num_eqs, std::uint64_t seed,
    std::uint32_t max_arity = 3, const Caps & caps = Caps{}) -> CspInstance;

auto satisfies(const LinearSystem & sys, const std::vector<std::int64_t> & x) -> bool;

// Decides the system through the Smith normal form of its coefficient matrix.
auto linear_system_solvable(const LinearSystem & sys) -> bool;

auto to_json(const LinearSystem & sys) -> Json;

// A vector-object-valued minor fact used by the no-homomorphism systems: object `left`
// under map `left_map` equals object `right` under `right_map`.
struct MinorEquality {
    std::size_t left = 0;
    std::vector<std::uint32_t> left_map;
    std::size_t right = 0;
    std::vector<std::uint32_t> right_map;
    std::uint32_t codomain = 0;
};

struct EpsilonSystem {
    std::uint32_t p = 2;
    // Each object as the list of its vectors over Z_p (one per domain element).
    std::vector<std::vector<ResidueVec>> objects;
    std::vector<MinorEquality> equalities;
    // Linear system on the images: one unknown per (object, element).
    IntMatrix matrix;
    std::vector<std::int64_t> rhs;
    std::int64_t modulus = 0;
};

// Builds the objects and facts, machine-checks every fact on the vector objects (throws
// Error(EqualityVerificationFailed) on a failure), then emits the equations the images of a
// homomorphism into Z_modulus would have to satisfy. With_sums = false drops the
// sum-to-one rows.
auto epsilon_system_v2z2(std::int64_t modulus = 8, bool with_sums = true) -> EpsilonSystem;
auto epsilon_system_v2zp(std::uint32_t p, bool with_sums = true) -> EpsilonSystem;

// True iff the system has no solution modulo its modulus.
auto epsilon_system_infeasible(const EpsilonSystem & sys) -> bool;

auto check_no_homo_v2z2_to_z8() -> bool;
// p must be an odd prime; throws Error(WrongParameters) otherwise.
auto check_no_homo_v2zp_to_zp2(std::uint32_t p) -> bool;

}
