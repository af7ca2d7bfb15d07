#pragma once

#include <lcr/label_cover.hpp>
#include <lcr/relaxations.hpp>
#include <lcr/vector_minion.hpp>

namespace lcr {

// The base-p carry of a + b, evaluated as the binomial C(a + b, p) mod p through
// Vandermonde's identity. Throws Error(OutOfRange) unless 0 <= a, b < p.
auto carry_polynomial(std::uint32_t p, std::uint32_t a, std::uint32_t b) -> Residue;

// Residues modulo n summing to 1, indexed by a domain.
struct ZnTuple {
    std::int64_t n = 2;
    std::vector<std::int64_t> values;
};

// Weight over Z_{p^2} of integer representatives in [0, p), scaled by the inverse of the
// weight of the all-ones vector. Throws Error(LevelMismatch) unless k = p.
auto round_to_zp2(const VectorObject & o) -> ZnTuple;

auto zn_minor(const ZnTuple & t, const std::vector<std::uint32_t> & alpha, std::uint32_t codomain) -> ZnTuple;

// Rounds every object of a level-p vector solution; the result solves d over Z_{p^2}.
auto round_vector_solution(const VectorSolution & s) -> ZnSolution;

// Level-p tensor to Z_{p^2}: extracts vectors and rounds per connected component, then
// reassembles in the variable order of d. Throws Error(LevelMismatch) unless t.k = t.p.
auto round_level_solution(const LcInstance & d, const TensorSolution & t) -> ZnSolution;

// value(x) = sum_a f_x(a) * a mod n for the first csp.variables.size() entries of a Z_n
// solution (the CSP variables of lc_of_csp). Throws Error(DomainMismatch) unless every
// domain is exactly the integers 0, ..., n - 1.
auto decode_affine(const CspInstance & csp, const ZnSolution & s) -> std::vector<std::int64_t>;

}
