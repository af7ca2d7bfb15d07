#pragma once

#include <lcr/label_cover.hpp>
#include <lcr/relaxations.hpp>
#include <lcr/vector_minion.hpp>

#include <array>
#include <string_view>

namespace lcr {

// r^rotation s^reflection. Index rotation + 4 * reflection follows the atom order
// e, r, r2, r3, s, rs, r2s, r3s.
struct D4Element {
    std::uint8_t rotation = 0;
    std::uint8_t reflection = 0;

    auto index() const -> std::uint32_t { return rotation + 4u * reflection; }
    static auto from_index(std::uint32_t i) -> D4Element;
    auto operator==(const D4Element &) const -> bool = default;
};

inline constexpr std::array<std::string_view, 8> d4_names{"e", "r", "r2", "r3", "s", "rs", "r2s", "r3s"};

auto d4_multiply(D4Element a, D4Element b) -> D4Element;
auto d4_inverse(D4Element a) -> D4Element;
auto d4_name(D4Element a) -> std::string_view;
// Throws Error(OutOfRange) for an unknown name.
auto d4_from_name(std::string_view name) -> D4Element;

// Tuples in D4^n stored as element indices.
using D4Tuple = std::vector<std::uint32_t>;

auto d4_tuple_multiply(const D4Tuple & a, const D4Tuple & b) -> D4Tuple;
auto d4_tuple_inverse(const D4Tuple & a) -> D4Tuple;

// Subgroup of D4^n generated by gens, via worklist closure, sorted lexicographically.
auto d4_subgroup(std::uint32_t n, const std::vector<D4Tuple> & gens) -> std::vector<D4Tuple>;

// True iff r is nonempty and g0 * h^-1 * g lies in r for a fixed g0 in r and all h, g in r,
// which characterizes cosets of subgroups.
auto is_d4_coset(const std::vector<D4Tuple> & r) -> bool;

// rep * H for a random subgroup H generated by one to three random tuples. Sorted.
// Throws Error(OutOfRange) unless 1 <= n <= 4.
auto random_coset_relation(std::uint32_t n, std::uint64_t seed) -> std::vector<D4Tuple>;

// CSP whose variables range over the eight atoms and whose constraints are random cosets
// with distinct scope variables and arity uniform in 1..min(max_arity, num_vars).
auto gen_coset_csp(std::uint32_t num_vars, std::uint32_t num_constraints, std::uint32_t max_arity, std::uint64_t seed)
    -> CspInstance;

// Sum_{i<j} v_i w_j over Z_2. Throws Error(LengthMismatch).
auto bilinear_q(std::span<const Residue> v, std::span<const Residue> w) -> Residue;
// Sum_{i>j} v_i w_j, the other triangle; also satisfies the symmetrization identity.
auto bilinear_q_lower(std::span<const Residue> v, std::span<const Residue> w) -> Residue;

enum class BilinearForm { Upper, Lower };

struct MObject {
    std::vector<Residue> f;
    std::vector<std::vector<Residue>> g;
};

struct MCertificate {
    std::vector<MObject> objects;
};

// Sum f = 1, sum g = 0 and g(a,b) + g(b,a) = f(a) f(b) for a != b, all mod 2.
auto verify_m_object(const MObject & o) -> bool;

// Summation image of an object along alpha.
auto m_minor(const MObject & o, const std::vector<std::uint32_t> & alpha, std::uint32_t codomain) -> MObject;

// Throws Error(WrongParameters) unless s has p = 2 and k = 2.
auto m_certificate(const LcInstance & d, const VectorSolution & s, BilinearForm form = BilinearForm::Upper)
    -> MCertificate;

// Level-2 Z_2 tensor to a certificate, extracting vectors per connected component.
auto m_certificate_from_level(const LcInstance & d, const TensorSolution & t, BilinearForm form = BilinearForm::Upper)
    -> MCertificate;

// Throws Error(ShapeMismatch) when object shapes do not match the domains of d.
auto verify_m_certificate(const LcInstance & d, const MCertificate & c) -> bool;

auto to_json(const MCertificate & c, const LcInstance & d) -> Json;

}
