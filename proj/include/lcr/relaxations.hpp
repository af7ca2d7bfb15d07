#pragma once

#include <lcr/caps.hpp>
#include <lcr/label_cover.hpp>
#include <lcr/modular_linalg.hpp>

#include <map>
#include <optional>

namespace lcr {

struct AcResult {
    bool emptied = false;
    // Surviving element indices per variable, sorted.
    std::vector<std::vector<std::uint32_t>> domains;
};

// Greatest family of subdomains closed under both pruning directions of every constraint.
auto arc_consistency(const LcInstance & d) -> AcResult;

// One residue vector per variable, indexed like its domain.
struct ZpSolution {
    std::uint32_t p = 2;
    std::vector<ResidueVec> values;
};

// Throws Error(ShapeMismatch) when the vectors do not match the domains.
auto check_zp_solution(const LcInstance & d, const ZpSolution & s) -> bool;

auto solve_zp(const LcInstance & d, std::uint32_t p, const Caps & caps = Caps{}) -> std::optional<ZpSolution>;

// Values are reduced into [0, n) for n >= 2 and are arbitrary integers when n = 0 (over Z).
struct ZnSolution {
    std::int64_t n = 0;
    std::vector<std::vector<std::int64_t>> values;
};

auto check_zn_solution(const LcInstance & d, const ZnSolution & s) -> bool;

auto solve_zn(const LcInstance & d, std::int64_t n, const Caps & caps = Caps{}) -> std::optional<ZnSolution>;

// A symmetric Z_p-valued function on k-tuples of points. Entries are keyed by
// non-decreasing tuples of global point ids (see PointIndex); absent keys are 0.
struct TensorSolution {
    std::uint32_t p = 2;
    std::uint32_t k = 1;
    std::vector<std::uint32_t> domain_sizes;
    std::map<std::vector<std::uint32_t>, Residue> entries;

    // Value at a tuple of point ids in any order.
    auto value(std::vector<std::uint32_t> points) const -> Residue;
    auto set(std::vector<std::uint32_t> points, Residue v) -> void;

    auto operator==(const TensorSolution &) const -> bool = default;
};

// Level-2 tensor from a full point-by-point matrix; throws Error(InvalidTensor) unless the
// matrix is square of the right size and symmetric.
auto tensor_from_matrix(const LcInstance & d, std::uint32_t p, const std::vector<std::vector<std::uint32_t>> & m)
    -> TensorSolution;

// True iff the tensor solves the k-th saturated power: keys well formed with no two points
// of one variable, block sums 1, every permutation/merge constraint, and every product
// constraint (the first slot suffices by symmetry). Throws Error(ShapeMismatch).
auto check_tensor_solution(const LcInstance & d, const TensorSolution & t) -> bool;

// Like check_tensor_solution on a full matrix that may fail to be symmetric.
auto check_tensor_matrix(const LcInstance & d, std::uint32_t p, const std::vector<std::vector<std::uint32_t>> & m)
    -> bool;

enum class LevelEncoding { Direct, Canonical };

struct LevelStats {
    std::size_t unknowns = 0;
    std::size_t equations = 0;
    std::size_t components = 0;
    SparseSolveStats solver;
};

// Level k of the Z_p relaxation. Direct solves the reduced saturated power as it stands.
// Canonical solves one system per connected component whose unknowns are point sets of
// size at most k with no repeated variable, and combines the parts by multiplying
// marginals. Throws Error(SizeCapExceeded), Error(NonPrimeModulus), Error(LevelZero).
auto solve_level(const LcInstance & d, std::uint32_t p, std::uint32_t k,
    LevelEncoding encoding = LevelEncoding::Canonical, const Caps & caps = Caps{}, LevelStats * stats = nullptr)
    -> std::optional<TensorSolution>;

// The tensor restricted to the given variables (in that order), renumbered.
auto restrict_tensor(const TensorSolution & t, const std::vector<std::uint32_t> & vars) -> TensorSolution;

// A level-(k-1) tensor by merging the last slot into the first.
auto lower_level(const TensorSolution & t) -> TensorSolution;

// The level-1 marginal as a Z_p solution.
auto marginal(const TensorSolution & t) -> ZpSolution;

auto to_json(const TensorSolution & t) -> Json;
auto tensor_from_json(const Json & j, const LcInstance & d) -> TensorSolution;
auto to_json(const ZpSolution & s) -> Json;
auto to_json(const ZnSolution & s) -> Json;

}
