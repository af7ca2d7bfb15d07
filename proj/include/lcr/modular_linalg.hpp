#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace lcr {

using Residue = std::uint32_t;
using ResidueVec = std::vector<Residue>;

auto is_prime(std::uint64_t n) -> bool;

// Inverse of a modulo m; throws Error(OutOfRange) if gcd(a, m) != 1.
auto inverse_mod(std::uint64_t a, std::uint64_t m) -> std::uint64_t;

// Reduce an arbitrary integer into [0, m).
auto reduce_mod(std::int64_t a, std::uint64_t m) -> std::uint64_t;

class ModMatrix {
public:
    ModMatrix() = default;
    ModMatrix(std::uint32_t modulus, std::size_t rows, std::size_t cols);

    // Entries are reduced modulo the modulus; every row must have the same length.
    static auto from_rows(std::uint32_t modulus, const std::vector<std::vector<std::int64_t>> & rows) -> ModMatrix;

    auto modulus() const -> std::uint32_t { return _modulus; }
    auto rows() const -> std::size_t { return _rows; }
    auto cols() const -> std::size_t { return _cols; }

    auto at(std::size_t r, std::size_t c) const -> Residue { return _entries[r * _cols + c]; }
    auto set(std::size_t r, std::size_t c, Residue v) -> void;
    auto row(std::size_t r) const -> std::span<const Residue>
    {
        return {_entries.data() + r * _cols, _cols};
    }

    auto transpose() const -> ModMatrix;
    auto multiply(std::span<const Residue> x) const -> ResidueVec;
    auto left_multiply(std::span<const Residue> y) const -> ResidueVec;

    // Nonzero (column, value) pairs of one row.
    auto sparse_row(std::size_t r) const -> std::vector<std::pair<std::uint32_t, Residue>>;

    auto operator==(const ModMatrix &) const -> bool = default;

private:
    std::uint32_t _modulus = 2;
    std::size_t _rows = 0, _cols = 0;
    std::vector<Residue> _entries;
};

struct RrefResult {
    ModMatrix rref;
    std::vector<std::size_t> pivot_cols;
    std::size_t rank = 0;
};

auto rref_mod_p(const ModMatrix & m) -> RrefResult;

enum class SolveStatus { Feasible, Infeasible };

struct SolveResult {
    SolveStatus status = SolveStatus::Infeasible;
    ResidueVec particular;
    std::vector<ResidueVec> nullspace_basis;

    // On infeasibility: the input row whose reduction became 0 = c with c != 0.
    std::optional<std::size_t> contradiction_row;
    // Dense solves also return y with y^T A = 0 and y^T b != 0.
    ResidueVec left_certificate;

    auto feasible() const -> bool { return status == SolveStatus::Feasible; }
};

auto solve_mod_p(const ModMatrix & a, std::span<const Residue> b, std::uint32_t p, bool want_nullspace = false)
    -> SolveResult;

// Basis of { q : q^T a = 0 } in reduced echelon form.
auto left_nullspace_mod_p(const ModMatrix & a, std::uint32_t p) -> std::vector<ResidueVec>;

// Sparse linear system over GF(p). Rows are stored sorted by column with nonzero values.
class SparseSystem {
public:
    struct Row {
        std::vector<std::uint32_t> cols;
        std::vector<Residue> vals;
        Residue rhs = 0;
    };

    SparseSystem(std::uint32_t p, std::size_t cols);

    // Duplicate columns are summed and zero coefficients dropped. Values may be any residue
    // representative below 2^32; they are reduced modulo p.
    auto add_row(std::vector<std::pair<std::uint32_t, Residue>> terms, Residue rhs) -> void;

    auto modulus() const -> std::uint32_t { return _p; }
    auto cols() const -> std::size_t { return _cols; }
    auto rows() const -> const std::vector<Row> & { return _rows; }
    auto nonzeros() const -> std::size_t { return _nonzeros; }

    // True iff x satisfies every row.
    auto satisfied_by(std::span<const Residue> x) const -> bool;

private:
    std::uint32_t _p;
    std::size_t _cols;
    std::size_t _nonzeros = 0;
    std::vector<Row> _rows;
};

struct SparseSolveStats {
    std::size_t eliminated_pivots = 0;
    std::size_t core_rows = 0;
    std::size_t core_cols = 0;
};

// Structured elimination (low-fill pivots first) followed by dense elimination of the
// remaining core. Free unknowns are set to 0. Nullspaces are not produced.
auto solve_sparse_mod_p(const SparseSystem & system, SparseSolveStats * stats = nullptr) -> SolveResult;

using IntMatrix = std::vector<std::vector<std::int64_t>>;

struct SnfDecomposition {
    IntMatrix u, s, v;
    // 0 when computed over the integers, otherwise the ring is Z_modulus and u, v are
    // invertible modulo it.
    std::int64_t modulus = 0;
};

// Smith normal form over Z: u * a * v = s, u and v unimodular, diagonal entries
// non-negative with each dividing the next. Throws Error(Overflow) if an entry leaves int64.
auto smith_normal_form(const IntMatrix & a) -> SnfDecomposition;

// Same over Z_n (n >= 2): diagonal entries are divisors of n (0 for n itself) in a
// divisibility chain and u, v are invertible modulo n.
auto smith_normal_form_mod(const IntMatrix & a, std::int64_t n) -> SnfDecomposition;

struct IntSolveResult {
    SolveStatus status = SolveStatus::Infeasible;
    std::vector<std::int64_t> particular;

    auto feasible() const -> bool { return status == SolveStatus::Feasible; }
};

// Decide a x = b (mod n), or over Z when n = 0, through the Smith normal form.
auto solve_mod_n(const IntMatrix & a, std::span<const std::int64_t> b, std::int64_t n) -> IntSolveResult;

auto multiply(const IntMatrix & a, const IntMatrix & b) -> IntMatrix;

// Exact determinant by fraction-free elimination (Bareiss); throws Error(Overflow).
auto determinant(const IntMatrix & a) -> std::int64_t;

}
