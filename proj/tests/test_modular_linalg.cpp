#include <doctest.h>

#include <lcr/error.hpp>
#include <lcr/modular_linalg.hpp>

#include <numeric>
#include <random>

using namespace lcr;

namespace {

auto exhaustive_solvable(const ModMatrix & a, const ResidueVec & b, std::uint32_t p) -> bool
{
    std::size_t n = a.cols();
    ResidueVec x(n, 0);
    while (true) {
        if (a.multiply(x) == b)
            return true;
        std::size_t i = 0;
        while (i < n && ++x[i] == p)
            x[i++] = 0;
        if (i == n)
            return false;
    }
}

auto exhaustive_solvable_mod_n(const IntMatrix & a, const std::vector<std::int64_t> & b, std::int64_t n) -> bool
{
    std::size_t cols = a.empty() ? 0 : a[0].size();
    std::vector<std::int64_t> x(cols, 0);
    while (true) {
        bool ok = true;
        for (std::size_t i = 0; i < a.size() && ok; ++i) {
            std::int64_t acc = 0;
            for (std::size_t j = 0; j < cols; ++j)
                acc += a[i][j] * x[j];
            ok = static_cast<std::int64_t>(reduce_mod(acc - b[i], n)) == 0;
        }
        if (ok)
            return true;
        std::size_t i = 0;
        while (i < cols && ++x[i] == n)
            x[i++] = 0;
        if (i == cols)
            return false;
    }
}

auto random_matrix(std::mt19937_64 & rng, std::uint32_t p, std::size_t rows, std::size_t cols) -> ModMatrix
{
    ModMatrix m(p, rows, cols);
    std::uniform_int_distribution<std::uint32_t> dist(0, p - 1);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            m.set(r, c, dist(rng));
    return m;
}

}

TEST_CASE("rref examples")
{
    auto dup = rref_mod_p(ModMatrix::from_rows(2, {{1, 1}, {1, 1}}));
    CHECK(dup.rank == 1);
    CHECK(dup.rref == ModMatrix::from_rows(2, {{1, 1}, {0, 0}}));
    CHECK(dup.pivot_cols == std::vector<std::size_t>{0});

    auto id = ModMatrix::from_rows(5, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    auto rid = rref_mod_p(id);
    CHECK(rid.rank == 3);
    CHECK(rid.rref == id);

    auto prop = rref_mod_p(ModMatrix::from_rows(3, {{2, 1}, {1, 2}}));
    CHECK(prop.rank == 1);
    CHECK(prop.rref == ModMatrix::from_rows(3, {{1, 2}, {0, 0}}));

    CHECK_THROWS_AS(rref_mod_p(ModMatrix::from_rows(4, {{1}})), Error);
}

TEST_CASE("solve_mod_p examples")
{
    auto r1 = solve_mod_p(ModMatrix::from_rows(2, {{1, 1}, {1, 0}}), ResidueVec{1, 1}, 2);
    REQUIRE(r1.feasible());
    CHECK(r1.particular == ResidueVec{1, 0});

    auto a2 = ModMatrix::from_rows(2, {{1, 1}, {1, 1}});
    ResidueVec b2{1, 0};
    auto r2 = solve_mod_p(a2, b2, 2);
    CHECK_FALSE(r2.feasible());
    REQUIRE(r2.contradiction_row.has_value());
    REQUIRE(r2.left_certificate.size() == 2);
    CHECK(a2.left_multiply(r2.left_certificate) == ResidueVec{0, 0});

    auto r3 = solve_mod_p(ModMatrix::from_rows(3, {{2}}), ResidueVec{1}, 3);
    REQUIRE(r3.feasible());
    CHECK(r3.particular == ResidueVec{2});

    CHECK_THROWS_AS(solve_mod_p(ModMatrix::from_rows(2, {{1}}), ResidueVec{1, 1}, 2), Error);
}

TEST_CASE("left nullspace examples")
{
    CHECK(left_nullspace_mod_p(ModMatrix::from_rows(2, {{1}, {1}}), 2) == std::vector<ResidueVec>{{1, 1}});
    CHECK(left_nullspace_mod_p(ModMatrix::from_rows(7, {{1, 0}, {0, 1}}), 7).empty());
    CHECK(left_nullspace_mod_p(ModMatrix::from_rows(3, {{1, 0}, {1, 0}, {0, 1}}), 3)
        == std::vector<ResidueVec>{{1, 2, 0}});
    CHECK_THROWS_AS(left_nullspace_mod_p(ModMatrix::from_rows(6, {{1}}), 6), Error);
}

TEST_CASE("solve_mod_n examples")
{
    CHECK_FALSE(solve_mod_n({{3}}, std::vector<std::int64_t>{1}, 9).feasible());
    auto r = solve_mod_n({{5}}, std::vector<std::int64_t>{1}, 8);
    REQUIRE(r.feasible());
    CHECK(r.particular == std::vector<std::int64_t>{5});

    auto snf = smith_normal_form({{2, 0}, {0, 3}});
    CHECK(snf.s == IntMatrix{{1, 0}, {0, 6}});
    CHECK(multiply(multiply(snf.u, {{2, 0}, {0, 3}}), snf.v) == snf.s);
    CHECK(std::abs(determinant(snf.u)) == 1);
    CHECK(std::abs(determinant(snf.v)) == 1);

    // Over Z: 2x + 4y = 6 solvable, 2x + 4y = 3 not.
    CHECK(solve_mod_n({{2, 4}}, std::vector<std::int64_t>{6}, 0).feasible());
    CHECK_FALSE(solve_mod_n({{2, 4}}, std::vector<std::int64_t>{3}, 0).feasible());
}

TEST_CASE("property: solve_mod_p agrees with exhaustive search on 4x4 systems")
{
    std::mt19937_64 rng(11);
    for (std::uint32_t p : {2u, 3u, 5u}) {
        for (int trial = 0; trial < 150; ++trial) {
            std::size_t rows = 1 + rng() % 4;
            auto a = random_matrix(rng, p, rows, 4);
            // Bias towards rank-deficient systems by duplicating a row now and then.
            if (rows > 1 && trial % 3 == 0)
                for (std::size_t c = 0; c < 4; ++c)
                    a.set(rows - 1, c, a.at(0, c));
            ResidueVec b(rows);
            for (auto & e : b)
                e = static_cast<Residue>(rng() % p);
            auto res = solve_mod_p(a, b, p, true);
            CHECK(res.feasible() == exhaustive_solvable(a, b, p));
            if (res.feasible()) {
                CHECK(a.multiply(res.particular) == b);
                auto rank = rref_mod_p(a).rank;
                CHECK(res.nullspace_basis.size() == 4 - rank);
                for (const auto & z : res.nullspace_basis) {
                    CHECK(a.multiply(z) == ResidueVec(rows, 0));
                    ResidueVec shifted(4);
                    for (std::size_t i = 0; i < 4; ++i)
                        shifted[i] = (res.particular[i] + z[i]) % p;
                    CHECK(a.multiply(shifted) == b);
                }
            }
            else {
                REQUIRE(res.left_certificate.size() == rows);
                CHECK(a.left_multiply(res.left_certificate) == ResidueVec(4, 0));
            }
        }
    }
}

TEST_CASE("property: rref is idempotent and preserves the row space")
{
    std::mt19937_64 rng(12);
    for (std::uint32_t p : {2u, 3u, 5u, 257u}) {
        for (int trial = 0; trial < 40; ++trial) {
            auto m = random_matrix(rng, p, 1 + rng() % 6, 1 + rng() % 70);
            auto once = rref_mod_p(m);
            auto twice = rref_mod_p(once.rref);
            CHECK(twice.rref == once.rref);
            CHECK(twice.rank == once.rank);
            // Stacking m under its rref cannot raise the rank.
            ModMatrix stacked(p, 2 * m.rows(), m.cols());
            for (std::size_t r = 0; r < m.rows(); ++r)
                for (std::size_t c = 0; c < m.cols(); ++c) {
                    stacked.set(r, c, m.at(r, c));
                    stacked.set(m.rows() + r, c, once.rref.at(r, c));
                }
            CHECK(rref_mod_p(stacked).rank == once.rank);
        }
    }
}

TEST_CASE("property: left nullspace annihilates and has the complementary dimension")
{
    std::mt19937_64 rng(13);
    for (std::uint32_t p : {2u, 3u, 7u}) {
        for (int trial = 0; trial < 40; ++trial) {
            auto m = random_matrix(rng, p, 1 + rng() % 8, 1 + rng() % 5);
            auto basis = left_nullspace_mod_p(m, p);
            CHECK(basis.size() == m.rows() - rref_mod_p(m).rank);
            for (const auto & q : basis)
                CHECK(m.left_multiply(q) == ResidueVec(m.cols(), 0));
        }
    }
}

TEST_CASE("property: solve_mod_n agrees with exhaustive search mod 4, 8, 9")
{
    std::mt19937_64 rng(14);
    for (std::int64_t n : {4, 8, 9}) {
        for (int trial = 0; trial < 120; ++trial) {
            std::size_t rows = 1 + rng() % 3;
            IntMatrix a(rows, std::vector<std::int64_t>(3));
            std::vector<std::int64_t> b(rows);
            for (std::size_t i = 0; i < rows; ++i) {
                for (auto & e : a[i])
                    e = static_cast<std::int64_t>(rng() % n);
                b[i] = static_cast<std::int64_t>(rng() % n);
            }
            auto res = solve_mod_n(a, b, n);
            CHECK(res.feasible() == exhaustive_solvable_mod_n(a, b, n));
            if (res.feasible()) {
                for (std::size_t i = 0; i < rows; ++i) {
                    std::int64_t acc = 0;
                    for (std::size_t j = 0; j < 3; ++j)
                        acc += a[i][j] * res.particular[j];
                    CHECK(reduce_mod(acc - b[i], n) == 0);
                }
            }

            auto snf = smith_normal_form_mod(a, n);
            auto prod = multiply(multiply(snf.u, a), snf.v);
            for (std::size_t i = 0; i < rows; ++i)
                for (std::size_t j = 0; j < 3; ++j)
                    CHECK(reduce_mod(prod[i][j] - snf.s[i][j], n) == 0);
            for (std::size_t i = 0; i + 1 < std::min<std::size_t>(rows, 3); ++i) {
                auto d0 = snf.s[i][i] == 0 ? n : snf.s[i][i];
                auto d1 = snf.s[i + 1][i + 1] == 0 ? n : snf.s[i + 1][i + 1];
                CHECK(d1 % d0 == 0);
            }
            CHECK(std::gcd(reduce_mod(determinant(snf.u), n), static_cast<std::uint64_t>(n)) == 1);
            CHECK(std::gcd(reduce_mod(determinant(snf.v), n), static_cast<std::uint64_t>(n)) == 1);
        }
    }
}

TEST_CASE("property: integer Smith normal form of random small matrices")
{
    std::mt19937_64 rng(15);
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t rows = 1 + rng() % 4, cols = 1 + rng() % 4;
        IntMatrix a(rows, std::vector<std::int64_t>(cols));
        for (auto & row : a)
            for (auto & e : row)
                e = static_cast<std::int64_t>(rng() % 13) - 6;
        auto snf = smith_normal_form(a);
        CHECK(multiply(multiply(snf.u, a), snf.v) == snf.s);
        CHECK(std::abs(determinant(snf.u)) == 1);
        CHECK(std::abs(determinant(snf.v)) == 1);
        std::size_t limit = std::min(rows, cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j)
                if (i != j)
                    CHECK(snf.s[i][j] == 0);
        for (std::size_t i = 0; i < limit; ++i)
            CHECK(snf.s[i][i] >= 0);
        for (std::size_t i = 0; i + 1 < limit; ++i)
            if (snf.s[i][i] != 0)
                CHECK(snf.s[i + 1][i + 1] % snf.s[i][i] == 0);
            else
                CHECK(snf.s[i + 1][i + 1] == 0);
    }
}

TEST_CASE("property: sparse solver agrees with the dense solver")
{
    std::mt19937_64 rng(16);
    for (std::uint32_t p : {2u, 3u, 5u}) {
        for (int trial = 0; trial < 200; ++trial) {
            std::size_t rows = 1 + rng() % 40, cols = 1 + rng() % 30;
            SparseSystem sys(p, cols);
            ModMatrix dense(p, rows, cols);
            ResidueVec b(rows);
            for (std::size_t r = 0; r < rows; ++r) {
                std::vector<std::pair<std::uint32_t, Residue>> terms;
                std::size_t len = 1 + rng() % 4;
                for (std::size_t t = 0; t < len; ++t) {
                    auto c = static_cast<std::uint32_t>(rng() % cols);
                    auto v = static_cast<Residue>(rng() % p);
                    terms.emplace_back(c, v);
                    dense.set(r, c, (dense.at(r, c) + v) % p);
                }
                b[r] = static_cast<Residue>(rng() % p);
                // Keep a fair share of feasible systems.
                if (trial % 2 == 0)
                    b[r] = 0;
                sys.add_row(terms, b[r]);
            }
            auto sparse = solve_sparse_mod_p(sys);
            auto reference = solve_mod_p(dense, b, p);
            CHECK(sparse.feasible() == reference.feasible());
            if (sparse.feasible()) {
                CHECK(sys.satisfied_by(sparse.particular));
                CHECK(dense.multiply(sparse.particular) == b);
            }
            else {
                CHECK(sparse.contradiction_row.has_value());
            }
        }
    }
}
