#include <doctest.h>

#include "test_support.hpp"

#include <lcr/error.hpp>
#include <lcr/fixtures.hpp>
#include <lcr/oracle.hpp>
#include <lcr/rounding.hpp>

using namespace lcr;

namespace {

// Exact C(n, r) over the integers; n stays below 2p here.
auto exact_binomial(std::uint64_t n, std::uint64_t r) -> std::uint64_t
{
    if (r > n)
        return 0;
    std::uint64_t c = 1;
    for (std::uint64_t i = 0; i < r; ++i)
        c = c * (n - i) / (i + 1);
    return c;
}

auto two_element_object(ResidueVec b) -> VectorObject
{
    VectorObject o;
    o.p = 2;
    o.k = 2;
    o.n = 3;
    o.v = {{1, 0, 0}, std::move(b)};
    o.space_basis = span_basis({o.v[0], o.v[1], {1, 1, 1}}, 3, 2);
    return o;
}

}

TEST_CASE("carry polynomial matches the carry digit for small primes")
{
    for (std::uint32_t p : {2u, 3u, 5u, 7u})
        for (std::uint32_t a = 0; a < p; ++a)
            for (std::uint32_t b = 0; b < p; ++b) {
                auto c = carry_polynomial(p, a, b);
                CHECK(c == (a + b) / p);
                CHECK(c == exact_binomial(a + b, p) % p);
            }

    // Frozen table for p = 3, rows indexed by a.
    std::vector<std::vector<Residue>> table(3, std::vector<Residue>(3));
    for (std::uint32_t a = 0; a < 3; ++a)
        for (std::uint32_t b = 0; b < 3; ++b)
            table[a][b] = carry_polynomial(3, a, b);
    CHECK(table == std::vector<std::vector<Residue>>{{0, 0, 0}, {0, 0, 1}, {0, 1, 1}});

    CHECK_THROWS_AS(carry_polynomial(3, 3, 0), Error);
    CHECK_THROWS_AS(carry_polynomial(5, 1, 7), Error);
    CHECK_THROWS_AS(carry_polynomial(4, 1, 1), Error);
}

TEST_CASE("rounding examples")
{
    VectorObject single{2, 2, 1, {{1}}, {{1}}};
    CHECK(round_to_zp2(single).values == std::vector<std::int64_t>{1});

    // Weights 1 and 2 over Z_4, scaled by 3^-1 = 3.
    auto r = round_to_zp2(two_element_object({0, 1, 1}));
    CHECK(r.n == 4);
    CHECK(r.values == std::vector<std::int64_t>{3, 2});

    VectorObject level3{2, 3, 1, {{1}}, {{1}}};
    CHECK_THROWS_AS(round_to_zp2(level3), Error);

    ZnTuple t{9, {4, 5, 1}};
    CHECK(zn_minor(t, {1, 1, 0}, 2).values == std::vector<std::int64_t>{1, 0});
    CHECK_THROWS_AS(zn_minor(t, {0, 1}, 2), Error);
    CHECK_THROWS_AS(zn_minor(t, {0, 1, 2}, 2), Error);
}

TEST_CASE("property: rounding commutes with minors")
{
    std::mt19937_64 rng(71);
    int checked = 0;
    for (int trial = 0; trial < 60; ++trial) {
        std::uint32_t p = trial % 2 ? 3 : 2;
        auto d = lc_of_csp(testing::random_csp(rng, 3, 3, 3, 2, 0.6));
        auto t = solve_level(d, p, p);
        if (! t)
            continue;
        for (const auto & comp : connected_components(d)) {
            auto sub = induced_subinstance(d, comp);
            auto s = extract_vectors(sub, restrict_tensor(*t, comp));
            for (std::uint32_t x = 0; x < sub.variables.size(); ++x) {
                auto o = s.object(x);
                auto rounded = round_to_zp2(o);
                std::int64_t total = 0;
                for (auto v : rounded.values)
                    total += v;
                CHECK(total % (p * p) == 1);
                auto e = 1 + static_cast<std::uint32_t>(rng() % 3);
                std::vector<std::uint32_t> alpha;
                for (std::size_t a = 0; a < o.v.size(); ++a)
                    alpha.push_back(static_cast<std::uint32_t>(rng() % e));
                CHECK(round_to_zp2(minor_vector_object(o, alpha, e)).values == zn_minor(rounded, alpha, e).values);
                ++checked;
            }
        }
    }
    CHECK(checked > 50);
}

TEST_CASE("property: level-2 Z_2 decides linear equations over Z_4")
{
    int accepted = 0, rejected = 0;
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        auto sys = gen_linear_system(4, 1 + seed % 4, 1 + seed % 4, seed, 3);
        auto csp = csp_of_linear_system(sys);
        auto d = lc_of_csp(csp);
        auto t = solve_level(d, 2, 2);
        CHECK(t.has_value() == linear_system_solvable(sys));
        if (! t) {
            ++rejected;
            continue;
        }
        ++accepted;
        auto z = round_level_solution(d, *t);
        CHECK(check_zn_solution(d, z));
        CHECK(satisfies(sys, decode_affine(csp, z)));
    }
    CHECK(accepted > 5);
    CHECK(rejected > 5);
}

TEST_CASE("decode_affine guards its domains")
{
    auto sys = LinearSystem{3, 2, {{{0, 1}, {1, 2}, 1}}};
    auto lin = csp_of_linear_system(sys);
    auto zs = solve_zn(lc_of_csp(lin), 3);
    REQUIRE(zs);
    CHECK(satisfies(sys, decode_affine(lin, *zs)));
    ZnSolution short_sol{3, {}};
    CHECK_THROWS_AS(decode_affine(lin, short_sol), Error);
    auto wrong_n = *zs;
    wrong_n.n = 4;
    CHECK_THROWS_AS(decode_affine(lin, wrong_n), Error);

    // Domains {1, 0} are Z_2 as a set but not in the order 0, 1.
    CspInstance swapped;
    swapped.variables = {{"x", {Label(1), Label(0)}}};
    CHECK_THROWS_AS(decode_affine(swapped, ZnSolution{2, {{1, 0}}}), Error);
}
