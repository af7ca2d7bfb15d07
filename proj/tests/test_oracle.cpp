#include <doctest.h>

#include "test_support.hpp"

#include <lcr/error.hpp>
#include <lcr/fixtures.hpp>
#include <lcr/json_io.hpp>
#include <lcr/oracle.hpp>

using namespace lcr;

TEST_CASE("brute force on small instances")
{
    auto csp = fixtures::three_constraint_csp();
    CHECK(brute_solve_csp(csp) == Assignment{1, 0, 0});
    CHECK_FALSE(brute_solve_csp(fixtures::cycle_csp()));

    CspInstance free;
    free.variables = {{"a", {Label(0), Label(1)}}, {"b", {Label(2)}}};
    CHECK(brute_solve_csp(free) == Assignment{0, 0});

    CHECK(brute_solve_lc(lc_of_csp(csp)) == fixtures::three_constraint_solution());
    LcInstance empty;
    empty.variables = {{"a", {Label(0)}}, {"b", {}}};
    CHECK_FALSE(brute_solve_lc(empty));

    Caps tiny;
    tiny.brute_force = 4;
    CHECK_THROWS_AS(brute_solve_csp(fixtures::cycle_csp(), tiny), Error);
    CHECK_THROWS_AS(brute_solve_lc(lc_of_csp(fixtures::cycle_csp()), tiny), Error);
}

TEST_CASE("property: LC brute force agrees with CSP brute force")
{
    std::mt19937_64 rng(61);
    for (int trial = 0; trial < 300; ++trial) {
        auto csp = testing::random_csp(rng, 4, 3, 4, 3);
        auto a = brute_solve_csp(csp);
        auto b = brute_solve_lc(lc_of_csp(csp));
        REQUIRE(a.has_value() == b.has_value());
        if (a) {
            CHECK(check_csp_solution(csp, *a));
            CHECK(b->size() == csp.variables.size() + csp.constraints.size());
            CHECK(Assignment(b->begin(), b->begin() + static_cast<std::ptrdiff_t>(a->size())) == *a);
        }
    }
}

TEST_CASE("linear system generator")
{
    auto a = to_json(gen_linear_system_csp(4, 5, 4, 99));
    auto b = to_json(gen_linear_system_csp(4, 5, 4, 99));
    CHECK(canonical_dump(a) == canonical_dump(b));
    CHECK(canonical_dump(a) != canonical_dump(to_json(gen_linear_system_csp(4, 5, 4, 100))));

    LinearSystem sys{4, 2, {{{0, 1}, {1, 1}, 1}}};
    auto csp = csp_of_linear_system(sys);
    REQUIRE(csp.constraints.size() == 1);
    CHECK(csp.constraints[0].relation
        == std::vector<std::vector<std::uint32_t>>{{0, 1}, {1, 0}, {2, 3}, {3, 2}});

    Caps tiny;
    tiny.brute_force = 10;
    CHECK_THROWS_AS(csp_of_linear_system(sys, tiny), Error);
}

TEST_CASE("property: brute force and the Smith form agree on linear systems")
{
    int unsat = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        auto n = std::int64_t{4 + static_cast<std::int64_t>(seed % 3) * 2};
        auto sys = gen_linear_system(n, 1 + seed % 4, 1 + seed % 5, seed, 3);
        auto csp = csp_of_linear_system(sys);
        auto brute = brute_solve_csp(csp);
        CHECK(brute.has_value() == linear_system_solvable(sys));
        unsat += ! brute;
        if (brute) {
            std::vector<std::int64_t> x(brute->begin(), brute->end());
            CHECK(satisfies(sys, x));
        }
    }
    CHECK(unsat > 10);
}

TEST_CASE("no homomorphism from the level-2 Z_2 vector minion to Z_8")
{
    CHECK(check_no_homo_v2z2_to_z8());
    auto sys = epsilon_system_v2z2(8);
    CHECK(sys.objects.size() == 4);
    CHECK(sys.matrix.front().size() == 15);
    CHECK_FALSE(epsilon_system_infeasible(epsilon_system_v2z2(8, false)));
    MESSAGE("same system modulo 4 infeasible: " << epsilon_system_infeasible(epsilon_system_v2z2(4)));
}

TEST_CASE("no homomorphism from the level-2 Z_p vector minion to Z_{p^2}")
{
    CHECK(check_no_homo_v2zp_to_zp2(3));
    CHECK(check_no_homo_v2zp_to_zp2(5));
    CHECK_FALSE(epsilon_system_infeasible(epsilon_system_v2zp(3, false)));
    CHECK_THROWS_AS(check_no_homo_v2zp_to_zp2(2), Error);
    CHECK_THROWS_AS(check_no_homo_v2zp_to_zp2(9), Error);
}
