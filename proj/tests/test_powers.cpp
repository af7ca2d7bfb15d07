#include <doctest.h>

#include "test_support.hpp"

#include <lcr/error.hpp>
#include <lcr/fixtures.hpp>
#include <lcr/powers.hpp>

using namespace lcr;

TEST_CASE("second power of the four-cycle: counts")
{
    auto d = lc_of_csp(fixtures::cycle_csp());
    auto pw = saturated_power(d, 2);
    CHECK(pw.instance.variables.size() == 64);
    CHECK(pw.type2_constraints == 256);
    CHECK(pw.type1_constraints == 128);
    CHECK(pw.instance.constraints.size() == 384);
    CHECK(pw.meta.power_variables() == 64);
    // (x, (x<=y)) has the product domain.
    auto t = pw.meta.index({0, 4});
    CHECK(pw.instance.variables[t].domain.size() == 6);
    CHECK(pw.instance.variables[t].domain[5] == Label::array({1, Label::array({1, 1})}));
    pw.instance.validate();

    auto full = saturated_power(d, 2, PowerMode::Full);
    CHECK(full.type1_constraints == 16 * 16);
    CHECK(full.type2_constraints == 256);
}

TEST_CASE("second power of a discrete one-variable instance")
{
    LcInstance d;
    d.variables = {{"x", {Label("a"), Label("b")}}};
    auto pw = saturated_power(d, 2);
    REQUIRE(pw.instance.variables.size() == 1);
    CHECK(pw.instance.variables[0].domain.size() == 4);
    CHECK(pw.type2_constraints == 4);
    // sigma = (1,1) sends (d1,d2) to (d1,d1): only the diagonal survives as an image.
    const auto & merge = pw.instance.constraints[pw.type1_constraints + 0];
    CHECK(merge.map == std::vector<std::uint32_t>{0, 0, 3, 3});
    const auto & swap = pw.instance.constraints[pw.type1_constraints + 2];
    CHECK(swap.map == std::vector<std::uint32_t>{0, 2, 1, 3});
}

TEST_CASE("first power adds identity constraints")
{
    auto d = lc_of_csp(fixtures::three_constraint_csp());
    auto pw = saturated_power(d, 1);
    CHECK(pw.instance.variables.size() == d.variables.size());
    CHECK(pw.type1_constraints == d.constraints.size() + d.variables.size());
    CHECK(pw.type2_constraints == d.variables.size());
    for (std::size_t c = 0; c < d.constraints.size(); ++c)
        CHECK(pw.instance.constraints[c].map == d.constraints[c].map);
}

TEST_CASE("power errors")
{
    auto d = lc_of_csp(fixtures::cycle_csp());
    CHECK_THROWS_AS(saturated_power(d, 0), Error);
    Caps caps;
    caps.power_vars = 100;
    try {
        saturated_power(d, 3, PowerMode::Reduced, caps);
        CHECK(false);
    }
    catch (const Error & e) {
        CHECK(e.kind() == ErrorKind::SizeCapExceeded);
    }
}

TEST_CASE("self maps")
{
    auto maps = all_self_maps(3);
    CHECK(maps.size() == 27);
    CHECK(maps.front() == std::vector<std::uint32_t>{0, 0, 0});
    CHECK(maps[1] == std::vector<std::uint32_t>{0, 0, 1});
    CHECK(maps.back() == std::vector<std::uint32_t>{2, 2, 2});
}

TEST_CASE("partial power examples")
{
    CspInstance two;
    two.variables = {{"x", {Label(0), Label(1)}}, {"y", {Label(0), Label(1)}}};
    two.constraints = {{{0, 1}, {{0, 1}, {1, 0}}}};
    auto pp = partial_power(two, 1);
    REQUIRE(pp.variables.size() == 3);
    CHECK(pp.variables[0].name == "{}");
    CHECK(pp.variables[0].domain.size() == 1);
    CHECK(pp.constraints.size() == 2);

    auto pp2 = partial_power(two, 2);
    REQUIRE(pp2.variables.size() == 4);
    CHECK(pp2.variables[3].domain.size() == 2);
    CHECK(pp2.constraints.size() == 5);

    CspInstance empty_rel;
    empty_rel.variables = {{"x", {Label(0), Label(1)}}};
    empty_rel.constraints = {{{0}, {}}};
    CHECK(partial_power(empty_rel, 1).variables[1].domain.empty());

    CspInstance neq_self;
    neq_self.variables = {{"x", {Label(0), Label(1)}}};
    neq_self.constraints = {{{0, 0}, {{0, 1}, {1, 0}}}};
    CHECK(partial_power(neq_self, 1).variables[1].domain.empty());
}

TEST_CASE("property: classical solutions lift to every power")
{
    std::mt19937_64 rng(31);
    int lifted = 0;
    for (int trial = 0; trial < 60; ++trial) {
        auto csp = testing::random_csp(rng, 3, 2, 2, 2, 0.6);
        auto d = lc_of_csp(csp);
        std::vector<std::uint32_t> sizes;
        for (const auto & v : d.variables)
            sizes.push_back(static_cast<std::uint32_t>(v.domain.size()));
        testing::for_each_assignment(sizes, [&](const Assignment & s) {
            if (! check_lc_solution(d, s))
                return false;
            for (std::uint32_t k = 1; k <= 2; ++k)
                for (auto mode : {PowerMode::Reduced, PowerMode::Full}) {
                    auto pw = saturated_power(d, k, mode);
                    Assignment lift;
                    for (std::uint64_t t = 0; t < pw.meta.power_variables(); ++t) {
                        auto tuple = pw.meta.tuple(t);
                        std::vector<std::uint32_t> elems;
                        for (auto x : tuple)
                            elems.push_back(s[x]);
                        lift.push_back(static_cast<std::uint32_t>(pw.meta.element_index(tuple, elems)));
                    }
                    CHECK(check_lc_solution(pw.instance, lift));
                }
            ++lifted;
            return true;
        });
    }
    CHECK(lifted > 10);
}

TEST_CASE("property: partial power at level >= #vars contains the full solution set")
{
    std::mt19937_64 rng(32);
    for (int trial = 0; trial < 100; ++trial) {
        auto csp = testing::random_csp(rng, 3, 3, 3, 2);
        auto n = static_cast<std::uint32_t>(csp.variables.size());
        auto pp = partial_power(csp, n);
        std::vector<std::uint32_t> sizes;
        for (const auto & v : csp.variables)
            sizes.push_back(static_cast<std::uint32_t>(v.domain.size()));
        std::size_t count = 0;
        testing::for_each_assignment(sizes, [&](const Assignment & a) {
            count += check_csp_solution(csp, a);
            return false;
        });
        CHECK(pp.variables.back().domain.size() == count);
    }
}
