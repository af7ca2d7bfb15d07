#include <doctest.h>

#include "test_support.hpp"

#include <algorithm>
#include <functional>

#include <lcr/error.hpp>
#include <lcr/fixtures.hpp>
#include <lcr/json_io.hpp>
#include <lcr/label_cover.hpp>

using namespace lcr;

TEST_CASE("lc_of_csp on the three-constraint instance")
{
    auto d = lc_of_csp(fixtures::three_constraint_csp());
    CHECK(d.variables.size() == 6);
    CHECK(d.constraints.size() == 5);
    CHECK(d.variables[3].domain.size() == 1);
    CHECK(d.variables[4].domain == std::vector<Label>{Label::array({0, 1}), Label::array({1, 0})});
    CHECK(d.variables[5].domain.size() == 3);
    // (x != y) -> y is the second projection.
    const auto & c = d.constraints[2];
    CHECK(c.target == 1);
    CHECK(c.source == 4);
    CHECK(c.map == std::vector<std::uint32_t>{1, 0});
    CHECK(is_connected(d));
}

TEST_CASE("lc_of_csp on the four-cycle")
{
    auto d = lc_of_csp(fixtures::cycle_csp());
    CHECK(d.variables.size() == 8);
    CHECK(d.constraints.size() == 8);
    for (std::uint32_t c = 4; c < 7; ++c)
        CHECK(d.variables[c].domain
            == std::vector<Label>{Label::array({0, 0}), Label::array({0, 1}), Label::array({1, 1})});
    CHECK(d.variables[7].domain == std::vector<Label>{Label::array({0, 1})});
}

TEST_CASE("lc_of_csp without constraints is discrete")
{
    CspInstance csp;
    csp.variables = {{"a", {Label(0), Label(1)}}, {"b", {Label("p")}}};
    auto d = lc_of_csp(csp);
    CHECK(d.variables.size() == 2);
    CHECK(d.constraints.empty());
    CHECK(connected_components(d).size() == 2);
}

TEST_CASE("check_lc_solution")
{
    auto d = lc_of_csp(fixtures::three_constraint_csp());
    CHECK(check_lc_solution(d, fixtures::three_constraint_solution()));
    auto wrong = fixtures::three_constraint_solution();
    wrong[1] = 1;
    CHECK_FALSE(check_lc_solution(d, wrong));
    CHECK_THROWS_AS(check_lc_solution(d, {0, 0}), Error);

    LcInstance discrete;
    discrete.variables = {{"a", {Label(0), Label(1)}}, {"b", {Label(0), Label(1), Label(2)}}};
    CHECK(check_lc_solution(discrete, {1, 2}));
}

TEST_CASE("connected components")
{
    auto d = lc_of_csp(fixtures::three_constraint_csp());
    CHECK(connected_components(d).size() == 1);
    auto two = disjoint_union(d, d);
    auto comps = connected_components(two);
    REQUIRE(comps.size() == 2);
    CHECK(comps[0] == std::vector<std::uint32_t>{0, 1, 2, 3, 4, 5});
    CHECK(comps[1] == std::vector<std::uint32_t>{6, 7, 8, 9, 10, 11});
    auto sub = induced_subinstance(two, comps[1]);
    CHECK(to_json(sub) == to_json(d));
}

TEST_CASE("json round trip")
{
    auto csp = fixtures::cycle_csp();
    auto back = csp_from_json(to_json(csp));
    CHECK(to_json(back) == to_json(csp));
    CHECK(is_csp_json(to_json(csp)));
    auto d = lc_of_csp(csp);
    CHECK_FALSE(is_csp_json(to_json(d)));
    CHECK(to_json(lc_from_json(to_json(d))) == to_json(d));
    CHECK(content_digest(to_json(d)) == content_digest(to_json(lc_from_json(to_json(d)))));
    CHECK(content_digest(to_json(d)).size() == 64);
}

TEST_CASE("normalize deduplicates relation tuples")
{
    CspInstance csp;
    csp.variables = {{"a", {Label(0), Label(1)}}};
    csp.constraints = {{{0}, {{1}, {0}, {1}}}};
    csp.normalize();
    CHECK(csp.constraints[0].relation == std::vector<std::vector<std::uint32_t>>{{1}, {0}});
    csp.constraints[0].relation.push_back({2});
    CHECK_THROWS_AS(csp.normalize(), Error);
}

TEST_CASE("property: CSP solutions correspond to LC solutions")
{
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 300; ++trial) {
        auto csp = testing::random_csp(rng, 3, 3, 3, 3);
        auto d = lc_of_csp(csp);
        std::vector<std::uint32_t> csp_sizes, lc_sizes;
        for (const auto & v : csp.variables)
            csp_sizes.push_back(static_cast<std::uint32_t>(v.domain.size()));
        for (const auto & v : d.variables)
            lc_sizes.push_back(static_cast<std::uint32_t>(v.domain.size()));

        std::size_t csp_count = 0;
        testing::for_each_assignment(csp_sizes, [&](const std::vector<std::uint32_t> & a) {
            if (check_csp_solution(csp, a)) {
                ++csp_count;
                CHECK(check_lc_solution(d, extend_csp_solution(csp, a)));
            }
            return false;
        });
        std::size_t lc_count = 0;
        testing::for_each_assignment(lc_sizes, [&](const std::vector<std::uint32_t> & a) {
            if (check_lc_solution(d, a)) {
                ++lc_count;
                Assignment head(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(csp.variables.size()));
                CHECK(check_csp_solution(csp, head));
                CHECK(extend_csp_solution(csp, head) == a);
            }
            return false;
        });
        CHECK(csp_count == lc_count);
    }
}

TEST_CASE("property: connected covering CSPs give connected LC instances")
{
    std::mt19937_64 rng(22);
    int checked = 0;
    for (int trial = 0; trial < 400; ++trial) {
        auto csp = testing::random_csp(rng, 4, 2, 4, 3);
        // Union-find over the constraint hypergraph.
        std::vector<std::uint32_t> parent(csp.variables.size());
        for (std::uint32_t i = 0; i < parent.size(); ++i)
            parent[i] = i;
        std::function<std::uint32_t(std::uint32_t)> find = [&](std::uint32_t x) {
            return parent[x] == x ? x : parent[x] = find(parent[x]);
        };
        std::vector<char> covered(csp.variables.size(), 0);
        for (const auto & c : csp.constraints)
            for (auto v : c.scope) {
                covered[v] = 1;
                parent[find(v)] = find(c.scope[0]);
            }
        bool all_covered = std::all_of(covered.begin(), covered.end(), [](char c) { return c; });
        bool one_class = true;
        for (std::uint32_t v = 0; v < parent.size(); ++v)
            one_class = one_class && find(v) == find(0);
        if (all_covered && one_class) {
            ++checked;
            CHECK(is_connected(lc_of_csp(csp)));
        }
    }
    CHECK(checked > 20);
}
