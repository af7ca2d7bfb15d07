#include <doctest.h>

#include <lcr/dihedral.hpp>
#include <lcr/error.hpp>
#include <lcr/fixtures.hpp>
#include <lcr/oracle.hpp>

#include <random>
#include <set>

using namespace lcr;

namespace {

using Perm = std::array<int, 4>;

// Symmetries of the square as vertex permutations: r rotates, s reflects through vertex 0.
auto as_perm(D4Element a) -> Perm
{
    Perm p{};
    for (int v = 0; v < 4; ++v) {
        int w = a.reflection ? (4 - v) % 4 : v;
        p[v] = (w + a.rotation) % 4;
    }
    return p;
}

auto compose(const Perm & a, const Perm & b) -> Perm
{
    Perm out{};
    for (int v = 0; v < 4; ++v)
        out[v] = a[b[v]];
    return out;
}

auto el(std::string_view name) -> D4Element { return d4_from_name(name); }

auto single_variable(std::uint32_t size) -> LcInstance
{
    LcInstance d;
    Variable v{"x", {}};
    for (std::uint32_t a = 0; a < size; ++a)
        v.domain.emplace_back(a);
    d.variables.push_back(std::move(v));
    return d;
}

}

TEST_CASE("D4 multiplication")
{
    CHECK(d4_multiply(el("r"), el("r3")) == el("e"));
    CHECK(d4_multiply(el("s"), el("s")) == el("e"));
    CHECK(d4_multiply(el("s"), el("r")) == d4_multiply(el("r3"), el("s")));
    CHECK(d4_multiply(el("r"), el("s")) == el("rs"));
    CHECK(d4_name(d4_multiply(el("r2"), el("rs"))) == "r3s");
    CHECK_THROWS_AS(d4_from_name("t"), Error);

    // Faithful against the permutation model, with inverses.
    std::set<Perm> images;
    for (std::uint32_t i = 0; i < 8; ++i) {
        auto a = D4Element::from_index(i);
        images.insert(as_perm(a));
        CHECK(d4_multiply(a, d4_inverse(a)) == el("e"));
        for (std::uint32_t j = 0; j < 8; ++j) {
            auto b = D4Element::from_index(j);
            CHECK(as_perm(d4_multiply(a, b)) == compose(as_perm(a), as_perm(b)));
        }
    }
    CHECK(images.size() == 8);
}

TEST_CASE("subgroups and cosets")
{
    auto r2 = el("r2").index();
    auto h = d4_subgroup(1, {{r2}});
    CHECK(h == std::vector<D4Tuple>{{0}, {r2}});
    std::vector<D4Tuple> coset;
    for (const auto & g : h)
        coset.push_back(d4_tuple_multiply({el("r").index()}, g));
    CHECK(coset == std::vector<D4Tuple>{{1}, {3}});
    CHECK(is_d4_coset(coset));
    CHECK(d4_subgroup(1, {{0}}) == std::vector<D4Tuple>{{0}});
    CHECK(d4_subgroup(1, {{1}, {4}}).size() == 8);

    CHECK_FALSE(is_d4_coset({}));
    CHECK_FALSE(is_d4_coset({{0}, {1}}));
    CHECK(is_d4_coset({{5}}));

    for (std::uint32_t n = 1; n <= 3; ++n)
        for (std::uint64_t seed = 0; seed < 30; ++seed) {
            auto r = random_coset_relation(n, seed);
            std::size_t total = 1;
            for (std::uint32_t i = 0; i < n; ++i)
                total *= 8;
            CHECK(total % r.size() == 0);
            CHECK(is_d4_coset(r));
        }
    CHECK(random_coset_relation(2, 7) == random_coset_relation(2, 7));
    CHECK_THROWS_AS(random_coset_relation(0, 1), Error);
    CHECK_THROWS_AS(random_coset_relation(5, 1), Error);
}

TEST_CASE("coset CSP generator")
{
    auto csp = gen_coset_csp(3, 4, 2, 11);
    CHECK(csp.variables.size() == 3);
    CHECK(csp.constraints.size() == 4);
    CHECK(csp.variables[0].domain[5] == Label("rs"));
    for (const auto & c : csp.constraints) {
        CHECK(c.scope.size() <= 2);
        CHECK(std::adjacent_find(c.scope.begin(), c.scope.end()) == c.scope.end());
        CHECK(is_d4_coset(c.relation));
    }
}

TEST_CASE("bilinear forms")
{
    ResidueVec v{1, 0}, w{0, 1};
    CHECK(bilinear_q(v, w) == 1);
    CHECK(bilinear_q(w, v) == 0);
    CHECK_THROWS_AS(bilinear_q(v, ResidueVec{1}), Error);

    std::mt19937_64 rng(81);
    for (int trial = 0; trial < 1000; ++trial) {
        ResidueVec a(20), b(20);
        for (auto & e : a)
            e = static_cast<Residue>(rng() % 2);
        for (auto & e : b)
            e = static_cast<Residue>(rng() % 2);
        Residue dot = 0;
        for (std::size_t i = 0; i < 20; ++i)
            dot ^= a[i] & b[i];
        auto rhs = static_cast<Residue>((weight(a, 2) * weight(b, 2)) ^ dot);
        CHECK((bilinear_q(a, b) ^ bilinear_q(b, a)) == rhs);
        CHECK((bilinear_q_lower(a, b) ^ bilinear_q_lower(b, a)) == rhs);
        CHECK((bilinear_q(a, a) ^ bilinear_q(a, a)) == 0);
    }
}

TEST_CASE("certificate examples")
{
    auto d = single_variable(2);
    VectorSolution s{2, 2, 3, {}, {{{1, 0, 0}, {0, 1, 1}}}};
    auto c = m_certificate(d, s);
    CHECK(c.objects[0].f == std::vector<Residue>{1, 0});
    CHECK(c.objects[0].g == std::vector<std::vector<Residue>>{{0, 0}, {0, 0}});
    CHECK(verify_m_certificate(d, c));

    auto one = single_variable(1);
    auto c1 = m_certificate(one, VectorSolution{2, 2, 1, {{1}}, {{{1}}}});
    CHECK(c1.objects[0].f == std::vector<Residue>{1});
    CHECK(c1.objects[0].g == std::vector<std::vector<Residue>>{{0}});

    VectorSolution level3 = s;
    level3.k = 3;
    CHECK_THROWS_AS(m_certificate(d, level3), Error);

    MCertificate odd{{MObject{{1, 1}, {{0, 0}, {0, 0}}}}};
    CHECK_FALSE(verify_m_certificate(d, odd));
    MCertificate small{{MObject{{1}, {{0}}}}};
    CHECK_THROWS_AS(verify_m_certificate(d, small), Error);
    CHECK_THROWS_AS(verify_m_certificate(d, MCertificate{}), Error);

    // Two f-ones joined by one arc, and an even number of arcs.
    CHECK(verify_m_object(MObject{{1, 1, 1}, {{0, 1, 0}, {0, 1, 1}, {1, 0, 0}}}));
}

TEST_CASE("certificates on the four-cycle")
{
    auto d = lc_of_csp(fixtures::cycle_csp());
    auto t = tensor_from_matrix(d, 2, fixtures::cycle_level2_matrix());
    for (auto form : {BilinearForm::Upper, BilinearForm::Lower}) {
        auto c = m_certificate_from_level(d, t, form);
        REQUIRE(verify_m_certificate(d, c));
        for (const auto & o : c.objects)
            for (std::size_t a = 0; a < o.f.size(); ++a) {
                Residue row = 0;
                for (auto e : o.g[a])
                    row ^= e;
                CHECK(row == 0);
            }

        // Flipping an arc and its reverse keeps the object valid but breaks the image.
        auto bad = c;
        auto & o = bad.objects[d.constraints.front().target];
        REQUIRE(o.f.size() >= 2);
        o.g[0][1] ^= 1;
        o.g[1][0] ^= 1;
        CHECK(verify_m_object(o));
        CHECK_FALSE(verify_m_certificate(d, bad));
    }
}

TEST_CASE("property: level-2 Z_2 decides random coset CSPs")
{
    int feasible = 0, infeasible = 0;
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        auto csp = gen_coset_csp(1 + seed % 3, 1 + seed % 4, 2, seed);
        auto d = lc_of_csp(csp);
        auto t = solve_level(d, 2, 2);
        auto brute = brute_solve_csp(csp);
        CHECK(t.has_value() == brute.has_value());
        if (! t) {
            ++infeasible;
            continue;
        }
        ++feasible;
        CHECK(verify_m_certificate(d, m_certificate_from_level(d, *t)));
        CHECK(verify_m_certificate(d, m_certificate_from_level(d, *t, BilinearForm::Lower)));
    }
    CHECK(feasible > 5);
    CHECK(infeasible > 5);
}
