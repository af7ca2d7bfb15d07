#include <lcr/corpus.hpp>
#include <lcr/dihedral.hpp>
#include <lcr/error.hpp>
#include <lcr/fixtures.hpp>
#include <lcr/oracle.hpp>
#include <lcr/powers.hpp>
#include <lcr/relaxations.hpp>

#include <functional>
#include <random>

namespace lcr {

auto random_csp(std::uint64_t seed, std::uint32_t max_vars, std::uint32_t max_domain, std::uint32_t max_constraints,
    std::uint32_t max_arity, double density) -> CspInstance
{
    if (max_vars == 0 || max_domain == 0 || max_arity == 0)
        throw Error(ErrorKind::InvalidInput, "random CSPs need positive limits");
    std::mt19937_64 rng(seed);
    auto threshold = static_cast<std::uint64_t>(density * 1000);
    CspInstance csp;
    auto nvars = 1 + static_cast<std::uint32_t>(rng() % max_vars);
    for (std::uint32_t x = 0; x < nvars; ++x) {
        Variable v{"v" + std::to_string(x), {}};
        auto size = 1 + rng() % max_domain;
        for (std::uint64_t a = 0; a < size; ++a)
            v.domain.emplace_back(a);
        csp.variables.push_back(std::move(v));
    }
    auto ncons = static_cast<std::uint32_t>(rng() % (max_constraints + 1));
    for (std::uint32_t c = 0; c < ncons; ++c) {
        CspConstraint con;
        auto arity = 1 + static_cast<std::uint32_t>(rng() % max_arity);
        for (std::uint32_t j = 0; j < arity; ++j)
            con.scope.push_back(static_cast<std::uint32_t>(rng() % nvars));
        std::vector<std::uint32_t> tuple(arity, 0);
        while (true) {
            if (rng() % 1000 < threshold)
                con.relation.push_back(tuple);
            std::size_t j = 0;
            while (j < arity && ++tuple[j] == csp.variables[con.scope[j]].domain.size())
                tuple[j++] = 0;
            if (j == arity)
                break;
        }
        csp.constraints.push_back(std::move(con));
    }
    csp.normalize();
    return csp;
}

auto small_corpus() -> std::vector<CorpusEntry>
{
    std::vector<CorpusEntry> out;
    out.push_back({"three-constraint", fixtures::three_constraint_csp()});
    out.push_back({"four-cycle", fixtures::cycle_csp()});
    out.push_back({"z4-contradiction", csp_of_linear_system({4, 1, {{{0}, {2}, 2}, {{0}, {2}, 0}}})});
    out.push_back({"z4-sum", csp_of_linear_system({4, 2, {{{0, 1}, {1, 1}, 1}}})});
    for (std::uint64_t seed = 0; seed < 80; ++seed)
        out.push_back({"random-" + std::to_string(seed), random_csp(seed, 3, 3, 3, 2)});
    for (std::uint64_t seed = 0; seed < 20; ++seed)
        out.push_back({"z4-" + std::to_string(seed),
            csp_of_linear_system(gen_linear_system(4, 1 + seed % 3, 1 + seed % 3, seed, 2))});
    for (std::uint64_t seed = 0; seed < 10; ++seed)
        out.push_back({"z3-" + std::to_string(seed),
            csp_of_linear_system(gen_linear_system(3, 1 + seed % 3, 1 + seed % 3, seed, 2))});
    for (std::uint64_t seed = 0; seed < 20; ++seed)
        out.push_back({"d4-" + std::to_string(seed), gen_coset_csp(1 + seed % 3, 1 + seed % 3, 2, seed)});
    return out;
}

auto check_soundness(const CspInstance & csp, const Caps & caps) -> SoundnessReport
{
    SoundnessReport r;
    r.satisfiable = brute_solve_csp(csp, caps).has_value();
    auto d = lc_of_csp(csp);
    auto run = [&](const std::string & name, const std::function<bool()> & accepts) {
        try {
            auto ok = accepts();
            ++r.checks;
            if (r.satisfiable && ! ok)
                r.violations.push_back(name);
        } catch (const Error & e) {
            if (e.kind() != ErrorKind::SizeCapExceeded && e.kind() != ErrorKind::CapExceeded)
                throw;
            ++r.skipped;
        }
    };
    run("ac", [&] { return ! arc_consistency(d).emptied; });
    for (std::uint32_t p : {2u, 3u, 5u})
        run("zp" + std::to_string(p), [&] { return solve_zp(d, p, caps).has_value(); });
    for (std::int64_t n : {4, 6})
        run("zn" + std::to_string(n), [&] { return solve_zn(d, n, caps).has_value(); });
    for (std::uint32_t p : {2u, 3u})
        for (std::uint32_t k : {2u, 3u})
            run("level" + std::to_string(k) + "-z" + std::to_string(p),
                [&] { return solve_level(d, p, k, LevelEncoding::Canonical, caps).has_value(); });
    for (std::uint32_t p : {2u, 3u})
        for (std::uint32_t k : {1u, 2u})
            run("partial" + std::to_string(k) + "-z" + std::to_string(p),
                [&] { return solve_zp(partial_power(csp, k, caps), p, caps).has_value(); });
    return r;
}

}
