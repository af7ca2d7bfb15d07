#pragma once

#include <lcr/label_cover.hpp>

#include <random>

namespace lcr::testing {

// Random CSP with integer atoms; relations are random subsets of the scoped product.
inline auto random_csp(std::mt19937_64 & rng, std::uint32_t max_vars, std::uint32_t max_domain,
    std::uint32_t max_constraints, std::uint32_t max_arity, double density = 0.5) -> CspInstance
{
    CspInstance csp;
    auto nvars = 1 + static_cast<std::uint32_t>(rng() % max_vars);
    for (std::uint32_t x = 0; x < nvars; ++x) {
        Variable v;
        v.name = "v" + std::to_string(x);
        auto size = 1 + static_cast<std::uint32_t>(rng() % max_domain);
        for (std::uint32_t a = 0; a < size; ++a)
            v.domain.emplace_back(a);
        csp.variables.push_back(std::move(v));
    }
    auto ncons = static_cast<std::uint32_t>(rng() % (max_constraints + 1));
    std::bernoulli_distribution keep(density);
    for (std::uint32_t c = 0; c < ncons; ++c) {
        CspConstraint con;
        auto arity = 1 + static_cast<std::uint32_t>(rng() % max_arity);
        for (std::uint32_t j = 0; j < arity; ++j)
            con.scope.push_back(static_cast<std::uint32_t>(rng() % nvars));
        std::vector<std::uint32_t> tuple(arity, 0);
        while (true) {
            if (keep(rng))
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

// Every assignment of an LC instance in lexicographic order (first variable most
// significant), stopping early when f returns true.
template <typename F>
auto for_each_assignment(const std::vector<std::uint32_t> & sizes, F && f) -> bool
{
    for (auto s : sizes)
        if (s == 0)
            return false;
    std::vector<std::uint32_t> a(sizes.size(), 0);
    while (true) {
        if (f(a))
            return true;
        std::size_t j = sizes.size();
        while (j > 0) {
            --j;
            if (++a[j] < sizes[j])
                break;
            a[j] = 0;
            if (j == 0)
                return false;
        }
        if (sizes.empty())
            return false;
    }
}

}
