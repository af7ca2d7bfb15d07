#include <lcr/error.hpp>
#include <lcr/oracle.hpp>
#include <lcr/vector_minion.hpp>

#include <algorithm>
#include <functional>
#include <random>
#include <set>

namespace lcr {

auto brute_solve_csp(const CspInstance & csp, const Caps & caps) -> std::optional<Assignment>
{
    double space = 1;
    for (const auto & v : csp.variables)
        space *= static_cast<double>(v.domain.size());
    if (space > static_cast<double>(caps.brute_force))
        throw Error(ErrorKind::SearchSpaceTooLarge, "brute force over " + std::to_string(space) + " assignments");

    auto n = csp.variables.size();
    // Constraints are checked once their last scope variable is assigned.
    std::vector<std::vector<std::size_t>> due(n);
    std::vector<std::set<std::vector<std::uint32_t>>> relations;
    for (std::size_t c = 0; c < csp.constraints.size(); ++c) {
        const auto & con = csp.constraints[c];
        relations.emplace_back(con.relation.begin(), con.relation.end());
        if (con.scope.empty()) {
            if (con.relation.empty())
                return std::nullopt;
            continue;
        }
        due[*std::max_element(con.scope.begin(), con.scope.end())].push_back(c);
    }
    Assignment a(n, 0);
    std::vector<std::uint32_t> tuple;
    std::function<bool(std::size_t)> rec = [&](std::size_t x) {
        if (x == n)
            return true;
        for (std::uint32_t e = 0; e < csp.variables[x].domain.size(); ++e) {
            a[x] = e;
            bool ok = true;
            for (auto c : due[x]) {
                tuple.clear();
                for (auto s : csp.constraints[c].scope)
                    tuple.push_back(a[s]);
                if (! relations[c].contains(tuple)) {
                    ok = false;
                    break;
                }
            }
            if (ok && rec(x + 1))
                return true;
        }
        return false;
    };
    if (rec(0))
        return a;
    return std::nullopt;
}

auto brute_solve_lc(const LcInstance & d, const Caps & caps) -> std::optional<Assignment>
{
    d.validate();
    auto n = d.variables.size();
    std::vector<std::vector<const LcConstraint *>> due(n);
    for (const auto & c : d.constraints)
        due[std::max(c.target, c.source)].push_back(&c);
    Assignment a(n, 0);
    std::uint64_t nodes = 0;
    std::function<bool(std::size_t)> rec = [&](std::size_t x) {
        if (x == n)
            return true;
        for (std::uint32_t e = 0; e < d.domain_size(static_cast<std::uint32_t>(x)); ++e) {
            if (++nodes > caps.brute_force)
                throw Error(ErrorKind::SearchSpaceTooLarge, "LC search visited more than "
                    + std::to_string(caps.brute_force) + " nodes");
            a[x] = e;
            bool ok = true;
            for (const auto * c : due[x])
                if (c->map[a[c->source]] != a[c->target]) {
                    ok = false;
                    break;
                }
            if (ok && rec(x + 1))
                return true;
        }
        return false;
    };
    if (rec(0))
        return a;
    return std::nullopt;
}

auto gen_linear_system(std::int64_t n, std::uint32_t num_vars, std::uint32_t num_eqs, std::uint64_t seed,
    std::uint32_t max_arity) -> LinearSystem
{
    if (n < 2 || num_vars == 0 || max_arity == 0)
        throw Error(ErrorKind::InvalidInput, "linear systems need n >= 2, variables and a positive arity");
    // Plain modular reduction of raw draws keeps the output identical across standard libraries.
    std::mt19937_64 rng(seed);
    LinearSystem sys;
    sys.n = n;
    sys.num_vars = num_vars;
    auto cap = std::min(max_arity, num_vars);
    for (std::uint32_t e = 0; e < num_eqs; ++e) {
        auto arity = 1 + static_cast<std::uint32_t>(rng() % cap);
        std::vector<std::uint32_t> pool(num_vars);
        for (std::uint32_t i = 0; i < num_vars; ++i)
            pool[i] = i;
        for (std::uint32_t i = 0; i < arity; ++i)
            std::swap(pool[i], pool[i + rng() % (num_vars - i)]);
        LinearEquation eq;
        eq.vars.assign(pool.begin(), pool.begin() + arity);
        std::sort(eq.vars.begin(), eq.vars.end());
        for (std::uint32_t i = 0; i < arity; ++i)
            eq.coeffs.push_back(1 + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(n - 1)));
        eq.rhs = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(n));
        sys.equations.push_back(std::move(eq));
    }
    return sys;
}

auto csp_of_linear_system(const LinearSystem & sys, const Caps & caps) -> CspInstance
{
    CspInstance csp;
    for (std::uint32_t x = 0; x < sys.num_vars; ++x) {
        Variable v{"x" + std::to_string(x), {}};
        for (std::int64_t a = 0; a < sys.n; ++a)
            v.domain.emplace_back(a);
        csp.variables.push_back(std::move(v));
    }
    for (const auto & eq : sys.equations) {
        double tuples = 1;
        for (std::size_t i = 0; i < eq.vars.size(); ++i)
            tuples *= static_cast<double>(sys.n);
        if (tuples > static_cast<double>(caps.brute_force))
            throw Error(ErrorKind::CapExceeded, "equation relation would list too many tuples");
        CspConstraint c;
        c.scope = eq.vars;
        std::vector<std::uint32_t> t(eq.vars.size(), 0);
        while (true) {
            std::int64_t s = 0;
            for (std::size_t i = 0; i < t.size(); ++i)
                s = (s + eq.coeffs[i] % sys.n * t[i]) % sys.n;
            if (static_cast<std::uint64_t>(s) == reduce_mod(eq.rhs, static_cast<std::uint64_t>(sys.n)))
                c.relation.push_back(t);
            std::size_t i = t.size();
            bool done = true;
            while (i > 0) {
                --i;
                if (++t[i] < sys.n) {
                    done = false;
                    break;
                }
                t[i] = 0;
            }
            if (done)
                break;
        }
        csp.constraints.push_back(std::move(c));
    }
    return csp;
}

auto gen_linear_system_csp(std::int64_t n, std::uint32_t num_vars, std::uint32_t num_eqs, std::uint64_t seed,
    std::uint32_t max_arity, const Caps & caps) -> CspInstance
{
    return csp_of_linear_system(gen_linear_system(n, num_vars, num_eqs, seed, max_arity), caps);
}

auto satisfies(const LinearSystem & sys, const std::vector<std::int64_t> & x) -> bool
{
    if (x.size() != sys.num_vars)
        throw Error(ErrorKind::LengthMismatch, "assignment has the wrong length");
    for (const auto & eq : sys.equations) {
        __int128 s = 0;
        for (std::size_t i = 0; i < eq.vars.size(); ++i)
            s += static_cast<__int128>(eq.coeffs[i]) * x[eq.vars[i]];
        if ((s - eq.rhs) % sys.n != 0)
            return false;
    }
    return true;
}

auto linear_system_solvable(const LinearSystem & sys) -> bool
{
    if (sys.equations.empty())
        return true;
    IntMatrix a;
    std::vector<std::int64_t> b;
    for (const auto & eq : sys.equations) {
        std::vector<std::int64_t> row(sys.num_vars, 0);
        for (std::size_t i = 0; i < eq.vars.size(); ++i)
            row[eq.vars[i]] += eq.coeffs[i];
        a.push_back(std::move(row));
        b.push_back(eq.rhs);
    }
    return solve_mod_n(a, b, sys.n).feasible();
}

auto to_json(const LinearSystem & sys) -> Json
{
    Json out;
    out["n"] = sys.n;
    out["num_vars"] = sys.num_vars;
    out["equations"] = Json::array();
    for (const auto & eq : sys.equations) {
        Json e;
        e["vars"] = eq.vars;
        e["coeffs"] = eq.coeffs;
        e["rhs"] = eq.rhs;
        out["equations"].push_back(std::move(e));
    }
    return out;
}

namespace {

    auto object_of(const std::vector<ResidueVec> & vectors, std::uint32_t p) -> VectorObject
    {
        VectorObject o;
        o.p = p;
        o.k = 2;
        o.n = static_cast<std::uint32_t>(vectors.front().size());
        o.v = vectors;
        // V is the whole space.
        for (std::uint32_t i = 0; i < o.n; ++i) {
            ResidueVec e(o.n, 0);
            e[i] = 1;
            o.space_basis.push_back(std::move(e));
        }
        return o;
    }

    // Checks the objects and facts, then emits the image equations.
    auto finish(EpsilonSystem & sys, bool with_sums) -> void
    {
        for (std::size_t i = 0; i < sys.objects.size(); ++i) {
            auto r = verify_vector_object(object_of(sys.objects[i], sys.p));
            if (! r.ok)
                throw Error(ErrorKind::EqualityVerificationFailed, "object " + std::to_string(i) + ": " + r.violation);
        }
        std::vector<std::size_t> offset{0};
        for (const auto & o : sys.objects)
            offset.push_back(offset.back() + o.size());
        auto unknowns = offset.back();

        for (std::size_t f = 0; f < sys.equalities.size(); ++f) {
            const auto & eq = sys.equalities[f];
            auto lhs = minor_vector_object(object_of(sys.objects[eq.left], sys.p), eq.left_map, eq.codomain);
            auto rhs = minor_vector_object(object_of(sys.objects[eq.right], sys.p), eq.right_map, eq.codomain);
            if (lhs.v != rhs.v)
                throw Error(ErrorKind::EqualityVerificationFailed, "minor fact " + std::to_string(f) + " does not hold");
            for (std::uint32_t t = 0; t < eq.codomain; ++t) {
                std::vector<std::int64_t> row(unknowns, 0);
                for (std::size_t j = 0; j < eq.left_map.size(); ++j)
                    if (eq.left_map[j] == t)
                        row[offset[eq.left] + j] += 1;
                for (std::size_t j = 0; j < eq.right_map.size(); ++j)
                    if (eq.right_map[j] == t)
                        row[offset[eq.right] + j] -= 1;
                if (std::any_of(row.begin(), row.end(), [](std::int64_t x) { return x != 0; })) {
                    sys.matrix.push_back(std::move(row));
                    sys.rhs.push_back(0);
                }
            }
        }
        if (with_sums)
            for (std::size_t i = 0; i < sys.objects.size(); ++i) {
                std::vector<std::int64_t> row(unknowns, 0);
                for (auto j = offset[i]; j < offset[i + 1]; ++j)
                    row[j] = 1;
                sys.matrix.push_back(std::move(row));
                sys.rhs.push_back(1);
            }
    }

}

auto epsilon_system_v2z2(std::int64_t modulus, bool with_sums) -> EpsilonSystem
{
    EpsilonSystem sys;
    sys.p = 2;
    sys.modulus = modulus;
    sys.objects = {
        {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}},
        {{1, 0, 0}, {0, 1, 1}, {0, 1, 1}, {0, 1, 1}},
        {{0, 1, 0}, {1, 0, 1}, {1, 0, 1}, {1, 0, 1}},
        {{0, 0, 1}, {1, 1, 0}, {1, 1, 0}, {1, 1, 0}},
    };
    // Maps are written 0-based: the image of element j is map[j].
    for (std::size_t i = 1; i <= 3; ++i)
        sys.equalities.push_back({i, {0, 1, 2, 3}, i, {0, 2, 3, 1}, 4});
    // The merge maps of the three 3-element facts; the third codomain element of the
    // left side has an empty preimage.
    sys.equalities.push_back({0, {0, 1, 1}, 1, {0, 1, 2, 2}, 3});
    sys.equalities.push_back({0, {1, 0, 1}, 2, {0, 1, 2, 2}, 3});
    sys.equalities.push_back({0, {1, 1, 0}, 3, {0, 1, 2, 2}, 3});
    finish(sys, with_sums);
    return sys;
}

auto epsilon_system_v2zp(std::uint32_t p, bool with_sums) -> EpsilonSystem
{
    if (p == 2 || ! is_prime(p))
        throw Error(ErrorKind::WrongParameters, "needs an odd prime");
    EpsilonSystem sys;
    sys.p = p;
    sys.modulus = std::int64_t{p} * p;
    auto m = p + 2;
    auto copies = (p + 1) / 2;

    // Indicator of S (or its complement) on [p+2], repeated (p+1)/2 times.
    auto indicator = [&](std::vector<std::uint32_t> s, bool complement) {
        ResidueVec base(m, complement ? 1 : 0);
        for (auto i : s)
            base[i] = complement ? 0 : 1;
        ResidueVec out;
        for (std::uint32_t c = 0; c < copies; ++c)
            out.insert(out.end(), base.begin(), base.end());
        return out;
    };

    std::vector<ResidueVec> mu, eta;
    for (std::uint32_t i = 0; i < m; ++i) {
        mu.push_back(indicator({i}, false));
        eta.push_back(indicator({i}, true));
    }
    sys.objects = {mu, eta};
    const std::size_t mu_id = 0, eta_id = 1;
    for (std::uint32_t i = 0; i < m; ++i)
        for (std::uint32_t j = i + 1; j < m; ++j) {
            std::vector<ResidueVec> eps(p + 1, indicator({i, j}, true));
            eps.push_back(indicator({i, j}, false));
            auto id = sys.objects.size();
            sys.objects.push_back(std::move(eps));

            std::vector<std::uint32_t> identity(m);
            for (std::uint32_t l = 0; l < m; ++l)
                identity[l] = l;
            // Adjacent transpositions of the f copies.
            for (std::uint32_t l = 0; l + 1 < p + 1; ++l) {
                auto swapped = identity;
                std::swap(swapped[l], swapped[l + 1]);
                sys.equalities.push_back({id, identity, id, swapped, m});
            }
            // i, j to 0 and the rest to 1.
            std::vector<std::uint32_t> pair_map(m, 1);
            pair_map[i] = pair_map[j] = 0;
            // f_i + f_j = e_ij + 2 f_ij: two copies and e to 0, the others to 1.
            std::vector<std::uint32_t> two_copies(m, 1);
            two_copies[0] = two_copies[1] = two_copies[m - 1] = 0;
            sys.equalities.push_back({eta_id, pair_map, id, two_copies, 2});
            // p f_ij = 0: p copies to 0, one copy to 1, e to 2, against all copies to 1.
            std::vector<std::uint32_t> p_copies(m, 0), all_copies(m, 1);
            p_copies[m - 2] = 1;
            p_copies[m - 1] = all_copies[m - 1] = 2;
            sys.equalities.push_back({id, p_copies, id, all_copies, 3});
            // e_i + e_j = e_ij: e to 0, copies to 1.
            std::vector<std::uint32_t> e_first(m, 1);
            e_first[m - 1] = 0;
            sys.equalities.push_back({mu_id, pair_map, id, e_first, 2});
        }
    finish(sys, with_sums);
    return sys;
}

auto epsilon_system_infeasible(const EpsilonSystem & sys) -> bool
{
    if (sys.matrix.empty())
        return false;
    return ! solve_mod_n(sys.matrix, sys.rhs, sys.modulus).feasible();
}

auto check_no_homo_v2z2_to_z8() -> bool { return epsilon_system_infeasible(epsilon_system_v2z2(8)); }

auto check_no_homo_v2zp_to_zp2(std::uint32_t p) -> bool
{
    return epsilon_system_infeasible(epsilon_system_v2zp(p));
}

}
