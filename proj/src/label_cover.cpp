#include <lcr/error.hpp>
#include <lcr/label_cover.hpp>

#include <algorithm>
#include <numeric>
#include <set>

namespace lcr {

auto CspInstance::normalize() -> void
{
    for (std::size_t c = 0; c < constraints.size(); ++c) {
        auto & con = constraints[c];
        for (auto v : con.scope)
            if (v >= variables.size())
                throw Error(ErrorKind::InvalidInput, "constraint " + std::to_string(c) + " scopes a missing variable");
        std::set<std::vector<std::uint32_t>> seen;
        std::vector<std::vector<std::uint32_t>> kept;
        for (auto & tuple : con.relation) {
            if (tuple.size() != con.scope.size())
                throw Error(ErrorKind::InvalidInput, "constraint " + std::to_string(c) + " has a tuple of wrong arity");
            for (std::size_t j = 0; j < tuple.size(); ++j)
                if (tuple[j] >= variables[con.scope[j]].domain.size())
                    throw Error(ErrorKind::InvalidInput, "constraint " + std::to_string(c) + " has a tuple outside the domains");
            if (seen.insert(tuple).second)
                kept.push_back(tuple);
        }
        con.relation = std::move(kept);
    }
}

auto LcInstance::validate() const -> void
{
    for (std::size_t c = 0; c < constraints.size(); ++c) {
        const auto & con = constraints[c];
        if (con.target >= variables.size() || con.source >= variables.size())
            throw Error(ErrorKind::InvalidInput, "constraint " + std::to_string(c) + " references a missing variable");
        if (con.map.size() != variables[con.source].domain.size())
            throw Error(ErrorKind::InvalidInput, "constraint " + std::to_string(c) + " map is not total on the source domain");
        for (auto t : con.map)
            if (t >= variables[con.target].domain.size())
                throw Error(ErrorKind::InvalidInput, "constraint " + std::to_string(c) + " map leaves the target domain");
    }
}

PointIndex::PointIndex(const LcInstance & d) : PointIndex(domain_sizes(d))
{
}

PointIndex::PointIndex(const std::vector<std::uint32_t> & sizes)
{
    _offset.reserve(sizes.size() + 1);
    _offset.push_back(0);
    for (std::uint32_t x = 0; x < sizes.size(); ++x) {
        for (std::uint32_t a = 0; a < sizes[x]; ++a)
            _var_of.push_back(x);
        _offset.push_back(_offset.back() + sizes[x]);
    }
    _total = _offset.back();
}

auto domain_sizes(const LcInstance & d) -> std::vector<std::uint32_t>
{
    std::vector<std::uint32_t> out;
    out.reserve(d.variables.size());
    for (const auto & v : d.variables)
        out.push_back(static_cast<std::uint32_t>(v.domain.size()));
    return out;
}

auto lc_of_csp(const CspInstance & csp) -> LcInstance
{
    LcInstance d;
    d.variables = csp.variables;
    for (std::size_t c = 0; c < csp.constraints.size(); ++c) {
        const auto & con = csp.constraints[c];
        Variable v;
        v.name = "c" + std::to_string(c) + "[";
        for (std::size_t j = 0; j < con.scope.size(); ++j)
            v.name += (j ? "," : "") + csp.variables[con.scope[j]].name;
        v.name += "]";
        for (const auto & tuple : con.relation) {
            Label label = Label::array();
            for (std::size_t j = 0; j < tuple.size(); ++j)
                label.push_back(csp.variables[con.scope[j]].domain[tuple[j]]);
            v.domain.push_back(std::move(label));
        }
        d.variables.push_back(std::move(v));
    }
    auto base = static_cast<std::uint32_t>(csp.variables.size());
    for (std::size_t c = 0; c < csp.constraints.size(); ++c) {
        const auto & con = csp.constraints[c];
        for (std::size_t j = 0; j < con.scope.size(); ++j) {
            LcConstraint lc;
            lc.target = con.scope[j];
            lc.source = base + static_cast<std::uint32_t>(c);
            for (const auto & tuple : con.relation)
                lc.map.push_back(tuple[j]);
            d.constraints.push_back(std::move(lc));
        }
    }
    return d;
}

auto check_lc_solution(const LcInstance & d, const Assignment & a) -> bool
{
    if (a.size() != d.variables.size())
        throw Error(ErrorKind::ShapeMismatch, "assignment length differs from the variable count");
    for (std::size_t x = 0; x < a.size(); ++x)
        if (a[x] >= d.variables[x].domain.size())
            throw Error(ErrorKind::ShapeMismatch, "assignment value outside the domain");
    for (const auto & c : d.constraints)
        if (c.map[a[c.source]] != a[c.target])
            return false;
    return true;
}

auto check_csp_solution(const CspInstance & csp, const Assignment & a) -> bool
{
    if (a.size() != csp.variables.size())
        throw Error(ErrorKind::ShapeMismatch, "assignment length differs from the variable count");
    for (std::size_t x = 0; x < a.size(); ++x)
        if (a[x] >= csp.variables[x].domain.size())
            throw Error(ErrorKind::ShapeMismatch, "assignment value outside the domain");
    std::vector<std::uint32_t> tuple;
    for (const auto & c : csp.constraints) {
        tuple.clear();
        for (auto v : c.scope)
            tuple.push_back(a[v]);
        if (std::find(c.relation.begin(), c.relation.end(), tuple) == c.relation.end())
            return false;
    }
    return true;
}

auto extend_csp_solution(const CspInstance & csp, const Assignment & a) -> Assignment
{
    if (! check_csp_solution(csp, a))
        throw Error(ErrorKind::InvalidInput, "assignment does not solve the CSP instance");
    Assignment out = a;
    std::vector<std::uint32_t> tuple;
    for (const auto & c : csp.constraints) {
        tuple.clear();
        for (auto v : c.scope)
            tuple.push_back(a[v]);
        auto it = std::find(c.relation.begin(), c.relation.end(), tuple);
        out.push_back(static_cast<std::uint32_t>(it - c.relation.begin()));
    }
    return out;
}

auto connected_components(const LcInstance & d) -> std::vector<std::vector<std::uint32_t>>
{
    std::vector<std::uint32_t> parent(d.variables.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::uint32_t x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto & c : d.constraints) {
        auto a = find(c.target), b = find(c.source);
        if (a != b)
            parent[std::max(a, b)] = std::min(a, b);
    }
    std::vector<std::vector<std::uint32_t>> groups(d.variables.size());
    for (std::uint32_t x = 0; x < d.variables.size(); ++x)
        groups[find(x)].push_back(x);
    std::vector<std::vector<std::uint32_t>> out;
    for (auto & g : groups)
        if (! g.empty())
            out.push_back(std::move(g));
    return out;
}

auto is_connected(const LcInstance & d) -> bool
{
    return connected_components(d).size() <= 1;
}

auto induced_subinstance(const LcInstance & d, const std::vector<std::uint32_t> & vars) -> LcInstance
{
    std::vector<std::uint32_t> local(d.variables.size(), UINT32_MAX);
    LcInstance out;
    for (std::uint32_t i = 0; i < vars.size(); ++i) {
        local[vars[i]] = i;
        out.variables.push_back(d.variables[vars[i]]);
    }
    for (const auto & c : d.constraints)
        if (local[c.target] != UINT32_MAX && local[c.source] != UINT32_MAX)
            out.constraints.push_back(LcConstraint{local[c.target], local[c.source], c.map});
    return out;
}

auto disjoint_union(const LcInstance & a, const LcInstance & b) -> LcInstance
{
    LcInstance out = a;
    auto shift = static_cast<std::uint32_t>(a.variables.size());
    out.variables.insert(out.variables.end(), b.variables.begin(), b.variables.end());
    for (const auto & c : b.constraints)
        out.constraints.push_back(LcConstraint{c.target + shift, c.source + shift, c.map});
    return out;
}

auto max_arity(const CspInstance & csp) -> std::size_t
{
    std::size_t n = 0;
    for (const auto & c : csp.constraints)
        n = std::max(n, c.scope.size());
    return n;
}

}
