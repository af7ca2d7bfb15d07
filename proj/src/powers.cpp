#include <lcr/error.hpp>
#include <lcr/powers.hpp>

#include <algorithm>
#include <map>
#include <set>

namespace lcr {

PowerMeta::PowerMeta(std::uint32_t k, std::vector<std::uint32_t> base_domain_sizes) :
    _k(k), _sizes(std::move(base_domain_sizes))
{
}

auto PowerMeta::power_variables() const -> std::uint64_t
{
    std::uint64_t n = 1;
    for (std::uint32_t i = 0; i < _k; ++i)
        n *= _sizes.size();
    return n;
}

auto PowerMeta::tuple(std::uint64_t index) const -> std::vector<std::uint32_t>
{
    std::vector<std::uint32_t> t(_k);
    for (std::uint32_t i = _k; i-- > 0;) {
        t[i] = static_cast<std::uint32_t>(index % _sizes.size());
        index /= _sizes.size();
    }
    return t;
}

auto PowerMeta::index(const std::vector<std::uint32_t> & tuple) const -> std::uint64_t
{
    std::uint64_t idx = 0;
    for (auto x : tuple)
        idx = idx * _sizes.size() + x;
    return idx;
}

auto PowerMeta::domain_size(const std::vector<std::uint32_t> & tuple) const -> std::uint64_t
{
    std::uint64_t n = 1;
    for (auto x : tuple)
        n *= _sizes[x];
    return n;
}

auto PowerMeta::element(const std::vector<std::uint32_t> & tuple, std::uint64_t e) const -> std::vector<std::uint32_t>
{
    std::vector<std::uint32_t> out(tuple.size());
    for (std::size_t i = tuple.size(); i-- > 0;) {
        out[i] = static_cast<std::uint32_t>(e % _sizes[tuple[i]]);
        e /= _sizes[tuple[i]];
    }
    return out;
}

auto PowerMeta::element_index(const std::vector<std::uint32_t> & tuple, const std::vector<std::uint32_t> & elems) const
    -> std::uint64_t
{
    std::uint64_t idx = 0;
    for (std::size_t i = 0; i < tuple.size(); ++i)
        idx = idx * _sizes[tuple[i]] + elems[i];
    return idx;
}

auto all_self_maps(std::uint32_t k) -> std::vector<std::vector<std::uint32_t>>
{
    std::vector<std::vector<std::uint32_t>> out;
    std::vector<std::uint32_t> s(k, 0);
    while (true) {
        out.push_back(s);
        std::size_t i = k;
        while (i > 0) {
            --i;
            if (++s[i] < k)
                break;
            s[i] = 0;
            if (i == 0)
                return out;
        }
        if (k == 0)
            return out;
    }
}

auto saturated_power(const LcInstance & d, std::uint32_t k, PowerMode mode, const Caps & caps) -> PowerInstance
{
    if (k == 0)
        throw Error(ErrorKind::LevelZero, "the saturated power needs k >= 1");
    d.validate();

    std::vector<std::uint32_t> sizes;
    for (const auto & v : d.variables)
        sizes.push_back(static_cast<std::uint32_t>(v.domain.size()));
    PowerMeta meta(k, sizes);

    double nvars = 1, npoints = 1, total_points = 0;
    for (std::uint32_t i = 0; i < k; ++i)
        nvars *= static_cast<double>(sizes.size());
    for (auto s : sizes)
        total_points += s;
    for (std::uint32_t i = 0; i < k; ++i)
        npoints *= total_points;
    if (nvars > static_cast<double>(caps.power_vars))
        throw Error(ErrorKind::SizeCapExceeded, "power needs " + std::to_string(static_cast<std::uint64_t>(nvars))
            + " variables, cap is " + std::to_string(caps.power_vars));
    if (npoints > static_cast<double>(caps.unknowns))
        throw Error(ErrorKind::SizeCapExceeded, "power needs " + std::to_string(static_cast<std::uint64_t>(npoints))
            + " points, cap is " + std::to_string(caps.unknowns));

    PowerInstance out;
    out.meta = meta;
    auto & inst = out.instance;
    auto n = meta.power_variables();
    inst.variables.reserve(n);
    for (std::uint64_t t = 0; t < n; ++t) {
        auto tuple = meta.tuple(t);
        Variable v;
        v.name = "(";
        for (std::uint32_t i = 0; i < k; ++i)
            v.name += (i ? "," : "") + d.variables[tuple[i]].name;
        v.name += ")";
        auto size = meta.domain_size(tuple);
        v.domain.reserve(size);
        for (std::uint64_t e = 0; e < size; ++e) {
            auto elems = meta.element(tuple, e);
            Label label = Label::array();
            for (std::uint32_t i = 0; i < k; ++i)
                label.push_back(d.variables[tuple[i]].domain[elems[i]]);
            v.domain.push_back(std::move(label));
        }
        inst.variables.push_back(std::move(v));
    }

    // Arcs after adding x = id(x) for every variable.
    std::vector<LcConstraint> arcs = d.constraints;
    for (std::uint32_t x = 0; x < sizes.size(); ++x) {
        LcConstraint id{x, x, {}};
        for (std::uint32_t a = 0; a < sizes[x]; ++a)
            id.map.push_back(a);
        arcs.push_back(std::move(id));
    }

    auto product_constraint = [&](const std::vector<const LcConstraint *> & factors) {
        std::vector<std::uint32_t> target, source;
        for (const auto * f : factors) {
            target.push_back(f->target);
            source.push_back(f->source);
        }
        LcConstraint c;
        c.target = static_cast<std::uint32_t>(meta.index(target));
        c.source = static_cast<std::uint32_t>(meta.index(source));
        auto size = meta.domain_size(source);
        c.map.reserve(size);
        std::vector<std::uint32_t> image(k);
        for (std::uint64_t e = 0; e < size; ++e) {
            auto elems = meta.element(source, e);
            for (std::uint32_t i = 0; i < k; ++i)
                image[i] = factors[i]->map[elems[i]];
            c.map.push_back(static_cast<std::uint32_t>(meta.element_index(target, image)));
        }
        inst.constraints.push_back(std::move(c));
        ++out.type1_constraints;
    };

    std::vector<LcConstraint> identities(arcs.end() - static_cast<std::ptrdiff_t>(sizes.size()), arcs.end());
    if (mode == PowerMode::Reduced) {
        std::uint64_t rest = n / std::max<std::uint64_t>(sizes.size(), 1);
        if (sizes.empty())
            rest = 0;
        for (const auto & arc : arcs) {
            for (std::uint64_t r = 0; r < rest; ++r) {
                std::vector<const LcConstraint *> factors{&arc};
                // Digits of r over the remaining k - 1 positions.
                std::vector<std::uint32_t> digits(k - 1);
                auto q = r;
                for (std::uint32_t i = k - 1; i-- > 0;) {
                    digits[i] = static_cast<std::uint32_t>(q % sizes.size());
                    q /= sizes.size();
                }
                for (auto z : digits)
                    factors.push_back(&identities[z]);
                product_constraint(factors);
            }
        }
    }
    else {
        std::vector<std::size_t> pick(k, 0);
        if (! arcs.empty())
            while (true) {
                std::vector<const LcConstraint *> factors;
                for (auto i : pick)
                    factors.push_back(&arcs[i]);
                product_constraint(factors);
                std::size_t i = k;
                bool done = false;
                while (true) {
                    if (i == 0) {
                        done = true;
                        break;
                    }
                    --i;
                    if (++pick[i] < arcs.size())
                        break;
                    pick[i] = 0;
                }
                if (done)
                    break;
            }
    }

    auto sigmas = all_self_maps(k);
    for (std::uint64_t t = 0; t < n; ++t) {
        auto source = meta.tuple(t);
        auto size = meta.domain_size(source);
        for (const auto & sigma : sigmas) {
            std::vector<std::uint32_t> target(k);
            for (std::uint32_t i = 0; i < k; ++i)
                target[i] = source[sigma[i]];
            LcConstraint c;
            c.target = static_cast<std::uint32_t>(meta.index(target));
            c.source = static_cast<std::uint32_t>(t);
            c.map.reserve(size);
            std::vector<std::uint32_t> image(k);
            for (std::uint64_t e = 0; e < size; ++e) {
                auto elems = meta.element(source, e);
                for (std::uint32_t i = 0; i < k; ++i)
                    image[i] = elems[sigma[i]];
                c.map.push_back(static_cast<std::uint32_t>(meta.element_index(target, image)));
            }
            inst.constraints.push_back(std::move(c));
            ++out.type2_constraints;
        }
    }
    return out;
}

auto partial_power(const CspInstance & csp, std::uint32_t k, const Caps & caps) -> LcInstance
{
    if (k == 0)
        throw Error(ErrorKind::LevelZero, "the partial power needs k >= 1");
    auto nvars = static_cast<std::uint32_t>(csp.variables.size());

    std::vector<std::vector<std::uint32_t>> subsets{{}};
    for (std::uint32_t size = 1; size <= std::min(k, nvars); ++size) {
        std::vector<std::uint32_t> s(size);
        for (std::uint32_t i = 0; i < size; ++i)
            s[i] = i;
        while (true) {
            subsets.push_back(s);
            std::int64_t i = size - 1;
            while (i >= 0 && s[i] == nvars - size + i)
                --i;
            if (i < 0)
                break;
            ++s[i];
            for (auto j = static_cast<std::uint32_t>(i) + 1; j < size; ++j)
                s[j] = s[j - 1] + 1;
        }
    }
    if (subsets.size() > caps.power_vars)
        throw Error(ErrorKind::SizeCapExceeded, "partial power needs " + std::to_string(subsets.size()) + " variables");

    std::vector<std::set<std::vector<std::uint32_t>>> relations;
    for (const auto & c : csp.constraints)
        relations.emplace_back(c.relation.begin(), c.relation.end());

    LcInstance out;
    std::vector<std::map<std::vector<std::uint32_t>, std::uint32_t>> lookup;
    std::uint64_t points = 0;
    for (const auto & u : subsets) {
        Variable v;
        v.name = "{";
        for (std::size_t i = 0; i < u.size(); ++i)
            v.name += (i ? "," : "") + csp.variables[u[i]].name;
        v.name += "}";

        // Constraints whose scope lies inside u, with scope positions mapped into u.
        std::vector<std::pair<std::size_t, std::vector<std::size_t>>> inside;
        for (std::size_t c = 0; c < csp.constraints.size(); ++c) {
            std::vector<std::size_t> pos;
            bool ok = true;
            for (auto x : csp.constraints[c].scope) {
                auto it = std::find(u.begin(), u.end(), x);
                if (it == u.end()) {
                    ok = false;
                    break;
                }
                pos.push_back(static_cast<std::size_t>(it - u.begin()));
            }
            if (ok)
                inside.emplace_back(c, std::move(pos));
        }

        std::map<std::vector<std::uint32_t>, std::uint32_t> index;
        std::vector<std::uint32_t> a(u.size(), 0);
        bool empty_product = false;
        for (auto x : u)
            if (csp.variables[x].domain.empty())
                empty_product = true;
        while (! empty_product) {
            bool ok = true;
            for (const auto & [c, pos] : inside) {
                std::vector<std::uint32_t> tuple;
                for (auto p : pos)
                    tuple.push_back(a[p]);
                if (! relations[c].contains(tuple)) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                index.emplace(a, static_cast<std::uint32_t>(v.domain.size()));
                Label label = Label::array();
                for (std::size_t i = 0; i < u.size(); ++i)
                    label.push_back(csp.variables[u[i]].domain[a[i]]);
                v.domain.push_back(std::move(label));
            }
            std::size_t j = u.size();
            bool done = true;
            while (j > 0) {
                --j;
                if (++a[j] < csp.variables[u[j]].domain.size()) {
                    done = false;
                    break;
                }
                a[j] = 0;
            }
            if (done)
                break;
        }
        points += v.domain.size();
        if (points > caps.unknowns)
            throw Error(ErrorKind::SizeCapExceeded, "partial power has more than " + std::to_string(caps.unknowns) + " points");
        out.variables.push_back(std::move(v));
        lookup.push_back(std::move(index));
    }

    for (std::uint32_t t = 0; t < subsets.size(); ++t)
        for (std::uint32_t s = 0; s < subsets.size(); ++s) {
            const auto & small = subsets[t];
            const auto & big = subsets[s];
            if (small.size() >= big.size() || ! std::includes(big.begin(), big.end(), small.begin(), small.end()))
                continue;
            std::vector<std::size_t> pos;
            for (auto x : small)
                pos.push_back(static_cast<std::size_t>(std::find(big.begin(), big.end(), x) - big.begin()));
            LcConstraint c{t, s, {}};
            c.map.resize(lookup[s].size());
            for (const auto & [assignment, idx] : lookup[s]) {
                std::vector<std::uint32_t> restricted;
                for (auto p : pos)
                    restricted.push_back(assignment[p]);
                c.map[idx] = lookup[t].at(restricted);
            }
            out.constraints.push_back(std::move(c));
        }
    return out;
}

auto to_json(const PowerMeta & meta) -> Json
{
    Json out;
    out["k"] = meta.k();
    out["base_variables"] = meta.base_variables();
    out["tuples"] = Json::array();
    for (std::uint64_t t = 0; t < meta.power_variables(); ++t)
        out["tuples"].push_back(meta.tuple(t));
    return out;
}

}
