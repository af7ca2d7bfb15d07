#include <lcr/dihedral.hpp>
#include <lcr/error.hpp>

#include <algorithm>
#include <random>
#include <set>

namespace lcr {

auto D4Element::from_index(std::uint32_t i) -> D4Element
{
    if (i >= 8)
        throw Error(ErrorKind::OutOfRange, "D4 index must be below 8");
    return {static_cast<std::uint8_t>(i % 4), static_cast<std::uint8_t>(i / 4)};
}

auto d4_multiply(D4Element a, D4Element b) -> D4Element
{
    // s r^k = r^-k s, so (r^i s^j)(r^k s^l) = r^(i + (-1)^j k) s^(j + l).
    int k = a.reflection ? 4 - b.rotation : b.rotation;
    return {static_cast<std::uint8_t>((a.rotation + k) % 4), static_cast<std::uint8_t>(a.reflection ^ b.reflection)};
}

auto d4_inverse(D4Element a) -> D4Element
{
    if (a.reflection)
        return a;
    return {static_cast<std::uint8_t>((4 - a.rotation) % 4), 0};
}

auto d4_name(D4Element a) -> std::string_view { return d4_names[a.index()]; }

auto d4_from_name(std::string_view name) -> D4Element
{
    for (std::uint32_t i = 0; i < 8; ++i)
        if (d4_names[i] == name)
            return D4Element::from_index(i);
    throw Error(ErrorKind::OutOfRange, "unknown D4 element " + std::string(name));
}

auto d4_tuple_multiply(const D4Tuple & a, const D4Tuple & b) -> D4Tuple
{
    if (a.size() != b.size())
        throw Error(ErrorKind::LengthMismatch, "D4 tuples of different lengths");
    D4Tuple out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = d4_multiply(D4Element::from_index(a[i]), D4Element::from_index(b[i])).index();
    return out;
}

auto d4_tuple_inverse(const D4Tuple & a) -> D4Tuple
{
    D4Tuple out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = d4_inverse(D4Element::from_index(a[i])).index();
    return out;
}

auto d4_subgroup(std::uint32_t n, const std::vector<D4Tuple> & gens) -> std::vector<D4Tuple>
{
    // Finite, so closure under products alone already gives inverses.
    std::set<D4Tuple> seen{D4Tuple(n, 0)};
    std::vector<D4Tuple> work{D4Tuple(n, 0)};
    while (! work.empty()) {
        auto h = std::move(work.back());
        work.pop_back();
        for (const auto & g : gens) {
            auto hg = d4_tuple_multiply(h, g);
            if (seen.insert(hg).second)
                work.push_back(std::move(hg));
        }
    }
    return {seen.begin(), seen.end()};
}

auto is_d4_coset(const std::vector<D4Tuple> & r) -> bool
{
    if (r.empty())
        return false;
    std::set<D4Tuple> members(r.begin(), r.end());
    const auto & g0 = r.front();
    for (const auto & h : r) {
        auto g0h = d4_tuple_multiply(g0, d4_tuple_inverse(h));
        for (const auto & g : r)
            if (! members.contains(d4_tuple_multiply(g0h, g)))
                return false;
    }
    return true;
}

auto random_coset_relation(std::uint32_t n, std::uint64_t seed) -> std::vector<D4Tuple>
{
    if (n == 0 || n > 4)
        throw Error(ErrorKind::OutOfRange, "coset arity must lie in 1..4");
    std::mt19937_64 rng(seed);
    auto random_tuple = [&] {
        D4Tuple t(n);
        for (auto & e : t)
            e = static_cast<std::uint32_t>(rng() % 8);
        return t;
    };
    std::vector<D4Tuple> gens(1 + rng() % 3);
    for (auto & g : gens)
        g = random_tuple();
    auto rep = random_tuple();
    std::vector<D4Tuple> out;
    for (const auto & h : d4_subgroup(n, gens))
        out.push_back(d4_tuple_multiply(rep, h));
    std::sort(out.begin(), out.end());
    if (! is_d4_coset(out))
        throw std::logic_error("subgroup closure produced a non-coset");
    return out;
}

auto gen_coset_csp(std::uint32_t num_vars, std::uint32_t num_constraints, std::uint32_t max_arity, std::uint64_t seed)
    -> CspInstance
{
    if (num_vars == 0 || max_arity == 0)
        throw Error(ErrorKind::InvalidInput, "coset CSPs need variables and a positive arity");
    std::mt19937_64 rng(seed);
    CspInstance csp;
    for (std::uint32_t x = 0; x < num_vars; ++x) {
        Variable v{"x" + std::to_string(x), {}};
        for (auto name : d4_names)
            v.domain.emplace_back(std::string(name));
        csp.variables.push_back(std::move(v));
    }
    auto cap = std::min({max_arity, num_vars, 4u});
    for (std::uint32_t c = 0; c < num_constraints; ++c) {
        auto arity = 1 + static_cast<std::uint32_t>(rng() % cap);
        std::vector<std::uint32_t> pool(num_vars);
        for (std::uint32_t i = 0; i < num_vars; ++i)
            pool[i] = i;
        for (std::uint32_t i = 0; i < arity; ++i)
            std::swap(pool[i], pool[i + rng() % (num_vars - i)]);
        CspConstraint con;
        con.scope.assign(pool.begin(), pool.begin() + arity);
        std::sort(con.scope.begin(), con.scope.end());
        con.relation = random_coset_relation(arity, rng());
        csp.constraints.push_back(std::move(con));
    }
    csp.normalize();
    return csp;
}

auto bilinear_q(std::span<const Residue> v, std::span<const Residue> w) -> Residue
{
    if (v.size() != w.size())
        throw Error(ErrorKind::LengthMismatch, "bilinear form arguments differ in length");
    Residue prefix = 0, sum = 0;
    for (std::size_t j = 0; j < v.size(); ++j) {
        sum ^= prefix & w[j] & 1;
        prefix ^= v[j] & 1;
    }
    return sum;
}

auto bilinear_q_lower(std::span<const Residue> v, std::span<const Residue> w) -> Residue { return bilinear_q(w, v); }

auto verify_m_object(const MObject & o) -> bool
{
    auto n = o.f.size();
    if (o.g.size() != n)
        return false;
    Residue fs = 0, gs = 0;
    for (std::size_t a = 0; a < n; ++a) {
        if (o.f[a] > 1 || o.g[a].size() != n)
            return false;
        fs ^= o.f[a];
        for (std::size_t b = 0; b < n; ++b) {
            if (o.g[a][b] > 1)
                return false;
            gs ^= o.g[a][b];
            if (a != b && (o.g[a][b] ^ o.g[b][a]) != (o.f[a] & o.f[b]))
                return false;
        }
    }
    return fs == 1 && gs == 0;
}

auto m_minor(const MObject & o, const std::vector<std::uint32_t> & alpha, std::uint32_t codomain) -> MObject
{
    if (alpha.size() != o.f.size())
        throw Error(ErrorKind::LengthMismatch, "map table does not match the domain");
    MObject out{std::vector<Residue>(codomain, 0), std::vector<std::vector<Residue>>(codomain, std::vector<Residue>(codomain, 0))};
    for (std::size_t a = 0; a < alpha.size(); ++a) {
        if (alpha[a] >= codomain)
            throw Error(ErrorKind::OutOfRange, "map value outside the codomain");
        out.f[alpha[a]] ^= o.f[a];
        for (std::size_t b = 0; b < alpha.size(); ++b)
            out.g[alpha[a]][alpha[b]] ^= o.g[a][b];
    }
    return out;
}

auto m_certificate(const LcInstance & d, const VectorSolution & s, BilinearForm form) -> MCertificate
{
    if (s.p != 2 || s.k != 2)
        throw Error(ErrorKind::WrongParameters, "certificates need a level-2 Z_2 vector solution");
    if (s.vectors.size() != d.variables.size())
        throw Error(ErrorKind::ShapeMismatch, "vector solution does not match the instance");
    auto q = form == BilinearForm::Upper ? bilinear_q : bilinear_q_lower;
    MCertificate c;
    for (const auto & vs : s.vectors) {
        auto n = vs.size();
        MObject o{std::vector<Residue>(n), std::vector<std::vector<Residue>>(n, std::vector<Residue>(n))};
        for (std::size_t a = 0; a < n; ++a) {
            o.f[a] = weight(vs[a], 2);
            ResidueVec shifted = vs[a];
            for (auto & e : shifted)
                e ^= 1;
            o.g[a][a] = q(vs[a], shifted);
            for (std::size_t b = 0; b < n; ++b)
                if (b != a)
                    o.g[a][b] = q(vs[a], vs[b]);
        }
        c.objects.push_back(std::move(o));
    }
    return c;
}

auto m_certificate_from_level(const LcInstance & d, const TensorSolution & t, BilinearForm form) -> MCertificate
{
    if (t.p != 2 || t.k != 2)
        throw Error(ErrorKind::WrongParameters, "certificates need a level-2 Z_2 tensor");
    MCertificate out;
    out.objects.resize(d.variables.size());
    for (const auto & comp : connected_components(d)) {
        auto sub = induced_subinstance(d, comp);
        auto c = m_certificate(sub, extract_vectors(sub, restrict_tensor(t, comp)), form);
        for (std::size_t i = 0; i < comp.size(); ++i)
            out.objects[comp[i]] = std::move(c.objects[i]);
    }
    return out;
}

auto verify_m_certificate(const LcInstance & d, const MCertificate & c) -> bool
{
    if (c.objects.size() != d.variables.size())
        throw Error(ErrorKind::ShapeMismatch, "certificate does not have one object per variable");
    for (std::uint32_t x = 0; x < d.variables.size(); ++x) {
        const auto & o = c.objects[x];
        auto n = d.domain_size(x);
        if (o.f.size() != n || o.g.size() != n)
            throw Error(ErrorKind::ShapeMismatch, "object shape does not match the domain of " + d.variables[x].name);
        for (const auto & row : o.g)
            if (row.size() != n)
                throw Error(ErrorKind::ShapeMismatch, "object shape does not match the domain of " + d.variables[x].name);
        if (! verify_m_object(o))
            return false;
    }
    for (const auto & con : d.constraints) {
        auto image = m_minor(c.objects[con.source], con.map, d.domain_size(con.target));
        if (image.f != c.objects[con.target].f || image.g != c.objects[con.target].g)
            return false;
    }
    return true;
}

auto to_json(const MCertificate & c, const LcInstance & d) -> Json
{
    Json objects = Json::object();
    for (std::size_t x = 0; x < c.objects.size(); ++x)
        objects[d.variables[x].name] = Json{{"f", c.objects[x].f}, {"g", c.objects[x].g}};
    return Json{{"objects", objects}};
}

}
