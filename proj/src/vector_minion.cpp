#include <lcr/error.hpp>
#include <lcr/vector_minion.hpp>

#include <algorithm>
#include <functional>
#include <unordered_map>

namespace lcr {

namespace {

    auto all_ones(std::uint32_t n) -> ResidueVec { return ResidueVec(n, 1); }

    // Every non-decreasing index tuple of length len over [0, n).
    template <typename F>
    auto for_each_multiset(std::uint32_t n, std::uint32_t len, F && f) -> void
    {
        if (len > 0 && n == 0)
            return;
        std::vector<std::uint32_t> t(len, 0);
        while (true) {
            f(t);
            std::size_t i = len;
            while (i > 0 && t[i - 1] == n - 1)
                --i;
            if (i == 0)
                return;
            ++t[i - 1];
            for (auto j = i; j < len; ++j)
                t[j] = t[i - 1];
        }
    }

    // Two distinct points of one variable.
    auto has_clash(const PointIndex & pi, const std::vector<std::uint32_t> & sorted) -> bool
    {
        for (std::size_t i = 1; i < sorted.size(); ++i)
            if (sorted[i] != sorted[i - 1] && pi.var_of(sorted[i]) == pi.var_of(sorted[i - 1]))
                return true;
        return false;
    }

    auto add_scaled(ResidueVec & acc, const ResidueVec & v, std::uint64_t c, std::uint32_t p) -> void
    {
        if (c == 0)
            return;
        for (std::size_t i = 0; i < acc.size(); ++i)
            acc[i] = static_cast<Residue>((acc[i] + c * v[i]) % p);
    }

    auto subset_key(const std::vector<std::uint32_t> & s, std::uint64_t base) -> std::uint64_t
    {
        std::uint64_t key = 0;
        for (auto x : s)
            key = key * base + x + 1;
        return key;
    }

}

auto weight(std::span<const Residue> v, std::uint32_t p) -> Residue
{
    std::uint64_t s = 0;
    for (auto x : v)
        s += x;
    return static_cast<Residue>(s % p);
}

auto hadamard(std::span<const Residue> a, std::span<const Residue> b, std::uint32_t p) -> ResidueVec
{
    if (a.size() != b.size())
        throw Error(ErrorKind::LengthMismatch, "componentwise product of vectors of different lengths");
    ResidueVec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = static_cast<Residue>(std::uint64_t{a[i]} * b[i] % p);
    return out;
}

auto span_basis(const std::vector<ResidueVec> & vectors, std::size_t length, std::uint32_t p) -> std::vector<ResidueVec>
{
    if (vectors.empty())
        return {};
    ModMatrix m(p, vectors.size(), length);
    for (std::size_t r = 0; r < vectors.size(); ++r)
        for (std::size_t c = 0; c < length; ++c)
            m.set(r, c, vectors[r][c] % p);
    auto rr = rref_mod_p(m);
    std::vector<ResidueVec> out;
    for (std::size_t r = 0; r < rr.rank; ++r) {
        auto row = rr.rref.row(r);
        out.emplace_back(row.begin(), row.end());
    }
    return out;
}

auto in_span(const std::vector<ResidueVec> & basis, const ResidueVec & v, std::uint32_t p) -> bool
{
    auto rest = v;
    for (const auto & b : basis) {
        std::size_t piv = 0;
        while (piv < b.size() && b[piv] == 0)
            ++piv;
        if (piv == b.size() || rest[piv] == 0)
            continue;
        // Echelon rows have pivot 1.
        add_scaled(rest, b, p - rest[piv], p);
    }
    return std::all_of(rest.begin(), rest.end(), [](Residue x) { return x == 0; });
}

auto verify_vector_object(const VectorObject & o) -> VerifyReport
{
    auto fail = [](std::string why) { return VerifyReport{false, std::move(why)}; };
    auto p = o.p;
    if (! is_prime(p))
        return fail("modulus is not prime");
    if (o.n % p != 1 % p)
        return fail("(i): w(i) != 1 since N is not 1 mod p");
    for (const auto & u : o.space_basis)
        if (u.size() != o.n || std::any_of(u.begin(), u.end(), [&](Residue x) { return x >= p; }))
            return fail("space basis vector has the wrong shape");
    for (const auto & v : o.v)
        if (v.size() != o.n || std::any_of(v.begin(), v.end(), [&](Residue x) { return x >= p; }))
            return fail("vector has the wrong shape");

    ResidueVec sum(o.n, 0);
    for (const auto & v : o.v)
        add_scaled(sum, v, 1, p);
    if (sum != all_ones(o.n))
        return fail("(s): the vectors do not sum to i");

    if (! in_span(o.space_basis, all_ones(o.n), p))
        return fail("i is not in V");
    for (std::size_t a = 0; a < o.v.size(); ++a)
        if (! in_span(o.space_basis, o.v[a], p))
            return fail("v(" + std::to_string(a) + ") is not in V");

    if (o.k < 2)
        return {};
    VerifyReport report;
    auto nb = static_cast<std::uint32_t>(o.space_basis.size());
    for_each_multiset(nb, o.k - 2, [&](const std::vector<std::uint32_t> & us) {
        if (! report.ok)
            return;
        auto prod = all_ones(o.n);
        for (auto u : us)
            prod = hadamard(prod, o.space_basis[u], p);
        for (std::size_t a = 0; a < o.v.size(); ++a) {
            auto va = hadamard(o.v[a], prod, p);
            if (weight(hadamard(o.v[a], va, p), p) != weight(va, p)) {
                report = fail("(p) fails at element " + std::to_string(a));
                return;
            }
            for (std::size_t b = a + 1; b < o.v.size(); ++b)
                if (weight(hadamard(o.v[b], va, p), p) != 0) {
                    report = fail("(o) fails at elements " + std::to_string(a) + ", " + std::to_string(b));
                    return;
                }
        }
    });
    return report;
}

auto minor_vector_object(const VectorObject & o, const std::vector<std::uint32_t> & alpha, std::uint32_t codomain)
    -> VectorObject
{
    if (alpha.size() != o.v.size())
        throw Error(ErrorKind::LengthMismatch, "map table does not match the domain");
    VectorObject out = o;
    out.v.assign(codomain, ResidueVec(o.n, 0));
    for (std::size_t a = 0; a < alpha.size(); ++a) {
        if (alpha[a] >= codomain)
            throw Error(ErrorKind::OutOfRange, "map value outside the codomain");
        add_scaled(out.v[alpha[a]], o.v[a], 1, o.p);
    }
    return out;
}

auto gram_realize(std::uint32_t labels, const std::map<std::vector<std::uint32_t>, Residue> & targets, std::uint32_t p,
    std::uint32_t k) -> GramRealization
{
    for (const auto & [s, v] : targets) {
        (void) v;
        if (s.empty() || s.size() > k || ! std::is_sorted(s.begin(), s.end())
            || std::adjacent_find(s.begin(), s.end()) != s.end() || s.back() >= labels)
            throw Error(ErrorKind::InvalidInput, "gram target keys must be sorted label sets of size 1..k");
    }
    std::uint64_t base = std::uint64_t{labels} + 1;
    // Current weight of every subset covered so far.
    std::unordered_map<std::uint64_t, std::uint64_t> current;
    std::vector<std::pair<std::vector<std::uint32_t>, Residue>> blocks;

    auto process = [&](const std::vector<std::uint32_t> & s) {
        auto it = targets.find(s);
        std::uint64_t target = it == targets.end() ? 0 : it->second % p;
        auto cit = current.find(subset_key(s, base));
        std::uint64_t have = cit == current.end() ? 0 : cit->second % p;
        auto deficit = static_cast<Residue>((target + p - have) % p);
        if (deficit == 0)
            return;
        blocks.emplace_back(s, deficit);
        // The new coordinates lie in the product over every nonempty subset of s.
        auto size = static_cast<std::uint32_t>(s.size());
        for (std::uint32_t mask = 1; mask < (1u << size); ++mask) {
            std::vector<std::uint32_t> sub;
            for (std::uint32_t i = 0; i < size; ++i)
                if (mask & (1u << i))
                    sub.push_back(s[i]);
            current[subset_key(sub, base)] += deficit;
        }
    };

    for (auto size = std::min(k, labels); size >= 1; --size) {
        std::vector<std::uint32_t> s(size);
        for (std::uint32_t i = 0; i < size; ++i)
            s[i] = i;
        while (true) {
            process(s);
            std::int64_t i = size - 1;
            while (i >= 0 && s[i] == labels - size + i)
                --i;
            if (i < 0)
                break;
            ++s[i];
            for (auto j = static_cast<std::uint32_t>(i) + 1; j < size; ++j)
                s[j] = s[j - 1] + 1;
        }
    }

    GramRealization out;
    for (const auto & b : blocks)
        out.n += b.second;
    out.r.assign(labels, ResidueVec(out.n, 0));
    std::uint32_t col = 0;
    for (const auto & [s, deficit] : blocks)
        for (Residue c = 0; c < deficit; ++c, ++col)
            for (auto l : s)
                out.r[l][col] = 1;
    return out;
}

auto VectorSolution::object(std::uint32_t var) const -> VectorObject
{
    return VectorObject{p, k, n, space_basis, vectors.at(var)};
}

auto check_vector_solution(const LcInstance & d, const VectorSolution & s, std::string * violation) -> bool
{
    if (s.vectors.size() != d.variables.size())
        throw Error(ErrorKind::ShapeMismatch, "vector solution has the wrong number of variables");
    for (std::uint32_t x = 0; x < d.variables.size(); ++x) {
        if (s.vectors[x].size() != d.domain_size(x))
            throw Error(ErrorKind::ShapeMismatch, "vector tuple does not match the domain of " + d.variables[x].name);
        for (const auto & v : s.vectors[x])
            if (v.size() != s.n)
                throw Error(ErrorKind::ShapeMismatch, "vector has the wrong length");
    }
    auto report = [&](std::string why) {
        if (violation)
            *violation = std::move(why);
        return false;
    };
    for (std::uint32_t x = 0; x < d.variables.size(); ++x) {
        auto r = verify_vector_object(s.object(x));
        if (! r.ok)
            return report(d.variables[x].name + ": " + r.violation);
    }
    for (std::size_t c = 0; c < d.constraints.size(); ++c) {
        const auto & con = d.constraints[c];
        auto pushed = minor_vector_object(s.object(con.source), con.map, d.domain_size(con.target));
        if (pushed.v != s.vectors[con.target])
            return report("constraint " + std::to_string(c) + " is not a pushforward");
    }
    return true;
}

auto extract_vectors(const LcInstance & d, const TensorSolution & t, ExtractionInfo * info) -> VectorSolution
{
    if (! is_connected(d))
        throw Error(ErrorKind::NotConnected, "vector extraction needs a connected instance");
    if (! check_tensor_solution(d, t))
        throw Error(ErrorKind::InvalidTensor, "tensor does not solve the saturated power");
    auto p = t.p;
    auto k = t.k;
    VectorSolution out;
    out.p = p;
    out.k = k;
    if (d.variables.empty()) {
        out.space_basis = {all_ones(1)};
        return out;
    }
    PointIndex pi(d);

    // Flattening: rows are points, columns are clash-free sorted (k-1)-tuples.
    std::vector<std::vector<std::uint32_t>> columns;
    for_each_multiset(pi.size(), k - 1, [&](const std::vector<std::uint32_t> & c) {
        if (! has_clash(pi, c))
            columns.push_back(c);
    });
    ModMatrix flat(p, pi.size(), columns.size());
    for (std::uint32_t q = 0; q < pi.size(); ++q)
        for (std::size_t c = 0; c < columns.size(); ++c) {
            auto key = columns[c];
            key.push_back(q);
            flat.set(q, c, t.value(std::move(key)));
        }
    auto radical = left_nullspace_mod_p(flat, p);

    std::uint32_t x0 = 0;
    for (std::uint32_t x = 1; x < pi.variables(); ++x)
        if (pi.domain_size(x) < pi.domain_size(x0))
            x0 = x;

    // Basis of the row space: the anchor m first, then independent point rows in order.
    // Each echelon entry keeps its coordinates with respect to that basis.
    struct Echelon {
        ResidueVec row;
        std::size_t pivot;
        ResidueVec coords;
    };
    std::vector<Echelon> echelon;
    std::vector<std::int64_t> basis_point{-1};
    auto dim_cap = pi.size() + 1;

    auto reduce = [&](ResidueVec row, ResidueVec & coords) {
        coords.assign(dim_cap, 0);
        for (const auto & e : echelon) {
            auto c = row[e.pivot];
            if (c == 0)
                continue;
            add_scaled(row, e.row, p - c, p);
            add_scaled(coords, e.coords, c, p);
        }
        return row;
    };
    auto insert = [&](const ResidueVec & residual, const ResidueVec & coords, std::size_t index) {
        std::size_t piv = 0;
        while (residual[piv] == 0)
            ++piv;
        auto inv = inverse_mod(residual[piv], p);
        Echelon e{residual, piv, ResidueVec(dim_cap, 0)};
        for (auto & x : e.row)
            x = static_cast<Residue>(x * inv % p);
        // residual = M_index - sum coords M_j.
        e.coords[index] = 1;
        add_scaled(e.coords, coords, p - 1, p);
        for (auto & x : e.coords)
            x = static_cast<Residue>(x * inv % p);
        echelon.push_back(std::move(e));
    };

    ResidueVec m_row(columns.size(), 0);
    for (std::uint32_t a = 0; a < pi.domain_size(x0); ++a) {
        auto r = flat.row(pi.id(x0, a));
        add_scaled(m_row, ResidueVec(r.begin(), r.end()), 1, p);
    }
    {
        ResidueVec coords;
        auto residual = reduce(m_row, coords);
        if (std::all_of(residual.begin(), residual.end(), [](Residue x) { return x == 0; }))
            throw Error(ErrorKind::SymmetryAssertionFailed, "the anchor class vanishes");
        insert(residual, coords, 0);
    }
    std::vector<ResidueVec> point_coords(pi.size());
    for (std::uint32_t q = 0; q < pi.size(); ++q) {
        auto r = flat.row(q);
        ResidueVec coords;
        auto residual = reduce(ResidueVec(r.begin(), r.end()), coords);
        if (std::any_of(residual.begin(), residual.end(), [](Residue x) { return x != 0; })) {
            auto index = basis_point.size();
            basis_point.push_back(q);
            insert(residual, coords, index);
            coords.assign(dim_cap, 0);
            coords[index] = 1;
        }
        point_coords[q] = std::move(coords);
    }
    auto dim = static_cast<std::uint32_t>(basis_point.size());
    if (dim + radical.size() != pi.size())
        throw Error(ErrorKind::SymmetryAssertionFailed, "row rank and radical dimension disagree");

    // The form on basis multisets, expanded over point representatives.
    auto form = [&](const std::vector<std::uint32_t> & basis_tuple) -> Residue {
        std::uint64_t total = 0;
        std::vector<std::uint32_t> points;
        std::function<void(std::size_t)> rec = [&](std::size_t i) {
            if (i == basis_tuple.size()) {
                total += t.value(points);
                return;
            }
            auto b = basis_tuple[i];
            if (b == 0) {
                for (std::uint32_t a = 0; a < pi.domain_size(x0); ++a) {
                    points.push_back(pi.id(x0, a));
                    rec(i + 1);
                    points.pop_back();
                }
            }
            else {
                points.push_back(static_cast<std::uint32_t>(basis_point[b]));
                rec(i + 1);
                points.pop_back();
            }
        };
        rec(0);
        return static_cast<Residue>(total % p);
    };

    // Targets on label sets (label j is basis element j + 1), padded by the least element.
    auto labels = dim - 1;
    std::map<std::vector<std::uint32_t>, Residue> targets;
    for_each_multiset(dim, k, [&](const std::vector<std::uint32_t> & tuple) {
        std::vector<std::uint32_t> support;
        for (auto b : tuple)
            if (b != 0 && (support.empty() || support.back() != b - 1))
                support.push_back(b - 1);
        bool canonical = ! support.empty() && tuple[0] == support[0] + 1;
        if (canonical) {
            // Least label repeated, no anchor: this is the padded representative.
            std::size_t copies = k - support.size() + 1;
            for (std::size_t i = 0; i < copies; ++i)
                canonical = canonical && tuple[i] == support[0] + 1;
        }
        if (canonical)
            targets[support] = form(tuple);
    });
    for_each_multiset(dim, k, [&](const std::vector<std::uint32_t> & tuple) {
        std::vector<std::uint32_t> support;
        for (auto b : tuple)
            if (b != 0 && (support.empty() || support.back() != b - 1))
                support.push_back(b - 1);
        Residue expected = 1 % p;
        if (! support.empty()) {
            auto it = targets.find(support);
            expected = it == targets.end() ? 0 : it->second;
        }
        if (form(tuple) != expected)
            throw Error(ErrorKind::SymmetryAssertionFailed, "form on the basis depends on more than the support");
    });

    auto gram = gram_realize(labels, targets, p, k);
    auto pad = static_cast<std::uint32_t>((1 + p - gram.n % p) % p);
    out.n = gram.n + pad;
    std::vector<ResidueVec> r_full{all_ones(out.n)};
    for (auto & r : gram.r) {
        r.resize(out.n, 0);
        r_full.push_back(std::move(r));
    }

    out.vectors.resize(pi.variables());
    for (std::uint32_t x = 0; x < pi.variables(); ++x)
        for (std::uint32_t a = 0; a < pi.domain_size(x); ++a) {
            ResidueVec v(out.n, 0);
            const auto & coords = point_coords[pi.id(x, a)];
            for (std::uint32_t j = 0; j < dim; ++j)
                add_scaled(v, r_full[j], coords[j], p);
            out.vectors[x].push_back(std::move(v));
        }
    out.space_basis = span_basis(r_full, out.n, p);

    if (info) {
        info->radical_dimension = radical.size();
        info->basis_size = dim;
        info->anchor_variable = x0;
        info->realized_length = out.n;
    }
    return out;
}

auto tensor_from_vectors(const LcInstance & d, const VectorSolution & s) -> TensorSolution
{
    std::string why;
    if (! check_vector_solution(d, s, &why))
        throw Error(ErrorKind::InvalidVectorSolution, why);
    PointIndex pi(d);
    std::vector<const ResidueVec *> by_point;
    for (const auto & tuple : s.vectors)
        for (const auto & v : tuple)
            by_point.push_back(&v);

    TensorSolution t;
    t.p = s.p;
    t.k = s.k;
    t.domain_sizes = domain_sizes(d);
    std::vector<std::uint32_t> key;
    // Prefix products along non-decreasing, clash-free point tuples.
    std::function<void(std::uint32_t, const ResidueVec &)> rec = [&](std::uint32_t from, const ResidueVec & prefix) {
        if (key.size() == s.k) {
            auto w = weight(prefix, s.p);
            if (w != 0)
                t.entries.emplace(key, w);
            return;
        }
        for (auto q = from; q < pi.size(); ++q) {
            if (! key.empty() && key.back() != q && pi.var_of(key.back()) == pi.var_of(q))
                continue;
            key.push_back(q);
            rec(q, hadamard(prefix, *by_point[q], s.p));
            key.pop_back();
        }
    };
    rec(0, all_ones(s.n));
    return t;
}

auto to_json(const VectorSolution & s, const LcInstance & d) -> Json
{
    Json out;
    out["p"] = s.p;
    out["k"] = s.k;
    out["N"] = s.n;
    out["space_basis"] = s.space_basis;
    Json vectors = Json::object();
    for (std::uint32_t x = 0; x < d.variables.size() && x < s.vectors.size(); ++x)
        vectors[d.variables[x].name] = s.vectors[x];
    out["vectors"] = std::move(vectors);
    return out;
}

auto vector_solution_from_json(const Json & j, const LcInstance & d) -> VectorSolution
{
    try {
        VectorSolution s;
        s.p = j.at("p").get<std::uint32_t>();
        s.k = j.at("k").get<std::uint32_t>();
        s.n = j.at("N").get<std::uint32_t>();
        s.space_basis = j.at("space_basis").get<std::vector<ResidueVec>>();
        const auto & vectors = j.at("vectors");
        for (const auto & v : d.variables)
            s.vectors.push_back(vectors.at(v.name).get<std::vector<ResidueVec>>());
        return s;
    }
    catch (const Json::exception & e) {
        throw Error(ErrorKind::InvalidInput, std::string("malformed vector solution: ") + e.what());
    }
}

}
