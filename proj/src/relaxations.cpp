#include <lcr/error.hpp>
#include <lcr/powers.hpp>
#include <lcr/relaxations.hpp>

#include <algorithm>
#include <functional>
#include <limits>
#include <unordered_map>

namespace lcr {

namespace {

    auto preimages(const LcInstance & d, const LcConstraint & c) -> std::vector<std::vector<std::uint32_t>>
    {
        std::vector<std::vector<std::uint32_t>> pre(d.domain_size(c.target));
        for (std::uint32_t b = 0; b < c.map.size(); ++b)
            pre[c.map[b]].push_back(b);
        return pre;
    }

    auto is_identity(const LcConstraint & c) -> bool
    {
        if (c.target != c.source)
            return false;
        for (std::uint32_t b = 0; b < c.map.size(); ++b)
            if (c.map[b] != b)
                return false;
        return true;
    }

    auto require_prime(std::uint32_t p) -> void
    {
        if (! is_prime(p))
            throw Error(ErrorKind::NonPrimeModulus, std::to_string(p) + " is not prime");
    }

    // Packs a non-decreasing tuple of point ids into one integer; base is (points + 1).
    class TupleCodec {
    public:
        TupleCodec(std::uint64_t points, std::uint32_t max_len) : _base(points + 1)
        {
            unsigned __int128 limit = 1;
            for (std::uint32_t i = 0; i < max_len; ++i)
                limit *= _base;
            if (limit > std::numeric_limits<std::uint64_t>::max())
                throw Error(ErrorKind::SizeCapExceeded, "too many points for this level");
        }

        auto encode(const std::vector<std::uint32_t> & sorted) const -> std::uint64_t
        {
            std::uint64_t key = 0;
            for (auto q : sorted)
                key = key * _base + q + 1;
            return key;
        }

    private:
        std::uint64_t _base;
    };

    // Every non-decreasing tuple of length len over [0, n), lexicographically.
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

    // Mixed-radix enumeration of element tuples over the given sizes.
    template <typename F>
    auto for_each_product(const std::vector<std::uint32_t> & sizes, F && f) -> void
    {
        for (auto s : sizes)
            if (s == 0)
                return;
        std::vector<std::uint32_t> a(sizes.size(), 0);
        while (true) {
            f(a);
            std::size_t i = sizes.size();
            while (i > 0) {
                --i;
                if (++a[i] < sizes[i])
                    break;
                a[i] = 0;
                if (i == 0)
                    return;
            }
            if (sizes.empty())
                return;
        }
    }

    auto product_index(const std::vector<std::uint32_t> & sizes, const std::vector<std::uint32_t> & a) -> std::size_t
    {
        std::size_t idx = 0;
        for (std::size_t i = 0; i < sizes.size(); ++i)
            idx = idx * sizes[i] + a[i];
        return idx;
    }

    // Multisets of size k whose support is exactly the sorted set s.
    template <typename F>
    auto for_each_expansion(const std::vector<std::uint32_t> & s, std::uint32_t k, F && f) -> void
    {
        std::vector<std::uint32_t> out;
        std::function<void(std::size_t, std::uint32_t)> rec = [&](std::size_t i, std::uint32_t left) {
            if (i + 1 == s.size()) {
                out.insert(out.end(), left, s[i]);
                f(out);
                out.resize(out.size() - left);
                return;
            }
            // Leave at least one copy for every later element.
            auto later = static_cast<std::uint32_t>(s.size() - i - 1);
            for (std::uint32_t m = 1; m + later <= left; ++m) {
                out.insert(out.end(), m, s[i]);
                rec(i + 1, left - m);
                out.resize(out.size() - m);
            }
        };
        if (! s.empty())
            rec(0, k);
    }

    // Set values of one connected instance at level k, or nothing when infeasible.
    auto solve_canonical(const LcInstance & d, std::uint32_t p, std::uint32_t k, const Caps & caps,
        LevelStats * stats) -> std::optional<std::vector<std::pair<std::vector<std::uint32_t>, Residue>>>
    {
        PointIndex pi(d);
        auto nvars = static_cast<std::uint32_t>(d.variables.size());
        TupleCodec codec(pi.size(), k);

        // Unknowns: point sets with strictly increasing variables, by size then lexicographically.
        std::vector<std::vector<std::uint32_t>> sets;
        std::unordered_map<std::uint64_t, std::uint32_t> index;
        std::vector<std::size_t> size_end;
        std::vector<std::uint32_t> cur;
        std::function<void(std::uint32_t, std::uint32_t)> grow = [&](std::uint32_t first_var, std::uint32_t left) {
            if (left == 0) {
                if (sets.size() >= caps.unknowns)
                    throw Error(ErrorKind::SizeCapExceeded,
                        "level system needs more than " + std::to_string(caps.unknowns) + " unknowns");
                index.emplace(codec.encode(cur), static_cast<std::uint32_t>(sets.size()));
                sets.push_back(cur);
                return;
            }
            for (auto x = first_var; x + left <= nvars; ++x)
                for (std::uint32_t a = 0; a < pi.domain_size(x); ++a) {
                    cur.push_back(pi.id(x, a));
                    grow(x + 1, left - 1);
                    cur.pop_back();
                }
        };
        for (std::uint32_t s = 1; s <= k; ++s) {
            grow(0, s);
            size_end.push_back(sets.size());
        }

        // Id of the set R + {q}, or -1 when q clashes with a point of R.
        std::vector<std::uint32_t> scratch;
        auto with_point = [&](const std::vector<std::uint32_t> & r, std::uint32_t q) -> std::int64_t {
            scratch.clear();
            bool placed = false;
            for (auto s : r) {
                if (pi.var_of(s) == pi.var_of(q)) {
                    if (s != q)
                        return -1;
                    placed = true;
                }
                if (! placed && s > q) {
                    scratch.push_back(q);
                    placed = true;
                }
                scratch.push_back(s);
            }
            if (! placed)
                scratch.push_back(q);
            return index.at(codec.encode(scratch));
        };

        SparseSystem sys(p, sets.size());
        std::vector<std::pair<std::uint32_t, Residue>> terms;
        auto emit = [&](Residue rhs) {
            if (terms.empty() && rhs == 0)
                return;
            sys.add_row(terms, rhs);
            if (sys.nonzeros() > caps.nonzeros)
                throw Error(ErrorKind::SizeCapExceeded,
                    "level system has more than " + std::to_string(caps.nonzeros) + " nonzeros");
            terms.clear();
        };

        for (std::uint32_t z = 0; z < nvars; ++z) {
            for (std::uint32_t c = 0; c < pi.domain_size(z); ++c)
                terms.emplace_back(static_cast<std::uint32_t>(index.at(codec.encode({pi.id(z, c)}))), 1);
            emit(1 % p);
        }

        // Marginals: F(S) = sum_c F(S + zc) for every variable z not used by S.
        std::size_t below_k = k >= 2 ? size_end[k - 2] : 0;
        for (std::size_t s = 0; s < below_k; ++s) {
            const auto & set = sets[s];
            for (std::uint32_t z = 0; z < nvars; ++z) {
                bool used = false;
                for (auto q : set)
                    used = used || pi.var_of(q) == z;
                if (used)
                    continue;
                terms.emplace_back(static_cast<std::uint32_t>(s), 1);
                for (std::uint32_t c = 0; c < pi.domain_size(z); ++c)
                    terms.emplace_back(static_cast<std::uint32_t>(with_point(set, pi.id(z, c))), p - 1);
                emit(0);
            }
        }

        // Products alpha x id x ... x id, one equation per target element and co-set R.
        for (const auto & con : d.constraints) {
            if (is_identity(con))
                continue;
            auto pre = preimages(d, con);
            auto one = [&](const std::vector<std::uint32_t> & r) {
                for (std::uint32_t a = 0; a < pre.size(); ++a) {
                    auto lhs = with_point(r, pi.id(con.target, a));
                    if (lhs >= 0)
                        terms.emplace_back(static_cast<std::uint32_t>(lhs), 1);
                    for (auto b : pre[a]) {
                        auto rhs = with_point(r, pi.id(con.source, b));
                        if (rhs >= 0)
                            terms.emplace_back(static_cast<std::uint32_t>(rhs), p - 1);
                    }
                    emit(0);
                }
            };
            if (k == 1)
                one({});
            else
                for (std::size_t s = 0; s < below_k; ++s)
                    one(sets[s]);
        }

        SparseSolveStats solver_stats;
        auto result = solve_sparse_mod_p(sys, &solver_stats);
        if (stats) {
            stats->unknowns += sets.size();
            stats->equations += sys.rows().size();
            stats->solver.eliminated_pivots += solver_stats.eliminated_pivots;
            stats->solver.core_rows = std::max(stats->solver.core_rows, solver_stats.core_rows);
            stats->solver.core_cols = std::max(stats->solver.core_cols, solver_stats.core_cols);
        }
        if (! result.feasible())
            return std::nullopt;
        std::vector<std::pair<std::vector<std::uint32_t>, Residue>> out;
        for (std::size_t s = 0; s < sets.size(); ++s)
            if (result.particular[s] != 0)
                out.emplace_back(sets[s], result.particular[s]);
        return out;
    }

    auto solve_direct(const LcInstance & d, std::uint32_t p, std::uint32_t k, const Caps & caps, LevelStats * stats)
        -> std::optional<TensorSolution>
    {
        auto pw = saturated_power(d, k, PowerMode::Reduced, caps);
        auto sol = solve_zp(pw.instance, p, caps);
        if (stats) {
            PointIndex ppi(pw.instance);
            stats->unknowns += ppi.size();
            stats->equations += pw.instance.variables.size() + pw.instance.constraints.size();
            stats->components = 1;
        }
        if (! sol)
            return std::nullopt;

        PointIndex pi(d);
        std::map<std::vector<std::uint32_t>, Residue> seen;
        for (std::uint64_t t = 0; t < pw.meta.power_variables(); ++t) {
            auto tuple = pw.meta.tuple(t);
            for (std::uint64_t e = 0; e < pw.meta.domain_size(tuple); ++e) {
                auto elems = pw.meta.element(tuple, e);
                std::vector<std::uint32_t> points(k);
                for (std::uint32_t i = 0; i < k; ++i)
                    points[i] = pi.id(tuple[i], elems[i]);
                std::sort(points.begin(), points.end());
                auto v = sol->values[t][e];
                auto [it, fresh] = seen.emplace(std::move(points), v);
                if (! fresh && it->second != v)
                    throw Error(ErrorKind::InvalidTensor, "power solution is not symmetric");
            }
        }
        TensorSolution out;
        out.p = p;
        out.k = k;
        out.domain_sizes = domain_sizes(d);
        for (auto & [key, v] : seen)
            if (v != 0)
                out.entries.emplace(key, v);
        return out;
    }

}

auto arc_consistency(const LcInstance & d) -> AcResult
{
    d.validate();
    std::vector<std::vector<char>> alive;
    for (const auto & v : d.variables)
        alive.emplace_back(v.domain.size(), 1);

    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto & c : d.constraints) {
            std::vector<char> image(d.domain_size(c.target), 0);
            for (std::uint32_t b = 0; b < c.map.size(); ++b)
                if (alive[c.source][b])
                    image[c.map[b]] = 1;
            for (std::uint32_t a = 0; a < image.size(); ++a)
                if (alive[c.target][a] && ! image[a]) {
                    alive[c.target][a] = 0;
                    changed = true;
                }
            for (std::uint32_t b = 0; b < c.map.size(); ++b)
                if (alive[c.source][b] && ! alive[c.target][c.map[b]]) {
                    alive[c.source][b] = 0;
                    changed = true;
                }
        }
    }

    AcResult out;
    for (const auto & a : alive) {
        std::vector<std::uint32_t> dom;
        for (std::uint32_t i = 0; i < a.size(); ++i)
            if (a[i])
                dom.push_back(i);
        out.emptied = out.emptied || dom.empty();
        out.domains.push_back(std::move(dom));
    }
    return out;
}

auto check_zp_solution(const LcInstance & d, const ZpSolution & s) -> bool
{
    if (s.values.size() != d.variables.size())
        throw Error(ErrorKind::ShapeMismatch, "solution has the wrong number of variables");
    for (std::uint32_t x = 0; x < d.variables.size(); ++x)
        if (s.values[x].size() != d.domain_size(x))
            throw Error(ErrorKind::ShapeMismatch, "solution vector has the wrong length");
    std::uint64_t p = s.p;
    for (const auto & f : s.values) {
        std::uint64_t sum = 0;
        for (auto v : f) {
            if (v >= p)
                return false;
            sum += v;
        }
        if (sum % p != 1 % p)
            return false;
    }
    for (const auto & c : d.constraints) {
        std::vector<std::uint64_t> pushed(d.domain_size(c.target), 0);
        for (std::uint32_t b = 0; b < c.map.size(); ++b)
            pushed[c.map[b]] += s.values[c.source][b];
        for (std::uint32_t a = 0; a < pushed.size(); ++a)
            if (pushed[a] % p != s.values[c.target][a])
                return false;
    }
    return true;
}

auto solve_zp(const LcInstance & d, std::uint32_t p, const Caps & caps) -> std::optional<ZpSolution>
{
    require_prime(p);
    d.validate();
    PointIndex pi(d);
    if (pi.size() > caps.unknowns)
        throw Error(ErrorKind::SizeCapExceeded,
            "Z_p system needs " + std::to_string(pi.size()) + " unknowns, cap is " + std::to_string(caps.unknowns));

    SparseSystem sys(p, pi.size());
    std::vector<std::pair<std::uint32_t, Residue>> terms;
    for (std::uint32_t x = 0; x < d.variables.size(); ++x) {
        terms.clear();
        for (std::uint32_t a = 0; a < d.domain_size(x); ++a)
            terms.emplace_back(pi.id(x, a), 1);
        sys.add_row(terms, 1 % p);
    }
    for (const auto & c : d.constraints) {
        if (is_identity(c))
            continue;
        auto pre = preimages(d, c);
        for (std::uint32_t a = 0; a < pre.size(); ++a) {
            terms.clear();
            terms.emplace_back(pi.id(c.target, a), 1);
            for (auto b : pre[a])
                terms.emplace_back(pi.id(c.source, b), p - 1);
            sys.add_row(terms, 0);
        }
        if (sys.nonzeros() > caps.nonzeros)
            throw Error(ErrorKind::SizeCapExceeded, "Z_p system exceeds the nonzero cap");
    }
    auto result = solve_sparse_mod_p(sys);
    if (! result.feasible())
        return std::nullopt;
    ZpSolution out;
    out.p = p;
    for (std::uint32_t x = 0; x < d.variables.size(); ++x)
        out.values.emplace_back(result.particular.begin() + pi.offset(x),
            result.particular.begin() + pi.offset(x) + d.domain_size(x));
    return out;
}

auto check_zn_solution(const LcInstance & d, const ZnSolution & s) -> bool
{
    if (s.values.size() != d.variables.size())
        throw Error(ErrorKind::ShapeMismatch, "solution has the wrong number of variables");
    for (std::uint32_t x = 0; x < d.variables.size(); ++x)
        if (s.values[x].size() != d.domain_size(x))
            throw Error(ErrorKind::ShapeMismatch, "solution vector has the wrong length");
    auto eq = [&](__int128 a, __int128 b) {
        if (s.n == 0)
            return a == b;
        auto r = (a - b) % s.n;
        return r == 0;
    };
    for (const auto & f : s.values) {
        __int128 sum = 0;
        for (auto v : f)
            sum += v;
        if (! eq(sum, 1))
            return false;
    }
    for (const auto & c : d.constraints) {
        std::vector<__int128> pushed(d.domain_size(c.target), 0);
        for (std::uint32_t b = 0; b < c.map.size(); ++b)
            pushed[c.map[b]] += s.values[c.source][b];
        for (std::uint32_t a = 0; a < pushed.size(); ++a)
            if (! eq(pushed[a], s.values[c.target][a]))
                return false;
    }
    return true;
}

auto solve_zn(const LcInstance & d, std::int64_t n, const Caps & caps) -> std::optional<ZnSolution>
{
    if (n < 0 || n == 1)
        throw Error(ErrorKind::InvalidInput, "modulus must be 0 or at least 2");
    d.validate();
    PointIndex pi(d);
    std::size_t rows = d.variables.size();
    for (const auto & c : d.constraints)
        rows += d.domain_size(c.target);
    if (pi.size() > caps.unknowns || rows * pi.size() > caps.nonzeros)
        throw Error(ErrorKind::SizeCapExceeded, "dense Z_n system is too large");

    IntMatrix a;
    std::vector<std::int64_t> b;
    for (std::uint32_t x = 0; x < d.variables.size(); ++x) {
        std::vector<std::int64_t> row(pi.size(), 0);
        for (std::uint32_t e = 0; e < d.domain_size(x); ++e)
            row[pi.id(x, e)] = 1;
        a.push_back(std::move(row));
        b.push_back(1);
    }
    for (const auto & c : d.constraints) {
        if (is_identity(c))
            continue;
        auto pre = preimages(d, c);
        for (std::uint32_t t = 0; t < pre.size(); ++t) {
            std::vector<std::int64_t> row(pi.size(), 0);
            row[pi.id(c.target, t)] += 1;
            for (auto s : pre[t])
                row[pi.id(c.source, s)] -= 1;
            a.push_back(std::move(row));
            b.push_back(0);
        }
    }
    if (a.empty())
        return ZnSolution{n, {}};
    auto result = solve_mod_n(a, b, n);
    if (! result.feasible())
        return std::nullopt;
    ZnSolution out;
    out.n = n;
    for (std::uint32_t x = 0; x < d.variables.size(); ++x)
        out.values.emplace_back(result.particular.begin() + pi.offset(x),
            result.particular.begin() + pi.offset(x) + d.domain_size(x));
    return out;
}

auto TensorSolution::value(std::vector<std::uint32_t> points) const -> Residue
{
    std::sort(points.begin(), points.end());
    auto it = entries.find(points);
    return it == entries.end() ? 0 : it->second;
}

auto TensorSolution::set(std::vector<std::uint32_t> points, Residue v) -> void
{
    std::sort(points.begin(), points.end());
    v %= p;
    if (v == 0)
        entries.erase(points);
    else
        entries[points] = v;
}

auto tensor_from_matrix(const LcInstance & d, std::uint32_t p, const std::vector<std::vector<std::uint32_t>> & m)
    -> TensorSolution
{
    PointIndex pi(d);
    if (m.size() != pi.size())
        throw Error(ErrorKind::InvalidTensor, "matrix size does not match the number of points");
    for (const auto & row : m)
        if (row.size() != pi.size())
            throw Error(ErrorKind::InvalidTensor, "matrix is not square");
    TensorSolution t;
    t.p = p;
    t.k = 2;
    t.domain_sizes = domain_sizes(d);
    for (std::uint32_t i = 0; i < m.size(); ++i)
        for (std::uint32_t j = i; j < m.size(); ++j) {
            if (m[i][j] != m[j][i])
                throw Error(ErrorKind::InvalidTensor, "matrix is not symmetric");
            if (m[i][j] % p != 0)
                t.entries[{i, j}] = m[i][j] % p;
        }
    return t;
}

auto check_tensor_solution(const LcInstance & d, const TensorSolution & t) -> bool
{
    auto sizes = domain_sizes(d);
    if (t.domain_sizes != sizes)
        throw Error(ErrorKind::ShapeMismatch, "tensor domains do not match the instance");
    if (t.k == 0 || ! is_prime(t.p))
        return false;
    PointIndex pi(sizes);
    auto k = t.k;
    std::uint64_t p = t.p;
    TupleCodec codec(pi.size(), k);

    std::unordered_map<std::uint64_t, Residue> table;
    for (const auto & [key, v] : t.entries) {
        if (key.size() != k || ! std::is_sorted(key.begin(), key.end()) || v == 0 || v >= p)
            return false;
        for (auto q : key)
            if (q >= pi.size())
                return false;
        for (std::size_t i = 1; i < k; ++i)
            if (key[i] != key[i - 1] && pi.var_of(key[i]) == pi.var_of(key[i - 1]))
                return false;
        table.emplace(codec.encode(key), v);
    }
    std::vector<std::uint32_t> sorted;
    auto lookup = [&](const std::vector<std::uint32_t> & points) -> std::uint64_t {
        sorted = points;
        std::sort(sorted.begin(), sorted.end());
        auto it = table.find(codec.encode(sorted));
        return it == table.end() ? 0 : it->second;
    };

    auto nvars = static_cast<std::uint32_t>(sizes.size());
    auto sigmas = all_self_maps(k);
    bool ok = true;
    for_each_multiset(nvars, k, [&](const std::vector<std::uint32_t> & xs) {
        if (! ok)
            return;
        std::vector<std::uint32_t> block(k), points(k);
        for (std::uint32_t i = 0; i < k; ++i)
            block[i] = sizes[xs[i]];

        std::uint64_t sum = 0;
        for_each_product(block, [&](const std::vector<std::uint32_t> & a) {
            for (std::uint32_t i = 0; i < k; ++i)
                points[i] = pi.id(xs[i], a[i]);
            sum += lookup(points);
        });
        if (sum % p != 1 % p) {
            ok = false;
            return;
        }

        for (const auto & sigma : sigmas) {
            std::vector<std::uint32_t> ys(k), target_block(k), b(k);
            for (std::uint32_t i = 0; i < k; ++i) {
                ys[i] = xs[sigma[i]];
                target_block[i] = sizes[ys[i]];
            }
            std::size_t target_size = 1;
            for (auto s : target_block)
                target_size *= s;
            std::vector<std::uint64_t> acc(target_size, 0);
            for_each_product(block, [&](const std::vector<std::uint32_t> & a) {
                for (std::uint32_t i = 0; i < k; ++i) {
                    points[i] = pi.id(xs[i], a[i]);
                    b[i] = a[sigma[i]];
                }
                acc[product_index(target_block, b)] += lookup(points);
            });
            for_each_product(target_block, [&](const std::vector<std::uint32_t> & bb) {
                for (std::uint32_t i = 0; i < k; ++i)
                    points[i] = pi.id(ys[i], bb[i]);
                if (acc[product_index(target_block, bb)] % p != lookup(points))
                    ok = false;
            });
            if (! ok)
                return;
        }
    });
    if (! ok)
        return false;

    for (const auto & c : d.constraints) {
        if (is_identity(c))
            continue;
        auto pre = preimages(d, c);
        for_each_multiset(pi.size(), k - 1, [&](const std::vector<std::uint32_t> & r) {
            if (! ok)
                return;
            auto points = r;
            points.push_back(0);
            for (std::uint32_t a = 0; a < pre.size(); ++a) {
                points.back() = pi.id(c.target, a);
                auto lhs = lookup(points);
                std::uint64_t rhs = 0;
                for (auto b : pre[a]) {
                    points.back() = pi.id(c.source, b);
                    rhs += lookup(points);
                }
                if (rhs % p != lhs) {
                    ok = false;
                    return;
                }
            }
        });
        if (! ok)
            return false;
    }
    return true;
}

auto check_tensor_matrix(const LcInstance & d, std::uint32_t p, const std::vector<std::vector<std::uint32_t>> & m)
    -> bool
{
    try {
        return check_tensor_solution(d, tensor_from_matrix(d, p, m));
    }
    catch (const Error & e) {
        if (e.kind() == ErrorKind::InvalidTensor)
            return false;
        throw;
    }
}

auto solve_level(const LcInstance & d, std::uint32_t p, std::uint32_t k, LevelEncoding encoding, const Caps & caps,
    LevelStats * stats) -> std::optional<TensorSolution>
{
    if (k == 0)
        throw Error(ErrorKind::LevelZero, "level must be at least 1");
    require_prime(p);
    d.validate();
    if (encoding == LevelEncoding::Direct)
        return solve_direct(d, p, k, caps, stats);

    PointIndex pi(d);
    auto comps = connected_components(d);
    if (stats)
        stats->components = comps.size();
    // Nonzero set values per component in global point ids; the empty set has value 1.
    std::vector<std::vector<std::pair<std::vector<std::uint32_t>, Residue>>> parts;
    for (const auto & comp : comps) {
        auto sub = induced_subinstance(d, comp);
        auto values = solve_canonical(sub, p, k, caps, stats);
        if (! values)
            return std::nullopt;
        PointIndex spi(sub);
        std::vector<std::pair<std::vector<std::uint32_t>, Residue>> global{{{}, 1 % p}};
        for (auto & [set, v] : *values) {
            std::vector<std::uint32_t> g;
            for (auto q : set) {
                auto pt = spi.point(q);
                g.push_back(pi.id(comp[pt.var], pt.elem));
            }
            global.emplace_back(std::move(g), v);
        }
        parts.push_back(std::move(global));
    }

    TensorSolution out;
    out.p = p;
    out.k = k;
    out.domain_sizes = domain_sizes(d);
    std::vector<std::uint32_t> acc;
    std::function<void(std::size_t, std::uint64_t)> combine = [&](std::size_t c, std::uint64_t value) {
        if (c == parts.size()) {
            if (acc.empty())
                return;
            auto set = acc;
            std::sort(set.begin(), set.end());
            for_each_expansion(set, k, [&](const std::vector<std::uint32_t> & key) {
                out.entries.emplace(key, static_cast<Residue>(value));
            });
            return;
        }
        for (const auto & [set, v] : parts[c]) {
            if (acc.size() + set.size() > k)
                continue;
            auto prod = value * v % p;
            if (prod == 0)
                continue;
            acc.insert(acc.end(), set.begin(), set.end());
            combine(c + 1, prod);
            acc.resize(acc.size() - set.size());
        }
    };
    combine(0, 1 % p);
    return out;
}

auto restrict_tensor(const TensorSolution & t, const std::vector<std::uint32_t> & vars) -> TensorSolution
{
    PointIndex old_index(t.domain_sizes);
    TensorSolution out;
    out.p = t.p;
    out.k = t.k;
    for (auto x : vars)
        out.domain_sizes.push_back(t.domain_sizes.at(x));
    PointIndex new_index(out.domain_sizes);
    std::vector<std::int64_t> renumber(old_index.size(), -1);
    for (std::uint32_t i = 0; i < vars.size(); ++i)
        for (std::uint32_t a = 0; a < out.domain_sizes[i]; ++a)
            renumber[old_index.id(vars[i], a)] = new_index.id(i, a);
    for (const auto & [key, v] : t.entries) {
        std::vector<std::uint32_t> mapped;
        for (auto q : key) {
            if (renumber[q] < 0)
                break;
            mapped.push_back(static_cast<std::uint32_t>(renumber[q]));
        }
        if (mapped.size() == key.size()) {
            std::sort(mapped.begin(), mapped.end());
            out.entries.emplace(std::move(mapped), v);
        }
    }
    return out;
}

auto lower_level(const TensorSolution & t) -> TensorSolution
{
    if (t.k < 2)
        throw Error(ErrorKind::LevelZero, "cannot lower a level-1 tensor");
    TensorSolution out;
    out.p = t.p;
    out.k = t.k - 1;
    out.domain_sizes = t.domain_sizes;
    // f'(T) = f(T + min T); those are exactly the keys whose least point repeats.
    for (const auto & [key, v] : t.entries)
        if (key[0] == key[1])
            out.entries.emplace(std::vector<std::uint32_t>(key.begin() + 1, key.end()), v);
    return out;
}

auto marginal(const TensorSolution & t) -> ZpSolution
{
    PointIndex pi(t.domain_sizes);
    ZpSolution out;
    out.p = t.p;
    for (std::uint32_t x = 0; x < t.domain_sizes.size(); ++x) {
        ResidueVec f(t.domain_sizes[x]);
        for (std::uint32_t a = 0; a < f.size(); ++a)
            f[a] = t.value(std::vector<std::uint32_t>(t.k, pi.id(x, a)));
        out.values.push_back(std::move(f));
    }
    return out;
}

auto to_json(const TensorSolution & t) -> Json
{
    PointIndex pi(t.domain_sizes);
    Json out;
    out["p"] = t.p;
    out["k"] = t.k;
    out["entries"] = Json::array();
    for (const auto & [key, v] : t.entries) {
        Json points = Json::array();
        for (auto q : key) {
            auto pt = pi.point(q);
            points.push_back(Json::array({pt.var, pt.elem}));
        }
        Json entry;
        entry["points"] = std::move(points);
        entry["value"] = v;
        out["entries"].push_back(std::move(entry));
    }
    return out;
}

auto tensor_from_json(const Json & j, const LcInstance & d) -> TensorSolution
{
    try {
        TensorSolution t;
        t.p = j.at("p").get<std::uint32_t>();
        t.k = j.at("k").get<std::uint32_t>();
        t.domain_sizes = domain_sizes(d);
        PointIndex pi(t.domain_sizes);
        for (const auto & e : j.at("entries")) {
            std::vector<std::uint32_t> key;
            for (const auto & pt : e.at("points")) {
                auto var = pt.at(0).get<std::uint32_t>();
                auto elem = pt.at(1).get<std::uint32_t>();
                if (var >= pi.variables() || elem >= pi.domain_size(var))
                    throw Error(ErrorKind::InvalidInput, "tensor point out of range");
                key.push_back(pi.id(var, elem));
            }
            if (key.size() != t.k)
                throw Error(ErrorKind::InvalidInput, "tensor entry has the wrong length");
            t.set(std::move(key), e.at("value").get<std::uint32_t>());
        }
        return t;
    }
    catch (const Json::exception & e) {
        throw Error(ErrorKind::InvalidInput, std::string("malformed tensor: ") + e.what());
    }
}

auto to_json(const ZpSolution & s) -> Json
{
    Json out;
    out["p"] = s.p;
    out["values"] = s.values;
    return out;
}

auto to_json(const ZnSolution & s) -> Json
{
    Json out;
    out["n"] = s.n;
    out["values"] = s.values;
    return out;
}

}
