#include <lcr/error.hpp>
#include <lcr/modular_linalg.hpp>

#include "dense_gf.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace lcr {

auto is_prime(std::uint64_t n) -> bool
{
    if (n < 2)
        return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

auto reduce_mod(std::int64_t a, std::uint64_t m) -> std::uint64_t
{
    auto r = a % static_cast<std::int64_t>(m);
    if (r < 0)
        r += static_cast<std::int64_t>(m);
    return static_cast<std::uint64_t>(r);
}

auto inverse_mod(std::uint64_t a, std::uint64_t m) -> std::uint64_t
{
    std::int64_t old_r = static_cast<std::int64_t>(a % m), r = static_cast<std::int64_t>(m);
    std::int64_t old_s = 1, s = 0;
    while (r != 0) {
        auto q = old_r / r;
        std::tie(old_r, r) = std::pair{r, old_r - q * r};
        std::tie(old_s, s) = std::pair{s, old_s - q * s};
    }
    if (old_r != 1)
        throw Error(ErrorKind::OutOfRange, std::to_string(a) + " has no inverse modulo " + std::to_string(m));
    return reduce_mod(old_s, m);
}

namespace {
    auto require_prime(std::uint64_t p) -> void
    {
        if (! is_prime(p))
            throw Error(ErrorKind::NonPrimeModulus, "modulus " + std::to_string(p) + " is not prime");
    }
}

ModMatrix::ModMatrix(std::uint32_t modulus, std::size_t rows, std::size_t cols) :
    _modulus(modulus), _rows(rows), _cols(cols), _entries(rows * cols, 0)
{
    if (modulus == 0)
        throw Error(ErrorKind::OutOfRange, "modulus must be positive");
}

auto ModMatrix::from_rows(std::uint32_t modulus, const std::vector<std::vector<std::int64_t>> & rows) -> ModMatrix
{
    std::size_t cols = rows.empty() ? 0 : rows.front().size();
    ModMatrix m(modulus, rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols)
            throw Error(ErrorKind::DimensionMismatch, "ragged matrix rows");
        for (std::size_t c = 0; c < cols; ++c)
            m._entries[r * cols + c] = static_cast<Residue>(reduce_mod(rows[r][c], modulus));
    }
    return m;
}

auto ModMatrix::set(std::size_t r, std::size_t c, Residue v) -> void
{
    if (r >= _rows || c >= _cols)
        throw Error(ErrorKind::OutOfRange, "matrix index out of range");
    _entries[r * _cols + c] = v % _modulus;
}

auto ModMatrix::transpose() const -> ModMatrix
{
    ModMatrix t(_modulus, _cols, _rows);
    for (std::size_t r = 0; r < _rows; ++r)
        for (std::size_t c = 0; c < _cols; ++c)
            t._entries[c * _rows + r] = at(r, c);
    return t;
}

auto ModMatrix::multiply(std::span<const Residue> x) const -> ResidueVec
{
    if (x.size() != _cols)
        throw Error(ErrorKind::DimensionMismatch, "vector length does not match column count");
    ResidueVec out(_rows, 0);
    for (std::size_t r = 0; r < _rows; ++r) {
        std::uint64_t acc = 0;
        for (std::size_t c = 0; c < _cols; ++c)
            acc = (acc + std::uint64_t{at(r, c)} * x[c]) % _modulus;
        out[r] = static_cast<Residue>(acc);
    }
    return out;
}

auto ModMatrix::left_multiply(std::span<const Residue> y) const -> ResidueVec
{
    if (y.size() != _rows)
        throw Error(ErrorKind::DimensionMismatch, "vector length does not match row count");
    ResidueVec out(_cols, 0);
    for (std::size_t r = 0; r < _rows; ++r)
        for (std::size_t c = 0; c < _cols; ++c)
            out[c] = static_cast<Residue>((out[c] + std::uint64_t{y[r]} * at(r, c)) % _modulus);
    return out;
}

auto ModMatrix::sparse_row(std::size_t r) const -> std::vector<std::pair<std::uint32_t, Residue>>
{
    std::vector<std::pair<std::uint32_t, Residue>> out;
    for (std::size_t c = 0; c < _cols; ++c)
        if (at(r, c) != 0)
            out.emplace_back(static_cast<std::uint32_t>(c), at(r, c));
    return out;
}

namespace {
    template <typename Rows>
    auto load(Rows & rows, const ModMatrix & m) -> void
    {
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t c = 0; c < m.cols(); ++c)
                if (auto v = m.at(r, c))
                    rows.set(r, c, v);
    }

    template <typename Rows>
    auto store(const Rows & rows, std::uint32_t p) -> ModMatrix
    {
        ModMatrix m(p, rows.rows(), rows.cols());
        for (std::size_t r = 0; r < rows.rows(); ++r)
            for (std::size_t c = 0; c < rows.cols(); ++c)
                if (auto v = rows.get(r, c))
                    m.set(r, c, v);
        return m;
    }

    // Standard nullspace basis of a matrix in reduced row-echelon form.
    template <typename Rows>
    auto nullspace_from_rref(const Rows & rref, const std::vector<std::size_t> & pivots, std::size_t cols,
        std::uint32_t p) -> std::vector<ResidueVec>
    {
        std::vector<char> is_pivot(cols, 0);
        for (auto c : pivots)
            is_pivot[c] = 1;
        std::vector<ResidueVec> basis;
        for (std::size_t f = 0; f < cols; ++f) {
            if (is_pivot[f])
                continue;
            ResidueVec z(cols, 0);
            z[f] = 1;
            for (std::size_t i = 0; i < pivots.size(); ++i)
                if (auto v = rref.get(i, f))
                    z[pivots[i]] = p - v;
            basis.push_back(std::move(z));
        }
        return basis;
    }
}

auto rref_mod_p(const ModMatrix & m) -> RrefResult
{
    require_prime(m.modulus());
    return detail::with_rows(m.modulus(), m.rows(), m.cols(), [&](auto & rows) {
        load(rows, m);
        auto pivots = detail::gauss_jordan(rows, m.cols(), true);
        RrefResult result;
        result.rref = store(rows, m.modulus());
        result.rank = pivots.size();
        result.pivot_cols = std::move(pivots);
        return result;
    });
}

auto left_nullspace_mod_p(const ModMatrix & a, std::uint32_t p) -> std::vector<ResidueVec>
{
    require_prime(p);
    if (a.modulus() != p)
        throw Error(ErrorKind::DimensionMismatch, "matrix modulus differs from p");
    auto t = a.transpose();
    auto basis = detail::with_rows(p, t.rows(), t.cols(), [&](auto & rows) {
        load(rows, t);
        auto pivots = detail::gauss_jordan(rows, t.cols(), true);
        return nullspace_from_rref(rows, pivots, t.cols(), p);
    });
    if (basis.empty())
        return basis;

    // Canonical form: the reduced echelon basis of the span.
    ModMatrix b(p, basis.size(), a.rows());
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = 0; j < a.rows(); ++j)
            b.set(i, j, basis[i][j]);
    auto reduced = rref_mod_p(b);
    std::vector<ResidueVec> out;
    for (std::size_t i = 0; i < reduced.rank; ++i) {
        auto row = reduced.rref.row(i);
        out.emplace_back(row.begin(), row.end());
    }
    return out;
}

auto solve_mod_p(const ModMatrix & a, std::span<const Residue> b, std::uint32_t p, bool want_nullspace) -> SolveResult
{
    require_prime(p);
    if (a.modulus() != p)
        throw Error(ErrorKind::DimensionMismatch, "matrix modulus differs from p");
    if (b.size() != a.rows())
        throw Error(ErrorKind::DimensionMismatch, "right-hand side length does not match row count");

    std::size_t n = a.cols();
    SolveResult result = detail::with_rows(p, a.rows(), n + 1, [&](auto & rows) {
        for (std::size_t r = 0; r < a.rows(); ++r) {
            for (std::size_t c = 0; c < n; ++c)
                if (auto v = a.at(r, c))
                    rows.set(r, c, v);
            rows.set(r, n, b[r] % p);
        }
        std::vector<std::size_t> origin(a.rows());
        std::iota(origin.begin(), origin.end(), 0);
        auto pivots = detail::gauss_jordan(rows, n + 1, true, &origin);

        SolveResult r;
        if (! pivots.empty() && pivots.back() == n) {
            r.status = SolveStatus::Infeasible;
            r.contradiction_row = origin[pivots.size() - 1];
            return r;
        }
        r.status = SolveStatus::Feasible;
        r.particular.assign(n, 0);
        for (std::size_t i = 0; i < pivots.size(); ++i)
            r.particular[pivots[i]] = rows.get(i, n);
        if (want_nullspace)
            r.nullspace_basis = nullspace_from_rref(rows, pivots, n, p);
        return r;
    });

    if (! result.feasible()) {
        for (auto & y : left_nullspace_mod_p(a, p)) {
            std::uint64_t dot = 0;
            for (std::size_t i = 0; i < y.size(); ++i)
                dot = (dot + std::uint64_t{y[i]} * b[i]) % p;
            if (dot != 0) {
                result.left_certificate = y;
                break;
            }
        }
    }
    return result;
}

SparseSystem::SparseSystem(std::uint32_t p, std::size_t cols) : _p(p), _cols(cols)
{
    require_prime(p);
}

auto SparseSystem::add_row(std::vector<std::pair<std::uint32_t, Residue>> terms, Residue rhs) -> void
{
    std::sort(terms.begin(), terms.end());
    Row row;
    row.rhs = rhs % _p;
    for (std::size_t i = 0; i < terms.size();) {
        auto col = terms[i].first;
        if (col >= _cols)
            throw Error(ErrorKind::DimensionMismatch, "column index out of range");
        std::uint64_t sum = 0;
        for (; i < terms.size() && terms[i].first == col; ++i)
            sum += terms[i].second % _p;
        sum %= _p;
        if (sum != 0) {
            row.cols.push_back(col);
            row.vals.push_back(static_cast<Residue>(sum));
        }
    }
    _nonzeros += row.cols.size();
    _rows.push_back(std::move(row));
}

auto SparseSystem::satisfied_by(std::span<const Residue> x) const -> bool
{
    if (x.size() != _cols)
        return false;
    for (const auto & row : _rows) {
        std::uint64_t acc = 0;
        for (std::size_t i = 0; i < row.cols.size(); ++i)
            acc = (acc + std::uint64_t{row.vals[i]} * x[row.cols[i]]) % _p;
        if (acc != row.rhs)
            return false;
    }
    return true;
}

namespace {
    struct WorkRow {
        std::vector<std::uint32_t> cols;
        std::vector<Residue> vals;
        Residue rhs;
        std::size_t origin;
        bool active = true;
    };

    auto value_at(const WorkRow & row, std::uint32_t col) -> Residue
    {
        auto it = std::lower_bound(row.cols.begin(), row.cols.end(), col);
        if (it == row.cols.end() || *it != col)
            return 0;
        return row.vals[it - row.cols.begin()];
    }

    // Largest Markowitz cost (w - 1) * (len - 1) accepted during structured elimination.
    constexpr std::uint64_t markowitz_limit = 48;
}

auto solve_sparse_mod_p(const SparseSystem & system, SparseSolveStats * stats) -> SolveResult
{
    const std::uint64_t p = system.modulus();
    const std::size_t ncols = system.cols();
    SolveResult result;

    std::vector<WorkRow> rows;
    rows.reserve(system.rows().size());
    for (std::size_t i = 0; i < system.rows().size(); ++i) {
        const auto & r = system.rows()[i];
        if (r.cols.empty()) {
            if (r.rhs != 0) {
                result.contradiction_row = i;
                return result;
            }
            continue;
        }
        rows.push_back(WorkRow{r.cols, r.vals, r.rhs, i});
    }

    std::vector<std::vector<std::uint32_t>> col_rows(ncols);
    std::vector<std::uint32_t> weight(ncols, 0);
    for (std::uint32_t i = 0; i < rows.size(); ++i)
        for (auto c : rows[i].cols) {
            col_rows[c].push_back(i);
            ++weight[c];
        }

    using Entry = std::pair<std::uint32_t, std::uint32_t>;
    std::vector<Entry> heap;
    auto push = [&](std::uint32_t c) {
        heap.emplace_back(weight[c], c);
        std::push_heap(heap.begin(), heap.end(), std::greater<>{});
    };
    for (std::uint32_t c = 0; c < ncols; ++c)
        if (weight[c] > 0)
            push(c);

    std::vector<char> pivoted(ncols, 0);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> stack;
    std::vector<std::uint32_t> touched;
    std::vector<std::uint32_t> merged_cols;
    std::vector<Residue> merged_vals;

    while (! heap.empty()) {
        std::pop_heap(heap.begin(), heap.end(), std::greater<>{});
        auto [w, c] = heap.back();
        heap.pop_back();
        if (pivoted[c] || w != weight[c] || w == 0)
            continue;

        auto & list = col_rows[c];
        std::erase_if(list, [&](std::uint32_t r) {
            return ! rows[r].active || ! std::binary_search(rows[r].cols.begin(), rows[r].cols.end(), c);
        });
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());

        std::uint32_t best = list.front();
        for (auto r : list)
            if (rows[r].cols.size() < rows[best].cols.size())
                best = r;
        std::uint64_t cost = std::uint64_t{w - 1} * (rows[best].cols.size() - 1);
        if (cost > markowitz_limit)
            continue;

        pivoted[c] = 1;
        const auto & prow = rows[best];
        std::uint64_t inv = inverse_mod(value_at(prow, c), p);
        touched.clear();

        for (auto r : std::vector<std::uint32_t>(list)) {
            if (r == best)
                continue;
            auto & row = rows[r];
            std::uint64_t factor = (std::uint64_t{value_at(row, c)} * inv) % p;
            std::uint64_t neg = p - factor;

            merged_cols.clear();
            merged_vals.clear();
            std::size_t i = 0, j = 0;
            while (i < row.cols.size() || j < prow.cols.size()) {
                if (j == prow.cols.size() || (i < row.cols.size() && row.cols[i] < prow.cols[j])) {
                    merged_cols.push_back(row.cols[i]);
                    merged_vals.push_back(row.vals[i]);
                    ++i;
                }
                else if (i == row.cols.size() || prow.cols[j] < row.cols[i]) {
                    auto col = prow.cols[j];
                    merged_cols.push_back(col);
                    merged_vals.push_back(static_cast<Residue>((neg * prow.vals[j]) % p));
                    ++weight[col];
                    col_rows[col].push_back(r);
                    touched.push_back(col);
                    ++j;
                }
                else {
                    auto col = row.cols[i];
                    auto v = static_cast<Residue>((row.vals[i] + neg * prow.vals[j]) % p);
                    if (v != 0) {
                        merged_cols.push_back(col);
                        merged_vals.push_back(v);
                    }
                    else {
                        --weight[col];
                        touched.push_back(col);
                    }
                    ++i;
                    ++j;
                }
            }
            row.cols.swap(merged_cols);
            row.vals.swap(merged_vals);
            row.rhs = static_cast<Residue>((row.rhs + neg * prow.rhs) % p);

            if (row.cols.empty()) {
                row.active = false;
                if (row.rhs != 0) {
                    result.contradiction_row = row.origin;
                    return result;
                }
            }
        }

        rows[best].active = false;
        for (auto col : prow.cols)
            if (col != c) {
                --weight[col];
                touched.push_back(col);
            }
        weight[c] = 0;
        list.clear();
        stack.emplace_back(c, best);

        std::sort(touched.begin(), touched.end());
        touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
        for (auto col : touched)
            if (! pivoted[col] && weight[col] > 0)
                push(col);
    }

    // Dense core on the remaining rows and columns.
    std::vector<std::uint32_t> core_rows;
    for (std::uint32_t i = 0; i < rows.size(); ++i)
        if (rows[i].active)
            core_rows.push_back(i);
    std::vector<std::uint32_t> core_index(ncols, UINT32_MAX);
    std::vector<std::uint32_t> core_cols;
    for (auto r : core_rows)
        for (auto c : rows[r].cols)
            if (core_index[c] == UINT32_MAX) {
                core_index[c] = 0;
                core_cols.push_back(c);
            }
    std::sort(core_cols.begin(), core_cols.end());
    for (std::uint32_t i = 0; i < core_cols.size(); ++i)
        core_index[core_cols[i]] = i;

    if (stats) {
        stats->eliminated_pivots = stack.size();
        stats->core_rows = core_rows.size();
        stats->core_cols = core_cols.size();
    }

    std::size_t nc = core_cols.size();
    if (static_cast<double>(core_rows.size()) * static_cast<double>(nc + 1) > 8.0e9)
        throw Error(ErrorKind::SizeCapExceeded,
            "dense elimination core of " + std::to_string(core_rows.size()) + " x " + std::to_string(nc) + " is too large");

    ResidueVec x(ncols, 0);
    bool feasible = detail::with_rows(static_cast<std::uint32_t>(p), core_rows.size(), nc + 1, [&](auto & m) {
        for (std::size_t i = 0; i < core_rows.size(); ++i) {
            const auto & row = rows[core_rows[i]];
            for (std::size_t j = 0; j < row.cols.size(); ++j)
                m.set(i, core_index[row.cols[j]], row.vals[j]);
            m.set(i, nc, row.rhs);
        }
        std::vector<std::size_t> origin(core_rows.size());
        for (std::size_t i = 0; i < core_rows.size(); ++i)
            origin[i] = rows[core_rows[i]].origin;
        auto pivots = detail::gauss_jordan(m, nc + 1, true, &origin);
        if (! pivots.empty() && pivots.back() == nc) {
            result.contradiction_row = origin[pivots.size() - 1];
            return false;
        }
        for (std::size_t i = 0; i < pivots.size(); ++i)
            x[core_cols[pivots[i]]] = m.get(i, nc);
        return true;
    });
    if (! feasible)
        return result;

    for (auto it = stack.rbegin(); it != stack.rend(); ++it) {
        auto [c, r] = *it;
        const auto & row = rows[r];
        std::uint64_t acc = row.rhs;
        Residue pivot = 0;
        for (std::size_t j = 0; j < row.cols.size(); ++j) {
            if (row.cols[j] == c)
                pivot = row.vals[j];
            else
                acc = (acc + (p - row.vals[j]) * x[row.cols[j]]) % p;
        }
        x[c] = static_cast<Residue>((acc * inverse_mod(pivot, p)) % p);
    }

    result.status = SolveStatus::Feasible;
    result.particular = std::move(x);
    return result;
}

// Smith normal form over Z (checked 64-bit arithmetic) or over Z_n.

namespace {
    class IntRing {
    public:
        auto add(std::int64_t a, std::int64_t b) const -> std::int64_t { return check(static_cast<__int128>(a) + b); }
        auto mul(std::int64_t a, std::int64_t b) const -> std::int64_t { return check(static_cast<__int128>(a) * b); }
        auto combine(std::int64_t s, std::int64_t a, std::int64_t t, std::int64_t b) const -> std::int64_t
        {
            return check(static_cast<__int128>(s) * a + static_cast<__int128>(t) * b);
        }
        auto size(std::int64_t a) const -> std::int64_t { return a < 0 ? -a : a; }
        auto modulus() const -> std::int64_t { return 0; }

    private:
        static auto check(__int128 v) -> std::int64_t
        {
            if (v > INT64_MAX || v < INT64_MIN)
                throw Error(ErrorKind::Overflow, "Smith normal form entry exceeds 64 bits");
            return static_cast<std::int64_t>(v);
        }
    };

    class ModRing {
    public:
        explicit ModRing(std::int64_t n) : _n(n) {}

        auto add(std::int64_t a, std::int64_t b) const -> std::int64_t { return norm(static_cast<__int128>(a) + b); }
        auto mul(std::int64_t a, std::int64_t b) const -> std::int64_t { return norm(static_cast<__int128>(a) * b); }
        auto combine(std::int64_t s, std::int64_t a, std::int64_t t, std::int64_t b) const -> std::int64_t
        {
            return norm(static_cast<__int128>(s) * a + static_cast<__int128>(t) * b);
        }
        // Pivots are compared by the ideal they generate first.
        auto size(std::int64_t a) const -> std::int64_t { return std::gcd(a, _n); }
        auto modulus() const -> std::int64_t { return _n; }

    private:
        auto norm(__int128 v) const -> std::int64_t
        {
            auto r = static_cast<std::int64_t>(v % _n);
            return r < 0 ? r + _n : r;
        }

        std::int64_t _n;
    };

    struct ExtGcd {
        std::int64_t g, s, t;
    };

    auto ext_gcd(std::int64_t a, std::int64_t b) -> ExtGcd
    {
        std::int64_t old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
        while (r != 0) {
            auto q = old_r / r;
            std::tie(old_r, r) = std::pair{r, old_r - q * r};
            std::tie(old_s, s) = std::pair{s, old_s - q * s};
            std::tie(old_t, t) = std::pair{t, old_t - q * t};
        }
        if (old_r < 0)
            return {-old_r, -old_s, -old_t};
        return {old_r, old_s, old_t};
    }

    auto identity(std::size_t n) -> IntMatrix
    {
        IntMatrix m(n, std::vector<std::int64_t>(n, 0));
        for (std::size_t i = 0; i < n; ++i)
            m[i][i] = 1;
        return m;
    }

    template <typename Ring>
    class SnfWorker {
    public:
        SnfWorker(const Ring & ring, IntMatrix a) :
            _ring(ring), _a(std::move(a)), _rows(_a.size()), _cols(_rows ? _a[0].size() : 0),
            _u(identity(_rows)), _v(identity(_cols))
        {
            if (ring.modulus() != 0)
                for (auto & row : _a)
                    for (auto & e : row)
                        e = static_cast<std::int64_t>(reduce_mod(e, static_cast<std::uint64_t>(ring.modulus())));
        }

        auto run() -> SnfDecomposition
        {
            std::size_t limit = std::min(_rows, _cols);
            for (std::size_t t = 0; t < limit; ++t) {
                if (! place_pivot(t))
                    break;
                while (true) {
                    clear_column(t);
                    if (clear_row(t))
                        continue;
                    if (fix_divisibility(t))
                        continue;
                    break;
                }
            }
            fix_chain(limit);
            return SnfDecomposition{std::move(_u), std::move(_a), std::move(_v), _ring.modulus()};
        }

    private:
        auto place_pivot(std::size_t t) -> bool
        {
            std::size_t br = _rows, bc = _cols;
            std::pair<std::int64_t, std::int64_t> best{0, 0};
            for (std::size_t i = t; i < _rows; ++i)
                for (std::size_t j = t; j < _cols; ++j)
                    if (_a[i][j] != 0) {
                        auto v = _a[i][j];
                        std::pair<std::int64_t, std::int64_t> key{_ring.size(v), v < 0 ? -v : v};
                        if (br == _rows || key < best) {
                            best = key;
                            br = i;
                            bc = j;
                        }
                    }
            if (br == _rows)
                return false;
            swap_rows(t, br);
            swap_cols(t, bc);
            normalize(t);
            return true;
        }

        auto swap_rows(std::size_t a, std::size_t b) -> void
        {
            if (a == b)
                return;
            std::swap(_a[a], _a[b]);
            std::swap(_u[a], _u[b]);
        }

        auto swap_cols(std::size_t a, std::size_t b) -> void
        {
            if (a == b)
                return;
            for (auto & row : _a)
                std::swap(row[a], row[b]);
            for (auto & row : _v)
                std::swap(row[a], row[b]);
        }

        // Rows i, j replaced by (s*ri + t*rj, x*ri + y*rj) for a matrix of determinant 1.
        auto row_combine(std::size_t i, std::size_t j, std::int64_t s, std::int64_t t, std::int64_t x, std::int64_t y)
            -> void
        {
            for (auto * m : {&_a, &_u}) {
                auto & ri = (*m)[i];
                auto & rj = (*m)[j];
                for (std::size_t c = 0; c < ri.size(); ++c) {
                    auto a = ri[c], b = rj[c];
                    ri[c] = _ring.combine(s, a, t, b);
                    rj[c] = _ring.combine(x, a, y, b);
                }
            }
        }

        auto col_combine(std::size_t i, std::size_t j, std::int64_t s, std::int64_t t, std::int64_t x, std::int64_t y)
            -> void
        {
            for (auto * m : {&_a, &_v})
                for (auto & row : *m) {
                    auto a = row[i], b = row[j];
                    row[i] = _ring.combine(s, a, t, b);
                    row[j] = _ring.combine(x, a, y, b);
                }
        }

        // Make the pivot canonical: positive over Z, a divisor of n over Z_n.
        auto normalize(std::size_t t) -> void
        {
            auto d = _a[t][t];
            if (_ring.modulus() == 0) {
                if (d < 0) {
                    for (auto & e : _a[t])
                        e = _ring.mul(e, -1);
                    for (auto & e : _u[t])
                        e = _ring.mul(e, -1);
                }
                return;
            }
            auto n = _ring.modulus();
            if (d == 0)
                return;
            auto g = std::gcd(d, n);
            if (d == g)
                return;
            auto n1 = n / g;
            auto u0 = n1 == 1 ? std::int64_t{1}
                              : static_cast<std::int64_t>(inverse_mod(static_cast<std::uint64_t>((d / g) % n1),
                                    static_cast<std::uint64_t>(n1)));
            std::int64_t unit = u0;
            while (std::gcd(unit, n) != 1)
                unit += n1;
            for (auto & e : _a[t])
                e = _ring.mul(e, unit);
            for (auto & e : _u[t])
                e = _ring.mul(e, unit);
        }

        auto divides(std::int64_t d, std::int64_t x) const -> bool
        {
            if (d == 0)
                return x == 0;
            return x % d == 0;
        }

        auto clear_column(std::size_t t) -> void
        {
            for (std::size_t i = t + 1; i < _rows; ++i) {
                auto b = _a[i][t];
                if (b == 0)
                    continue;
                auto a = _a[t][t];
                if (divides(a, b)) {
                    row_combine(t, i, 1, 0, -(b / a), 1);
                }
                else {
                    auto e = ext_gcd(a, b);
                    row_combine(t, i, e.s, e.t, -(b / e.g), a / e.g);
                    normalize(t);
                }
            }
        }

        // Returns true when the column became dirty again.
        auto clear_row(std::size_t t) -> bool
        {
            bool dirty = false;
            for (std::size_t j = t + 1; j < _cols; ++j) {
                auto b = _a[t][j];
                if (b == 0)
                    continue;
                auto a = _a[t][t];
                if (divides(a, b)) {
                    col_combine(t, j, 1, 0, -(b / a), 1);
                }
                else {
                    auto e = ext_gcd(a, b);
                    col_combine(t, j, e.s, e.t, -(b / e.g), a / e.g);
                    dirty = true;
                    normalize(t);
                }
            }
            if (dirty)
                for (std::size_t i = t + 1; i < _rows; ++i)
                    if (_a[i][t] != 0)
                        return true;
            return false;
        }

        // Ensure the pivot divides the remaining block; returns true if more work was created.
        auto fix_divisibility(std::size_t t) -> bool
        {
            auto d = _a[t][t];
            for (std::size_t i = t + 1; i < _rows; ++i)
                for (std::size_t j = t + 1; j < _cols; ++j)
                    if (! divides(d, _a[i][j])) {
                        row_combine(t, i, 1, 1, 0, 1);
                        return true;
                    }
            return false;
        }

        // Pivots that ended up zero-sized in Z_n (value 0 means n) may break the chain; the
        // block-by-block procedure above already guarantees it otherwise.
        auto fix_chain(std::size_t limit) -> void
        {
            if (_ring.modulus() == 0)
                return;
            auto n = _ring.modulus();
            auto key = [&](std::int64_t d) { return d == 0 ? n : d; };
            for (std::size_t i = 0; i + 1 < limit; ++i)
                for (std::size_t j = i + 1; j < limit; ++j)
                    if (key(_a[j][j]) < key(_a[i][i])) {
                        swap_rows(i, j);
                        swap_cols(i, j);
                    }
        }

        Ring _ring;
        IntMatrix _a;
        std::size_t _rows, _cols;
        IntMatrix _u, _v;
    };

    auto check_rect(const IntMatrix & a) -> void
    {
        for (const auto & row : a)
            if (row.size() != a.front().size())
                throw Error(ErrorKind::DimensionMismatch, "ragged integer matrix");
    }
}

auto smith_normal_form(const IntMatrix & a) -> SnfDecomposition
{
    if (! a.empty())
        check_rect(a);
    return SnfWorker<IntRing>(IntRing{}, a).run();
}

auto smith_normal_form_mod(const IntMatrix & a, std::int64_t n) -> SnfDecomposition
{
    if (n < 2)
        throw Error(ErrorKind::OutOfRange, "modulus must be at least 2");
    if (! a.empty())
        check_rect(a);
    return SnfWorker<ModRing>(ModRing{n}, a).run();
}

auto multiply(const IntMatrix & a, const IntMatrix & b) -> IntMatrix
{
    std::size_t inner = b.size();
    std::size_t cols = inner ? b[0].size() : 0;
    IntMatrix out(a.size(), std::vector<std::int64_t>(cols, 0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].size() != inner)
            throw Error(ErrorKind::DimensionMismatch, "matrix product shapes differ");
        for (std::size_t j = 0; j < cols; ++j) {
            __int128 acc = 0;
            for (std::size_t l = 0; l < inner; ++l)
                acc += static_cast<__int128>(a[i][l]) * b[l][j];
            if (acc > INT64_MAX || acc < INT64_MIN)
                throw Error(ErrorKind::Overflow, "matrix product entry exceeds 64 bits");
            out[i][j] = static_cast<std::int64_t>(acc);
        }
    }
    return out;
}

auto determinant(const IntMatrix & a) -> std::int64_t
{
    std::size_t n = a.size();
    for (const auto & row : a)
        if (row.size() != n)
            throw Error(ErrorKind::DimensionMismatch, "determinant of a non-square matrix");
    if (n == 0)
        return 1;
    std::vector<std::vector<__int128>> m(n, std::vector<__int128>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m[i][j] = a[i][j];
    __int128 prev = 1;
    int sign = 1;
    auto limit = static_cast<__int128>(INT64_MAX);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t r = k + 1;
            while (r < n && m[r][k] == 0)
                ++r;
            if (r == n)
                return 0;
            std::swap(m[k], m[r]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                auto lhs = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                m[i][j] = lhs / prev;
                if (m[i][j] > limit || m[i][j] < -limit)
                    throw Error(ErrorKind::Overflow, "determinant intermediate exceeds 64 bits");
            }
        prev = m[k][k];
    }
    return static_cast<std::int64_t>(sign * m[n - 1][n - 1]);
}

auto solve_mod_n(const IntMatrix & a, std::span<const std::int64_t> b, std::int64_t n) -> IntSolveResult
{
    if (n == 1 || n < 0)
        throw Error(ErrorKind::OutOfRange, "modulus must be 0 or at least 2");
    if (b.size() != a.size())
        throw Error(ErrorKind::DimensionMismatch, "right-hand side length does not match row count");
    std::size_t rows = a.size();
    std::size_t cols = rows ? a[0].size() : 0;
    if (rows)
        check_rect(a);

    IntSolveResult result;
    if (rows == 0) {
        result.status = SolveStatus::Feasible;
        return result;
    }

    auto snf = n == 0 ? smith_normal_form(a) : smith_normal_form_mod(a, n);

    // c = U b, reduced mod n when working in Z_n.
    std::vector<std::int64_t> c(rows, 0);
    for (std::size_t i = 0; i < rows; ++i) {
        __int128 acc = 0;
        for (std::size_t j = 0; j < rows; ++j) {
            acc += static_cast<__int128>(snf.u[i][j]) * b[j];
            if (n != 0)
                acc %= n;
        }
        if (n != 0) {
            acc %= n;
            if (acc < 0)
                acc += n;
        }
        else if (acc > INT64_MAX || acc < INT64_MIN)
            throw Error(ErrorKind::Overflow, "transformed right-hand side exceeds 64 bits");
        c[i] = static_cast<std::int64_t>(acc);
    }

    std::vector<std::int64_t> y(cols, 0);
    for (std::size_t i = 0; i < rows; ++i) {
        std::int64_t d = i < cols ? snf.s[i][i] : 0;
        if (d == 0) {
            if (c[i] != 0)
                return result;
            continue;
        }
        if (c[i] % d != 0)
            return result;
        y[i] = c[i] / d;
    }

    result.status = SolveStatus::Feasible;
    result.particular.assign(cols, 0);
    for (std::size_t i = 0; i < cols; ++i) {
        __int128 acc = 0;
        for (std::size_t j = 0; j < cols; ++j) {
            acc += static_cast<__int128>(snf.v[i][j]) * y[j];
            if (n != 0)
                acc %= n;
        }
        if (n != 0) {
            acc %= n;
            if (acc < 0)
                acc += n;
        }
        else if (acc > INT64_MAX || acc < INT64_MIN)
            throw Error(ErrorKind::Overflow, "solution entry exceeds 64 bits");
        result.particular[i] = static_cast<std::int64_t>(acc);
    }
    return result;
}

}
