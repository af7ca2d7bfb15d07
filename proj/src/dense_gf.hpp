#pragma once

// Dense row storage and Gauss-Jordan elimination over GF(p).
// GF(2) rows are bit-packed 64 columns per word; other primes use one byte per entry up to
// 251 and 32-bit entries beyond that.

#include <lcr/modular_linalg.hpp>

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <vector>

namespace lcr::detail {

class Gf2Rows {
public:
    Gf2Rows(std::size_t rows, std::size_t cols) :
        _rows(rows), _cols(cols), _words((cols + 63) / 64), _data(rows * _words, 0)
    {
    }

    auto rows() const -> std::size_t { return _rows; }
    auto cols() const -> std::size_t { return _cols; }
    auto modulus() const -> std::uint32_t { return 2; }

    auto get(std::size_t r, std::size_t c) const -> Residue
    {
        return (_data[r * _words + c / 64] >> (c % 64)) & 1;
    }

    auto set(std::size_t r, std::size_t c, Residue v) -> void
    {
        auto & w = _data[r * _words + c / 64];
        std::uint64_t bit = std::uint64_t{1} << (c % 64);
        if (v & 1)
            w |= bit;
        else
            w &= ~bit;
    }

    auto swap_rows(std::size_t a, std::size_t b) -> void
    {
        if (a == b)
            return;
        std::swap_ranges(row_ptr(a), row_ptr(a) + _words, row_ptr(b));
    }

    // Pivot is always 1 in GF(2).
    auto normalize(std::size_t, std::size_t) -> void {}

    // row target -= row[target][c] * row source, assuming row source has a 1 at column c.
    auto eliminate(std::size_t target, std::size_t source, std::size_t c) -> void
    {
        auto * t = row_ptr(target);
        const auto * s = row_ptr(source);
        for (std::size_t w = c / 64; w < _words; ++w)
            t[w] ^= s[w];
    }

    // First row in [from, rows) with a nonzero entry in column c, or rows().
    auto find_pivot(std::size_t from, std::size_t c) const -> std::size_t
    {
        std::size_t word = c / 64;
        std::uint64_t bit = std::uint64_t{1} << (c % 64);
        for (std::size_t r = from; r < _rows; ++r)
            if (_data[r * _words + word] & bit)
                return r;
        return _rows;
    }

private:
    auto row_ptr(std::size_t r) -> std::uint64_t * { return _data.data() + r * _words; }
    auto row_ptr(std::size_t r) const -> const std::uint64_t * { return _data.data() + r * _words; }

    std::size_t _rows, _cols, _words;
    std::vector<std::uint64_t> _data;
};

template <std::uint32_t P, typename T>
inline auto axpy_fixed(T * dst, const T * src, std::uint32_t neg_factor, std::size_t n) -> void
{
    for (std::size_t j = 0; j < n; ++j)
        dst[j] = static_cast<T>((std::uint32_t{dst[j]} + neg_factor * std::uint32_t{src[j]}) % P);
}

template <typename T>
class GfpRows {
public:
    GfpRows(std::uint32_t p, std::size_t rows, std::size_t cols) :
        _p(p), _rows(rows), _cols(cols), _data(rows * cols, 0), _inverse(p < 65536 ? p : 0, 0)
    {
        for (std::uint32_t a = 1; a < _inverse.size(); ++a)
            _inverse[a] = static_cast<std::uint32_t>(inverse_mod(a, p));
    }

    auto rows() const -> std::size_t { return _rows; }
    auto cols() const -> std::size_t { return _cols; }
    auto modulus() const -> std::uint32_t { return _p; }

    auto get(std::size_t r, std::size_t c) const -> Residue { return _data[r * _cols + c]; }
    auto set(std::size_t r, std::size_t c, Residue v) -> void { _data[r * _cols + c] = static_cast<T>(v % _p); }

    auto swap_rows(std::size_t a, std::size_t b) -> void
    {
        if (a == b)
            return;
        std::swap_ranges(row_ptr(a), row_ptr(a) + _cols, row_ptr(b));
    }

    // Scale row r so that its entry at column c becomes 1.
    auto normalize(std::size_t r, std::size_t c) -> void
    {
        auto pivot = get(r, c);
        if (pivot == 1)
            return;
        std::uint64_t inv = inv_of(pivot);
        auto * row = row_ptr(r);
        for (std::size_t j = c; j < _cols; ++j)
            row[j] = static_cast<T>((std::uint64_t{row[j]} * inv) % _p);
    }

    auto eliminate(std::size_t target, std::size_t source, std::size_t c) -> void
    {
        auto factor = get(target, c);
        if (factor == 0)
            return;
        std::uint32_t neg = _p - factor;
        auto * t = row_ptr(target) + c;
        const auto * s = row_ptr(source) + c;
        std::size_t n = _cols - c;
        if constexpr (sizeof(T) == 1) {
            switch (_p) {
                case 3: axpy_fixed<3>(t, s, neg, n); return;
                case 5: axpy_fixed<5>(t, s, neg, n); return;
                case 7: axpy_fixed<7>(t, s, neg, n); return;
                default: break;
            }
        }
        for (std::size_t j = 0; j < n; ++j)
            t[j] = static_cast<T>((std::uint64_t{t[j]} + std::uint64_t{neg} * s[j]) % _p);
    }

    auto find_pivot(std::size_t from, std::size_t c) const -> std::size_t
    {
        for (std::size_t r = from; r < _rows; ++r)
            if (_data[r * _cols + c] != 0)
                return r;
        return _rows;
    }

private:
    auto inv_of(Residue a) const -> std::uint64_t
    {
        return _inverse.empty() ? inverse_mod(a, _p) : _inverse[a];
    }
    auto row_ptr(std::size_t r) -> T * { return _data.data() + r * _cols; }
    auto row_ptr(std::size_t r) const -> const T * { return _data.data() + r * _cols; }

    std::uint32_t _p;
    std::size_t _rows, _cols;
    std::vector<T> _data;
    std::vector<std::uint32_t> _inverse;
};

// Gauss-Jordan elimination on the first pivot_cols columns with first-nonzero pivoting.
// Afterwards rows [0, rank) hold the pivot rows in column order, each normalized to a
// leading 1; with reduce_above the result is in reduced row-echelon form.
// origin tracks the original index of each row through the swaps.
template <typename Rows>
auto gauss_jordan(Rows & m, std::size_t pivot_cols, bool reduce_above, std::vector<std::size_t> * origin = nullptr)
    -> std::vector<std::size_t>
{
    std::vector<std::size_t> pivots;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < pivot_cols && rank < m.rows(); ++c) {
        auto r = m.find_pivot(rank, c);
        if (r == m.rows())
            continue;
        m.swap_rows(rank, r);
        if (origin)
            std::swap((*origin)[rank], (*origin)[r]);
        m.normalize(rank, c);
        for (std::size_t i = reduce_above ? 0 : rank + 1; i < m.rows(); ++i)
            if (i != rank && m.get(i, c) != 0)
                m.eliminate(i, rank, c);
        pivots.push_back(c);
        ++rank;
    }
    return pivots;
}

// Runs f with a freshly allocated row store suitable for p.
template <typename F>
auto with_rows(std::uint32_t p, std::size_t rows, std::size_t cols, F && f)
{
    if (p == 2) {
        Gf2Rows m(rows, cols);
        return f(m);
    }
    else if (p <= 251) {
        GfpRows<std::uint8_t> m(p, rows, cols);
        return f(m);
    }
    else {
        GfpRows<std::uint32_t> m(p, rows, cols);
        return f(m);
    }
}

}
