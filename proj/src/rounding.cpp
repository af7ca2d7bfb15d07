#include <lcr/error.hpp>
#include <lcr/rounding.hpp>

namespace lcr {

namespace {

    // C(n, r) mod p for n < p, so r! is invertible.
    auto small_binomial(std::uint64_t n, std::uint64_t r, std::uint32_t p) -> std::uint64_t
    {
        if (r > n)
            return 0;
        std::uint64_t num = 1, den = 1;
        for (std::uint64_t i = 0; i < r; ++i) {
            num = num * ((n - i) % p) % p;
            den = den * ((i + 1) % p) % p;
        }
        return num * inverse_mod(den, p) % p;
    }

}

auto carry_polynomial(std::uint32_t p, std::uint32_t a, std::uint32_t b) -> Residue
{
    if (! is_prime(p))
        throw Error(ErrorKind::NonPrimeModulus, std::to_string(p) + " is not prime");
    if (a >= p || b >= p)
        throw Error(ErrorKind::OutOfRange, "carry arguments must lie in [0, p)");
    // The j = 0 and j = p terms vanish since a, b < p.
    std::uint64_t sum = 0;
    for (std::uint32_t j = 1; j < p; ++j)
        sum += small_binomial(a, j, p) * small_binomial(b, p - j, p) % p;
    return static_cast<Residue>(sum % p);
}

auto round_to_zp2(const VectorObject & o) -> ZnTuple
{
    if (o.k != o.p)
        throw Error(ErrorKind::LevelMismatch, "rounding to Z_{p^2} needs level k = p");
    std::int64_t q = std::int64_t{o.p} * o.p;
    auto w = [&](const ResidueVec & v) {
        std::int64_t s = 0;
        for (auto x : v)
            s = (s + x) % q;
        return s;
    };
    auto inv = static_cast<std::int64_t>(inverse_mod(static_cast<std::uint64_t>(o.n % q), static_cast<std::uint64_t>(q)));
    ZnTuple out{q, {}};
    for (const auto & v : o.v)
        out.values.push_back(w(v) * inv % q);
    return out;
}

auto zn_minor(const ZnTuple & t, const std::vector<std::uint32_t> & alpha, std::uint32_t codomain) -> ZnTuple
{
    if (alpha.size() != t.values.size())
        throw Error(ErrorKind::LengthMismatch, "map table does not match the domain");
    ZnTuple out{t.n, std::vector<std::int64_t>(codomain, 0)};
    for (std::size_t a = 0; a < alpha.size(); ++a) {
        if (alpha[a] >= codomain)
            throw Error(ErrorKind::OutOfRange, "map value outside the codomain");
        out.values[alpha[a]] = (out.values[alpha[a]] + t.values[a]) % t.n;
    }
    return out;
}

auto round_vector_solution(const VectorSolution & s) -> ZnSolution
{
    ZnSolution out;
    out.n = std::int64_t{s.p} * s.p;
    for (std::uint32_t x = 0; x < s.vectors.size(); ++x)
        out.values.push_back(round_to_zp2(s.object(x)).values);
    return out;
}

auto round_level_solution(const LcInstance & d, const TensorSolution & t) -> ZnSolution
{
    if (t.k != t.p)
        throw Error(ErrorKind::LevelMismatch, "rounding to Z_{p^2} needs level k = p");
    ZnSolution out;
    out.n = std::int64_t{t.p} * t.p;
    out.values.resize(d.variables.size());
    for (const auto & comp : connected_components(d)) {
        auto sub = induced_subinstance(d, comp);
        auto s = extract_vectors(sub, restrict_tensor(t, comp));
        auto z = round_vector_solution(s);
        for (std::size_t i = 0; i < comp.size(); ++i)
            out.values[comp[i]] = std::move(z.values[i]);
    }
    return out;
}

auto decode_affine(const CspInstance & csp, const ZnSolution & s) -> std::vector<std::int64_t>
{
    auto n = s.n;
    if (n < 2 || s.values.size() < csp.variables.size())
        throw Error(ErrorKind::DomainMismatch, "solution does not cover the CSP variables");
    std::vector<std::int64_t> out;
    for (std::size_t x = 0; x < csp.variables.size(); ++x) {
        const auto & dom = csp.variables[x].domain;
        if (dom.size() != static_cast<std::size_t>(n) || s.values[x].size() != dom.size())
            throw Error(ErrorKind::DomainMismatch, "domain of " + csp.variables[x].name + " is not Z_n");
        __int128 v = 0;
        for (std::int64_t a = 0; a < n; ++a) {
            if (! dom[a].is_number_integer() || dom[a].get<std::int64_t>() != a)
                throw Error(ErrorKind::DomainMismatch, "domain of " + csp.variables[x].name + " is not 0, ..., n-1");
            v += static_cast<__int128>(s.values[x][a]) * a;
        }
        auto r = static_cast<std::int64_t>(v % n);
        out.push_back(r < 0 ? r + n : r);
    }
    return out;
}

}
