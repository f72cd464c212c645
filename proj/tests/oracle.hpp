#pragma once

// Slow reference implementations on plain byte vectors. Nothing here calls
// into the library except the conversions at the bottom.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstdlib>
#include <random>
#include <set>
#include <vector>

#include "rmcover/boolean_function.hpp"
#include "rmcover/group.hpp"
#include "rmcover/quotient.hpp"

namespace oracle {

using Table = std::vector<std::uint8_t>;  // one entry per point, 0 or 1

// anf[S] = XOR of f(T) over T subset of S.
inline Table anf(const Table& f) {
    Table c(f.size());
    for (std::size_t s = 0; s < f.size(); ++s) {
        std::uint8_t acc = 0;
        for (std::size_t t = s;; t = (t - 1) & s) {
            acc ^= f[t];
            if (t == 0) break;
        }
        c[s] = acc;
    }
    return c;
}

inline Table eval(const Table& coeffs) {
    Table f(coeffs.size());
    for (std::size_t x = 0; x < f.size(); ++x)
        for (std::size_t s = 0; s < coeffs.size(); ++s)
            if (coeffs[s] && (s & x) == s) f[x] ^= 1;
    return f;
}

inline int degree(const Table& f) {
    const Table c = anf(f);
    int d = -1;
    for (std::size_t s = 0; s < c.size(); ++s)
        if (c[s]) d = std::max(d, std::popcount(s));
    return d;
}

// Valuation of the ANF; 1000 for the zero function.
inline int valuation(const Table& f) {
    const Table c = anf(f);
    int v = 1000;
    for (std::size_t s = 0; s < c.size(); ++s)
        if (c[s]) v = std::min(v, std::popcount(s));
    return v;
}

struct Affine {
    int m = 0;
    std::vector<std::uint32_t> rows;  // row i: bit j is A[i][j]
    std::uint32_t shift = 0;

    std::uint32_t operator()(std::uint32_t x) const {
        std::uint32_t y = 0;
        for (int i = 0; i < m; ++i)
            if (std::popcount(rows[i] & x) & 1) y |= 1U << i;
        return y ^ shift;
    }
};

inline int rank(std::vector<std::uint32_t> rows) {
    int r = 0;
    for (int bit = 0; bit < 32; ++bit) {
        auto it = std::find_if(rows.begin() + r, rows.end(), [&](std::uint32_t v) { return (v >> bit) & 1; });
        if (it == rows.end()) continue;
        std::iter_swap(rows.begin() + r, it);
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (static_cast<int>(i) != r && ((rows[i] >> bit) & 1)) rows[i] ^= rows[r];
        ++r;
    }
    return r;
}

// Every invertible m x m matrix, by exhaustive search.
inline std::vector<std::vector<std::uint32_t>> all_gl(int m) {
    std::vector<std::vector<std::uint32_t>> out;
    const std::uint64_t total = std::uint64_t{1} << (m * m);
    for (std::uint64_t code = 0; code < total; ++code) {
        std::vector<std::uint32_t> rows(m);
        for (int i = 0; i < m; ++i) rows[i] = static_cast<std::uint32_t>((code >> (i * m)) & ((1U << m) - 1));
        if (rank(rows) == m) out.push_back(rows);
    }
    return out;
}

inline std::vector<Affine> all_agl(int m) {
    std::vector<Affine> out;
    for (const auto& rows : all_gl(m))
        for (std::uint32_t a = 0; a < (1U << m); ++a) out.push_back({m, rows, a});
    return out;
}

// (f o s)(x) = f(s(x)).
inline Table compose(const Table& f, const Affine& s) {
    Table g(f.size());
    for (std::uint32_t x = 0; x < f.size(); ++x) g[x] = f[s(x)];
    return g;
}

// Drops monomials of degree outside [lo, hi].
inline Table keep_degrees(const Table& coeffs, int lo, int hi) {
    Table c = coeffs;
    for (std::size_t s = 0; s < c.size(); ++s)
        if (std::popcount(s) < lo || std::popcount(s) > hi) c[s] = 0;
    return c;
}

inline int weight(const Table& f) {
    int w = 0;
    for (auto b : f) w += b;
    return w;
}

inline std::vector<std::int64_t> walsh(const Table& f) {
    std::vector<std::int64_t> w(f.size());
    for (std::size_t b = 0; b < f.size(); ++b) {
        std::int64_t acc = 0;
        for (std::size_t x = 0; x < f.size(); ++x) acc += ((f[x] + std::popcount(b & x)) & 1) ? -1 : 1;
        w[b] = acc;
    }
    return w;
}

// Distance from f to RM(k,m) by enumerating every codeword.
inline int nl(int k, const Table& f) {
    const std::size_t n = f.size();
    std::vector<std::size_t> monos;
    for (std::size_t s = 0; s < n; ++s)
        if (std::popcount(s) <= k) monos.push_back(s);
    int best = static_cast<int>(n);
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << monos.size()); ++code) {
        Table c(n);
        for (std::size_t i = 0; i < monos.size(); ++i)
            if ((code >> i) & 1) c[monos[i]] = 1;
        const Table g = eval(c);
        int d = 0;
        for (std::size_t x = 0; x < n; ++x) d += f[x] != g[x];
        best = std::min(best, d);
        if (best == 0) break;
    }
    return best;
}

// Library conversions.

inline Table table_of(const rmcover::BooleanFunction& f) {
    Table t(f.size());
    for (std::uint32_t x = 0; x < f.size(); ++x) t[x] = f(x) ? 1 : 0;
    return t;
}

inline rmcover::BooleanFunction function_of(const Table& t, int m) {
    rmcover::BooleanFunction f(m);
    for (std::uint32_t x = 0; x < t.size(); ++x)
        if (t[x]) f.set(x);
    return f;
}

inline rmcover::AffineTransformation affine_of(const Affine& s) {
    return rmcover::AffineTransformation(rmcover::LinearMap::from_rows(s.m, s.rows), s.shift);
}

inline Affine affine_from(const rmcover::AffineTransformation& s) {
    Affine a{s.dim(), {}, s.translation()};
    for (int i = 0; i < s.dim(); ++i) a.rows.push_back(s.linear().row(i));
    return a;
}

inline rmcover::BooleanFunction random_function(int m, std::mt19937_64& rng) {
    rmcover::BooleanFunction f(m);
    for (std::uint32_t x = 0; x < f.size(); ++x)
        if (rng() & 1) f.set(x);
    return f;
}

// A random element of B(s,t,m) as a reduced polynomial.
inline rmcover::QuotientFunction random_quotient(const rmcover::SpaceParams& p, std::mt19937_64& rng) {
    rmcover::AnfPolynomial a(p.m);
    for (std::uint32_t mask = 0; mask < (1U << p.m); ++mask)
        if (p.contains_degree(std::popcount(mask)) && (rng() & 1)) a.coefficients().set(mask);
    return rmcover::QuotientFunction(p, a);
}

}  // namespace oracle
