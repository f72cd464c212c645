#pragma once

// AGL(m,2) arithmetic. A point of F_2^m is a Point whose bit j-1 holds x_j.
// Matrices are stored as row masks: bit j of row i is A[i][j], so A*x has
// bit i equal to parity(row_i & x).

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "rmcover/error.hpp"

namespace rmcover {

using Point = std::uint32_t;
using Rng = std::mt19937_64;
inline constexpr int kMaxVars = 16;

/// Group orders overflow 64 bits from AGL(8,2) on.
using GroupOrder = unsigned __int128;

inline std::string to_string(GroupOrder n) {
    if (n == 0) return "0";
    std::string out;
    while (n != 0) {
        out.insert(out.begin(), static_cast<char>('0' + static_cast<int>(n % 10)));
        n /= 10;
    }
    return out;
}

[[nodiscard]] inline bool parity(Point x) noexcept { return (std::popcount(x) & 1) != 0; }

inline void check_dimension(int m) {
    if (m < 1 || m > kMaxVars)
        throw std::invalid_argument("variable count must be in 1.." + std::to_string(kMaxVars));
}

[[nodiscard]] inline Point point_mask(int m) noexcept {
    return m >= 32 ? ~Point{0} : (Point{1} << m) - 1;
}

/// m x m matrix over GF(2), not necessarily invertible.
class LinearMap {
public:
    LinearMap() = default;
    explicit LinearMap(int m) : m_(m) { check_dimension(m); }

    static LinearMap identity(int m) {
        LinearMap a(m);
        for (int i = 0; i < m; ++i) a.rows_[i] = Point{1} << i;
        return a;
    }
    static LinearMap from_rows(int m, std::span<const Point> rows) {
        if (static_cast<int>(rows.size()) != m) throw std::invalid_argument("LinearMap: row count mismatch");
        for (Point r : rows)
            if ((r & ~point_mask(m)) != 0) throw std::invalid_argument("LinearMap: row mask out of range");
        LinearMap a(m);
        std::copy(rows.begin(), rows.end(), a.rows_.begin());
        return a;
    }
    /// Builds the matrix whose j-th column is cols[j], i.e. the map e_j -> cols[j].
    static LinearMap from_columns(int m, std::span<const Point> cols) {
        if (static_cast<int>(cols.size()) != m) throw std::invalid_argument("LinearMap: column count mismatch");
        LinearMap a(m);
        for (int j = 0; j < m; ++j) {
            if ((cols[j] & ~point_mask(m)) != 0) throw std::invalid_argument("LinearMap: column out of range");
            for (int i = 0; i < m; ++i)
                if ((cols[j] >> i) & 1U) a.rows_[i] |= Point{1} << j;
        }
        return a;
    }

    [[nodiscard]] int dim() const noexcept { return m_; }
    [[nodiscard]] Point row(int i) const noexcept { return rows_[i]; }
    [[nodiscard]] std::span<const Point> rows() const noexcept { return {rows_.data(), static_cast<std::size_t>(m_)}; }
    [[nodiscard]] bool entry(int i, int j) const noexcept { return (rows_[i] >> j) & 1U; }

    [[nodiscard]] Point column(int j) const noexcept {
        Point c = 0;
        for (int i = 0; i < m_; ++i) c |= ((rows_[i] >> j) & 1U) << i;
        return c;
    }

    [[nodiscard]] Point apply(Point x) const noexcept {
        Point y = 0;
        for (int i = 0; i < m_; ++i) y |= static_cast<Point>(parity(rows_[i] & x)) << i;
        return y;
    }

    [[nodiscard]] LinearMap transpose() const {
        LinearMap t(m_);
        for (int j = 0; j < m_; ++j) t.rows_[j] = column(j);
        return t;
    }

    [[nodiscard]] int rank() const noexcept {
        std::array<Point, kMaxVars> r = rows_;
        int rank = 0;
        for (int col = 0; col < m_ && rank < m_; ++col) {
            const Point bit = Point{1} << col;
            int pivot = -1;
            for (int i = rank; i < m_; ++i)
                if (r[i] & bit) {
                    pivot = i;
                    break;
                }
            if (pivot < 0) continue;
            std::swap(r[rank], r[pivot]);
            for (int i = 0; i < m_; ++i)
                if (i != rank && (r[i] & bit)) r[i] ^= r[rank];
            ++rank;
        }
        return rank;
    }
    [[nodiscard]] bool invertible() const noexcept { return rank() == m_; }

    /// Gauss-Jordan inverse; empty when singular.
    [[nodiscard]] std::optional<LinearMap> inverse() const {
        std::array<Point, kMaxVars> r = rows_;
        LinearMap inv = identity(m_);
        for (int col = 0; col < m_; ++col) {
            const Point bit = Point{1} << col;
            int pivot = -1;
            for (int i = col; i < m_; ++i)
                if (r[i] & bit) {
                    pivot = i;
                    break;
                }
            if (pivot < 0) return std::nullopt;
            std::swap(r[col], r[pivot]);
            std::swap(inv.rows_[col], inv.rows_[pivot]);
            for (int i = 0; i < m_; ++i)
                if (i != col && (r[i] & bit)) {
                    r[i] ^= r[col];
                    inv.rows_[i] ^= inv.rows_[col];
                }
        }
        return inv;
    }

    /// Matrix product: (a*b)(x) = a(b(x)).
    friend LinearMap operator*(const LinearMap& a, const LinearMap& b) {
        if (a.m_ != b.m_) throw std::invalid_argument("LinearMap: dimension mismatch");
        LinearMap c(a.m_);
        for (int i = 0; i < a.m_; ++i) {
            Point acc = 0;
            for (int k = 0; k < a.m_; ++k)
                if ((a.rows_[i] >> k) & 1U) acc ^= b.rows_[k];
            c.rows_[i] = acc;
        }
        return c;
    }

    friend bool operator==(const LinearMap&, const LinearMap&) = default;

private:
    int m_ = 0;
    std::array<Point, kMaxVars> rows_{};
};

/// Element x -> A x + a of AGL(m,2).
class AffineTransformation {
public:
    AffineTransformation() = default;
    AffineTransformation(LinearMap linear, Point translation)
        : linear_(linear), translation_(translation) {
        if (linear_.dim() == 0) throw std::invalid_argument("AffineTransformation: empty linear part");
        if ((translation_ & ~point_mask(linear_.dim())) != 0)
            throw std::invalid_argument("AffineTransformation: translation out of range");
        if (!linear_.invertible()) throw std::invalid_argument("AffineTransformation: singular linear part");
    }

    static AffineTransformation identity(int m) { return {LinearMap::identity(m), 0}; }
    static AffineTransformation translation_by(int m, Point a) { return {LinearMap::identity(m), a}; }

    [[nodiscard]] int dim() const noexcept { return linear_.dim(); }
    [[nodiscard]] const LinearMap& linear() const noexcept { return linear_; }
    [[nodiscard]] Point translation() const noexcept { return translation_; }

    [[nodiscard]] Point operator()(Point x) const noexcept { return linear_.apply(x) ^ translation_; }

    /// Table of s(x) for every x in F_2^m.
    [[nodiscard]] std::vector<Point> point_images() const {
        const int m = dim();
        std::vector<Point> img(std::size_t{1} << m);
        std::array<Point, kMaxVars> cols{};
        for (int j = 0; j < m; ++j) cols[j] = linear_.column(j);
        img[0] = translation_;
        for (std::size_t x = 1; x < img.size(); ++x) {
            const int low = std::countr_zero(x);
            img[x] = img[x & (x - 1)] ^ cols[low];
        }
        return img;
    }

    [[nodiscard]] bool is_identity() const noexcept {
        return translation_ == 0 && linear_ == LinearMap::identity(dim());
    }

    friend bool operator==(const AffineTransformation&, const AffineTransformation&) = default;

private:
    LinearMap linear_;
    Point translation_ = 0;
};

struct AffineHash {
    std::size_t operator()(const AffineTransformation& s) const noexcept {
        std::uint64_t h = 0x84222325cbf29ce4ULL ^ static_cast<std::uint64_t>(s.dim());
        for (Point r : s.linear().rows()) h = (h ^ r) * 0x100000001b3ULL;
        h = (h ^ s.translation()) * 0x100000001b3ULL;
        return static_cast<std::size_t>(h);
    }
};

/// compose(s1, s2)(x) = s1(s2(x)).
inline AffineTransformation compose(const AffineTransformation& s1, const AffineTransformation& s2) {
    if (s1.dim() != s2.dim()) throw std::invalid_argument("compose: dimension mismatch");
    return {s1.linear() * s2.linear(), s1.linear().apply(s2.translation()) ^ s1.translation()};
}

inline AffineTransformation invert(const AffineTransformation& s) {
    LinearMap inv = *s.linear().inverse();
    return {inv, inv.apply(s.translation())};
}

/// Uniform invertible linear part by rejection, uniform translation.
inline AffineTransformation random_affine(int m, Rng& rng) {
    check_dimension(m);
    const Point mask = point_mask(m);
    std::array<Point, kMaxVars> rows{};
    for (;;) {
        for (int i = 0; i < m; ++i) rows[i] = static_cast<Point>(rng()) & mask;
        LinearMap a = LinearMap::from_rows(m, std::span<const Point>(rows.data(), static_cast<std::size_t>(m)));
        if (a.invertible()) return {a, static_cast<Point>(rng()) & mask};
    }
}

/// x -> x + theta(x) v, with theta(x) = parity(theta & x). Requires theta(v) = 0.
inline AffineTransformation transvection(int m, Point v, Point theta) {
    check_dimension(m);
    if (v == 0) throw std::invalid_argument("transvection: zero direction");
    if (((v | theta) & ~point_mask(m)) != 0) throw std::invalid_argument("transvection: argument out of range");
    if (parity(theta & v)) throw std::invalid_argument("transvection: direction not in the kernel of the form");
    LinearMap a = LinearMap::identity(m);
    std::array<Point, kMaxVars> rows{};
    for (int i = 0; i < m; ++i) rows[i] = a.row(i) ^ (((v >> i) & 1U) ? theta : 0);
    return {LinearMap::from_rows(m, std::span<const Point>(rows.data(), static_cast<std::size_t>(m))), 0};
}

/// Generators of AGL(m,2): x_i += x_{i+1} for every adjacent pair, the cyclic
/// coordinate shift e_j -> e_{j+1}, and translation by e_1.
inline std::vector<AffineTransformation> agl_generators(int m) {
    check_dimension(m);
    std::vector<AffineTransformation> gens;
    for (int i = 0; i + 1 < m; ++i) gens.push_back(transvection(m, Point{1} << i, Point{1} << (i + 1)));
    if (m >= 2) {
        std::array<Point, kMaxVars> cols{};
        for (int j = 0; j < m; ++j) cols[j] = Point{1} << ((j + 1) % m);
        gens.emplace_back(LinearMap::from_columns(m, std::span<const Point>(cols.data(), static_cast<std::size_t>(m))), 0);
    }
    gens.push_back(AffineTransformation::translation_by(m, 1));
    return gens;
}

[[nodiscard]] inline GroupOrder gl_order(int m) {
    GroupOrder n = 1;
    const GroupOrder q = GroupOrder{1} << m;
    for (int i = 0; i < m; ++i) n *= q - (GroupOrder{1} << i);
    return n;
}

[[nodiscard]] inline GroupOrder agl_order(int m) { return gl_order(m) << m; }

/// Recovers the linear part A from a map A* satisfying Fh(f')(A* b) = Fh(f)(b),
/// where f' = f o (A, a). With the pairing b.v the adjoint of A is its
/// transpose, so A = transpose(A*).
inline LinearMap linear_part_from_adjoint(const LinearMap& astar) {
    if (!astar.invertible()) throw std::invalid_argument("linear_part_from_adjoint: singular map");
    return astar.transpose();
}

}  // namespace rmcover
