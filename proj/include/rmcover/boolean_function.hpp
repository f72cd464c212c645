#pragma once

// Boolean functions on F_2^m as truth tables and ANF coefficient vectors.
//
// Bit i of a truth table is f(x) where x_j is bit j-1 of i (x_1 is the least
// significant bit). Bit S of an ANF vector is the coefficient of the monomial
// prod_{j-1 in S} x_j.

#include <bit>
#include <climits>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "rmcover/bit_vector.hpp"
#include "rmcover/group.hpp"

namespace rmcover {

namespace detail {

// Positions whose bit j is clear, for in-word butterflies.
inline constexpr Word kLowHalf[6] = {
    0x5555555555555555ULL, 0x3333333333333333ULL, 0x0f0f0f0f0f0f0f0fULL,
    0x00ff00ff00ff00ffULL, 0x0000ffff0000ffffULL, 0x00000000ffffffffULL,
};

inline void mobius_in_place(std::span<Word> w, int m) {
    const int inner = m < 6 ? m : 6;
    for (Word& x : w)
        for (int j = 0; j < inner; ++j) x ^= (x & kLowHalf[j]) << (1U << j);
    for (int j = 6; j < m; ++j) {
        const std::size_t d = std::size_t{1} << (j - 6);
        for (std::size_t k = 0; k < w.size(); ++k)
            if (k & d) w[k] ^= w[k ^ d];
    }
}

}  // namespace detail

class BooleanFunction {
public:
    BooleanFunction() = default;
    explicit BooleanFunction(int m) : m_(m), tt_((check_dimension(m), std::size_t{1} << m)) {}
    BooleanFunction(int m, BitVector truth_table) : m_(m), tt_(std::move(truth_table)) {
        check_dimension(m);
        if (tt_.size() != (std::size_t{1} << m)) throw std::invalid_argument("truth table length must be 2^m");
    }

    static BooleanFunction constant(int m, bool value) {
        BooleanFunction f(m);
        if (value)
            for (std::size_t x = 0; x < f.size(); ++x) f.tt_.set(x);
        return f;
    }
    /// The coordinate function x_{j+1}.
    static BooleanFunction coordinate(int m, int j) {
        BooleanFunction f(m);
        for (std::size_t x = 0; x < f.size(); ++x)
            if ((x >> j) & 1U) f.tt_.set(x);
        return f;
    }

    [[nodiscard]] int vars() const noexcept { return m_; }
    [[nodiscard]] std::size_t size() const noexcept { return tt_.size(); }
    [[nodiscard]] const BitVector& truth_table() const noexcept { return tt_; }
    [[nodiscard]] BitVector& truth_table() noexcept { return tt_; }

    [[nodiscard]] bool operator()(Point x) const noexcept { return tt_.get(x); }
    void set(Point x, bool value = true) noexcept { tt_.set(x, value); }

    BooleanFunction& operator^=(const BooleanFunction& g) {
        if (g.m_ != m_) throw std::invalid_argument("BooleanFunction: variable count mismatch");
        tt_ ^= g.tt_;
        return *this;
    }
    friend BooleanFunction operator^(BooleanFunction f, const BooleanFunction& g) { return f ^= g; }
    friend bool operator==(const BooleanFunction&, const BooleanFunction&) = default;

private:
    int m_ = 0;
    BitVector tt_;
};

class AnfPolynomial {
public:
    AnfPolynomial() = default;
    explicit AnfPolynomial(int m) : m_(m), coeffs_((check_dimension(m), std::size_t{1} << m)) {}
    AnfPolynomial(int m, BitVector coeffs) : m_(m), coeffs_(std::move(coeffs)) {
        check_dimension(m);
        if (coeffs_.size() != (std::size_t{1} << m)) throw std::invalid_argument("ANF length must be 2^m");
    }

    static AnfPolynomial monomial(int m, Point mask) {
        AnfPolynomial p(m);
        p.coeffs_.set(mask);
        return p;
    }

    [[nodiscard]] int vars() const noexcept { return m_; }
    [[nodiscard]] const BitVector& coefficients() const noexcept { return coeffs_; }
    [[nodiscard]] BitVector& coefficients() noexcept { return coeffs_; }
    [[nodiscard]] bool coefficient(Point mask) const noexcept { return coeffs_.get(mask); }
    void set_coefficient(Point mask, bool value = true) noexcept { coeffs_.set(mask, value); }
    [[nodiscard]] bool is_zero() const noexcept { return coeffs_.none(); }

    /// Set monomial masks in ascending order.
    [[nodiscard]] std::vector<Point> monomials() const {
        std::vector<Point> out;
        auto w = coeffs_.words();
        for (std::size_t k = 0; k < w.size(); ++k)
            for (Word bits = w[k]; bits != 0; bits &= bits - 1)
                out.push_back(static_cast<Point>(k * kWordBits + static_cast<std::size_t>(std::countr_zero(bits))));
        return out;
    }

    AnfPolynomial& operator^=(const AnfPolynomial& g) {
        if (g.m_ != m_) throw std::invalid_argument("AnfPolynomial: variable count mismatch");
        coeffs_ ^= g.coeffs_;
        return *this;
    }
    friend AnfPolynomial operator^(AnfPolynomial f, const AnfPolynomial& g) { return f ^= g; }
    friend bool operator==(const AnfPolynomial&, const AnfPolynomial&) = default;

private:
    int m_ = 0;
    BitVector coeffs_;
};

struct DegreeInfo {
    static constexpr int kNegInfinity = INT_MIN;
    static constexpr int kInfinity = INT_MAX;

    int degree = kNegInfinity;
    int valuation = kInfinity;

    [[nodiscard]] bool is_zero() const noexcept { return degree == kNegInfinity; }
    friend bool operator==(const DegreeInfo&, const DegreeInfo&) = default;
};

/// Binary Moebius transform; maps truth tables to ANF and back.
inline BitVector mobius_transform(BitVector v, int m) {
    check_dimension(m);
    if (v.size() != (std::size_t{1} << m)) throw std::invalid_argument("mobius_transform: length must be 2^m");
    detail::mobius_in_place(v.words(), m);
    return v;
}

inline AnfPolynomial to_anf(const BooleanFunction& f) {
    return {f.vars(), mobius_transform(f.truth_table(), f.vars())};
}

inline BooleanFunction to_function(const AnfPolynomial& p) {
    return {p.vars(), mobius_transform(p.coefficients(), p.vars())};
}

[[nodiscard]] inline std::size_t weight(const BooleanFunction& f) noexcept { return f.truth_table().popcount(); }

inline DegreeInfo degree_valuation(const AnfPolynomial& p) {
    DegreeInfo info;
    auto w = p.coefficients().words();
    for (std::size_t k = 0; k < w.size(); ++k)
        for (Word bits = w[k]; bits != 0; bits &= bits - 1) {
            const auto mask = static_cast<Point>(k * kWordBits + static_cast<std::size_t>(std::countr_zero(bits)));
            const int d = std::popcount(mask);
            if (info.degree == DegreeInfo::kNegInfinity || d > info.degree) info.degree = d;
            if (d < info.valuation) info.valuation = d;
        }
    return info;
}

inline int degree(const AnfPolynomial& p) { return degree_valuation(p).degree; }
inline int degree(const BooleanFunction& f) { return degree_valuation(to_anf(f)).degree; }

/// Indicator of the single point a.
inline BooleanFunction dirac(Point a, int m) {
    BooleanFunction f(m);
    if ((a & ~point_mask(m)) != 0) throw std::invalid_argument("dirac: point out of range");
    f.set(a);
    return f;
}

/// (f o s)(x) = f(A x + a).
inline BooleanFunction apply_affine(const BooleanFunction& f, const AffineTransformation& s) {
    if (s.dim() != f.vars()) throw std::invalid_argument("apply_affine: dimension mismatch");
    const std::vector<Point> img = s.point_images();
    BooleanFunction g(f.vars());
    for (std::size_t x = 0; x < img.size(); ++x)
        if (f(img[x])) g.set(static_cast<Point>(x));
    return g;
}

/// der(f,v)(x) = f(x+v) + f(x).
inline BooleanFunction derivative(const BooleanFunction& f, Point v) {
    const int m = f.vars();
    if ((v & ~point_mask(m)) != 0) throw std::invalid_argument("derivative: direction out of range");
    BooleanFunction g(m);
    if (v == 0) return g;
    // A shift touching only word-index bits permutes whole words.
    const std::size_t low = v & 63U;
    auto src = f.truth_table().words();
    auto dst = g.truth_table().words();
    if (low == 0 && m > 6) {
        const std::size_t dw = v >> 6;
        for (std::size_t k = 0; k < src.size(); ++k) dst[k] = src[k] ^ src[k ^ dw];
        return g;
    }
    for (std::size_t x = 0; x < f.size(); ++x)
        if (f(static_cast<Point>(x)) != f(static_cast<Point>(x ^ v))) g.set(static_cast<Point>(x));
    return g;
}

[[nodiscard]] inline bool is_periodic(const BooleanFunction& f, Point v) { return derivative(f, v).truth_table().none(); }

/// Pivot coordinate of the canonical complement E_v: the highest set bit of v.
[[nodiscard]] inline int restriction_pivot(Point v) noexcept { return 31 - std::countl_zero(v); }

/// Restriction of a v-periodic f to E_v = span{e_j : j != pivot(v)}, with the
/// remaining coordinates renumbered in ascending order.
inline BooleanFunction restrict_periodic(const BooleanFunction& f, Point v) {
    const int m = f.vars();
    if (m < 2) throw std::invalid_argument("restrict: need at least two variables");
    if (v == 0) throw std::invalid_argument("restrict: zero direction");
    if (!is_periodic(f, v)) throw std::invalid_argument("restrict: function is not periodic in the direction");
    const int pivot = restriction_pivot(v);
    const Point low = (Point{1} << pivot) - 1;
    BooleanFunction r(m - 1);
    for (Point y = 0; y < (Point{1} << (m - 1)); ++y) {
        const Point x = (y & low) | ((y & ~low) << 1);
        if (f(x)) r.set(y);
    }
    return r;
}

}  // namespace rmcover
