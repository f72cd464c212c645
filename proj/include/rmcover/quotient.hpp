#pragma once

// The spaces B(s,t,m): functions of valuation >= s and degree <= t, taken
// modulo RM(s-1,m). The canonical representative of a class is its unique lift
// with no monomial of degree below s.

#include <array>
#include <bit>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rmcover/boolean_function.hpp"
#include "rmcover/error.hpp"
#include "rmcover/group.hpp"

namespace rmcover {

struct SpaceParams {
    int s = 0;
    int t = 0;
    int m = 1;

    [[nodiscard]] bool contains_degree(int d) const noexcept { return d >= s && d <= t; }
    [[nodiscard]] std::string to_string() const {
        return "(" + std::to_string(s) + "," + std::to_string(t) + "," + std::to_string(m) + ")";
    }
    friend bool operator==(const SpaceParams&, const SpaceParams&) = default;
};

inline std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    return r;
}

/// dim B(s,t,m) = sum_{i=s..t} C(m,i).
inline std::uint64_t space_dimension(const SpaceParams& p) {
    std::uint64_t d = 0;
    for (int i = p.s < 0 ? 0 : p.s; i <= p.t && i <= p.m; ++i) d += binomial(p.m, i);
    return d;
}

class QuotientFunction {
public:
    QuotientFunction() = default;
    explicit QuotientFunction(SpaceParams p) : params_(p), anf_(p.m) {}
    QuotientFunction(SpaceParams p, AnfPolynomial anf) : params_(p), anf_(std::move(anf)) {
        if (anf_.vars() != p.m) throw std::invalid_argument("QuotientFunction: variable count mismatch");
        for (Point mask : anf_.monomials())
            if (!p.contains_degree(std::popcount(mask)))
                throw std::invalid_argument("QuotientFunction: monomial outside degrees " + p.to_string());
    }

    [[nodiscard]] const SpaceParams& params() const noexcept { return params_; }
    [[nodiscard]] const AnfPolynomial& anf() const noexcept { return anf_; }
    [[nodiscard]] bool is_zero() const noexcept { return anf_.is_zero(); }
    [[nodiscard]] BooleanFunction lift() const { return to_function(anf_); }

    QuotientFunction& operator^=(const QuotientFunction& g) {
        if (!(g.params_ == params_)) throw std::invalid_argument("QuotientFunction: parameter mismatch");
        anf_ ^= g.anf_;
        return *this;
    }
    friend QuotientFunction operator^(QuotientFunction f, const QuotientFunction& g) { return f ^= g; }

    friend bool operator==(const QuotientFunction& a, const QuotientFunction& b) {
        return a.params_ == b.params_ && a.anf_ == b.anf_;
    }
    /// Key order: canonical ANF vectors compared as integers.
    friend std::strong_ordering operator<=>(const QuotientFunction& a, const QuotientFunction& b) {
        return a.anf_.coefficients() <=> b.anf_.coefficients();
    }

private:
    SpaceParams params_;
    AnfPolynomial anf_;
};

struct QuotientHash {
    std::size_t operator()(const QuotientFunction& f) const noexcept { return f.anf().coefficients().hash(); }
};

/// Reduces f modulo RM(s-1,m) into B(s,t,m).
inline QuotientFunction project(const AnfPolynomial& f, int s, int t) {
    QuotientFunction out(SpaceParams{s, t, f.vars()});
    AnfPolynomial reduced(f.vars());
    for (Point mask : f.monomials()) {
        const int d = std::popcount(mask);
        if (d > t) throw std::invalid_argument("project: degree exceeds " + std::to_string(t));
        if (d >= s) reduced.set_coefficient(mask);
    }
    return {SpaceParams{s, t, f.vars()}, std::move(reduced)};
}

inline QuotientFunction project(const BooleanFunction& f, int s, int t) { return project(to_anf(f), s, t); }

inline QuotientFunction q_apply_affine(const QuotientFunction& f, const AffineTransformation& s) {
    const SpaceParams& p = f.params();
    if (s.dim() != p.m) throw std::invalid_argument("q_apply_affine: dimension mismatch");
    return project(apply_affine(f.lift(), s), p.s, p.t);
}

/// Der(f,v) = der(f,v) mod RM(s-2,m), an element of B(s-1,t-1,m).
inline QuotientFunction quotient_derivative(const QuotientFunction& f, Point v) {
    const SpaceParams& p = f.params();
    return project(derivative(f.lift(), v), p.s - 1, p.t - 1);
}

/// f = x_m g + h with g in B(s-1,t-1,m-1) and h in B(s,t,m-1).
struct Decomposition {
    QuotientFunction g;
    QuotientFunction h;
};

inline Decomposition decompose(const QuotientFunction& f) {
    const SpaceParams& p = f.params();
    if (p.m < 2) throw std::invalid_argument("decompose: need at least two variables");
    const Point top = Point{1} << (p.m - 1);
    AnfPolynomial g(p.m - 1), h(p.m - 1);
    for (Point mask : f.anf().monomials()) {
        if (mask & top)
            g.set_coefficient(mask ^ top);
        else
            h.set_coefficient(mask);
    }
    return {QuotientFunction(SpaceParams{p.s - 1, p.t - 1, p.m - 1}, std::move(g)),
            QuotientFunction(SpaceParams{p.s, p.t, p.m - 1}, std::move(h))};
}

inline QuotientFunction compose_decomposition(const QuotientFunction& g, const QuotientFunction& h) {
    const SpaceParams& ph = h.params();
    const SpaceParams& pg = g.params();
    if (!(pg == SpaceParams{ph.s - 1, ph.t - 1, ph.m}))
        throw std::invalid_argument("compose_decomposition: parameter mismatch");
    if (ph.m + 1 > kMaxVars) throw std::invalid_argument("compose_decomposition: too many variables");
    const int m = ph.m + 1;
    const Point top = Point{1} << ph.m;
    AnfPolynomial f(m);
    for (Point mask : g.anf().monomials()) f.set_coefficient(mask | top);
    for (Point mask : h.anf().monomials()) f.set_coefficient(mask);
    return {SpaceParams{ph.s, ph.t, m}, std::move(f)};
}

/// Der(f,e_1), ..., Der(f,e_m) reduced to B(t-1,t-1,m); they span Delta(f).
inline std::vector<QuotientFunction> delta_space_basis(const QuotientFunction& f) {
    const SpaceParams& p = f.params();
    if (p.s != p.t - 1) throw std::invalid_argument("delta_space_basis: expected a space B(t-1,t,m)");
    std::vector<QuotientFunction> basis;
    const BooleanFunction lift = f.lift();
    for (int i = 0; i < p.m; ++i) basis.push_back(project(derivative(lift, Point{1} << i), p.t - 1, p.t - 1));
    return basis;
}

/// Finds a with candidate = Der(f,a) mod RM(t-2,m), if any. Any component of
/// degree t rejects the candidate; components below t-1 are ignored.
inline std::optional<Point> delta_membership(const QuotientFunction& base, const QuotientFunction& candidate) {
    const SpaceParams& p = base.params();
    if (candidate.params().m != p.m) throw std::invalid_argument("delta_membership: dimension mismatch");
    const int level = p.t - 1;
    AnfPolynomial target(p.m);
    for (Point mask : candidate.anf().monomials()) {
        const int d = std::popcount(mask);
        if (d > level) return std::nullopt;
        if (d == level) target.set_coefficient(mask);
    }
    // Echelon form keyed by highest set bit, each row remembering its combination.
    struct Row {
        BitVector v;
        Point combo;
    };
    std::vector<Row> rows;
    for (int i = 0; auto& b : delta_space_basis(base)) {
        Row r{b.anf().coefficients(), Point{1} << i++};
        for (const Row& e : rows)
            if (r.v.get(e.v.highest_set_bit())) {
                r.v ^= e.v;
                r.combo ^= e.combo;
            }
        if (r.v.none()) continue;
        const std::size_t pivot = r.v.highest_set_bit();
        for (Row& e : rows)
            if (e.v.get(pivot)) {
                e.v ^= r.v;
                e.combo ^= r.combo;
            }
        rows.push_back(std::move(r));
    }
    BitVector c = target.coefficients();
    Point a = 0;
    for (const Row& e : rows)
        if (c.get(e.v.highest_set_bit())) {
            c ^= e.v;
            a ^= e.combo;
        }
    if (c.any()) return std::nullopt;
    return a;
}

/// Coordinates on B(s,t,m): bit i of an index is the coefficient of the i-th
/// admissible monomial in ascending mask order, so index order agrees with key
/// order. Requires dim <= 63.
class QuotientSpace {
public:
    explicit QuotientSpace(SpaceParams p) : params_(p), position_(std::size_t{1} << (check_dimension(p.m), p.m), -1) {
        for (Point mask = 0; mask < (Point{1} << p.m); ++mask)
            if (p.contains_degree(std::popcount(mask))) {
                position_[mask] = static_cast<int>(monomials_.size());
                monomials_.push_back(mask);
            }
        if (monomials_.size() > 63) throw GuardError("QuotientSpace: dimension " + std::to_string(monomials_.size()) + " exceeds 63");
    }

    [[nodiscard]] const SpaceParams& params() const noexcept { return params_; }
    [[nodiscard]] int dim() const noexcept { return static_cast<int>(monomials_.size()); }
    [[nodiscard]] std::uint64_t cardinality() const noexcept { return std::uint64_t{1} << dim(); }
    [[nodiscard]] const std::vector<Point>& monomials() const noexcept { return monomials_; }

    [[nodiscard]] std::uint64_t index_of(const QuotientFunction& f) const {
        if (f.params().m != params_.m) throw std::invalid_argument("QuotientSpace: dimension mismatch");
        return index_of(f.anf());
    }
    [[nodiscard]] std::uint64_t index_of(const AnfPolynomial& p) const {
        std::uint64_t idx = 0;
        for (Point mask : p.monomials()) {
            const int pos = position_[mask];
            if (pos < 0) throw std::invalid_argument("QuotientSpace: monomial outside the space");
            idx |= std::uint64_t{1} << pos;
        }
        return idx;
    }
    [[nodiscard]] QuotientFunction element(std::uint64_t index) const {
        AnfPolynomial p(params_.m);
        for (std::uint64_t bits = index; bits != 0; bits &= bits - 1)
            p.set_coefficient(monomials_[static_cast<std::size_t>(std::countr_zero(bits))]);
        return {params_, std::move(p)};
    }

private:
    SpaceParams params_;
    std::vector<int> position_;
    std::vector<Point> monomials_;
};

/// An affine map x -> L(x) + shift on the index coordinates of a QuotientSpace,
/// evaluated through per-byte lookup tables.
class IndexAction {
public:
    IndexAction() = default;

    /// The action h -> h o s.
    IndexAction(const QuotientSpace& space, const AffineTransformation& s) : tables_(chunks(space.dim())) {
        std::vector<std::uint64_t> images;
        for (int i = 0; i < space.dim(); ++i)
            images.push_back(space.index_of(q_apply_affine(space.element(std::uint64_t{1} << i), s)));
        fill(images);
    }

    /// The translation h -> h + shift.
    static IndexAction translation(const QuotientSpace& space, std::uint64_t shift) {
        IndexAction a;
        a.tables_.resize(chunks(space.dim()));
        std::vector<std::uint64_t> images;
        for (int i = 0; i < space.dim(); ++i) images.push_back(std::uint64_t{1} << i);
        a.fill(images);
        a.shift_ = shift;
        return a;
    }

    [[nodiscard]] std::uint64_t operator()(std::uint64_t x) const noexcept {
        std::uint64_t y = shift_;
        for (std::size_t k = 0; k < tables_.size(); ++k) y ^= tables_[k][(x >> (8 * k)) & 0xffU];
        return y;
    }

private:
    static std::size_t chunks(int dim) { return static_cast<std::size_t>((dim + 7) / 8); }

    void fill(const std::vector<std::uint64_t>& images) {
        for (std::size_t k = 0; k < tables_.size(); ++k)
            for (unsigned b = 0; b < 256; ++b) {
                std::uint64_t acc = 0;
                for (unsigned j = 0; j < 8; ++j) {
                    const std::size_t i = 8 * k + j;
                    if (((b >> j) & 1U) && i < images.size()) acc ^= images[i];
                }
                tables_[k][b] = acc;
            }
    }

    std::vector<std::array<std::uint64_t, 256>> tables_;
    std::uint64_t shift_ = 0;
};

}  // namespace rmcover
