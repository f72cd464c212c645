#pragma once

// Tri-state AGL(m,2) equivalence in B(t-1,t,m): a depth-first search for the
// adjoint map A* constrained by the Fourier class maps, followed by completion
// of the affine part through Delta(f) membership.
//
// B(t,t,m) is handled by the same search; there translations act trivially, so
// a candidate either works with a = 0 or not at all.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rmcover/classification.hpp"
#include "rmcover/group.hpp"
#include "rmcover/invariant.hpp"
#include "rmcover/quotient.hpp"

namespace rmcover {

enum class Verdict { Equiv, NotEquiv, Undefined };

inline const char* to_string(Verdict v) noexcept {
    switch (v) {
        case Verdict::Equiv: return "Equiv";
        case Verdict::NotEquiv: return "NotEquiv";
        case Verdict::Undefined: return "Undefined";
    }
    return "?";
}

struct EquivalenceOutcome {
    Verdict verdict = Verdict::NotEquiv;
    /// Present iff Equiv; satisfies f' = f o witness in the quotient.
    std::optional<AffineTransformation> witness;
    std::uint64_t candidates_tested = 0;
    std::uint64_t budget_used = 0;
};

/// Linear map under construction on the standard basis: A*(e_1..e_k) fixed.
class PartialLinearMap {
public:
    explicit PartialLinearMap(int m) : m_(m), span_(1, 0) { check_dimension(m); }

    [[nodiscard]] int dim() const noexcept { return m_; }
    [[nodiscard]] int defined() const noexcept { return static_cast<int>(images_.size()); }
    /// A*(x) for every x in span(e_1..e_defined), indexed by x.
    [[nodiscard]] std::span<const Point> span_images() const noexcept { return span_; }

    void extend(Point y) {
        if (defined() >= m_) throw std::logic_error("PartialLinearMap: already complete");
        images_.push_back(y);
        const std::size_t half = span_.size();
        span_.resize(half * 2);
        for (std::size_t x = 0; x < half; ++x) span_[half + x] = span_[x] ^ y;
    }
    void retract() {
        images_.pop_back();
        span_.resize(span_.size() / 2);
    }

    [[nodiscard]] LinearMap to_linear_map() const {
        if (defined() != m_) throw std::logic_error("PartialLinearMap: incomplete");
        return LinearMap::from_columns(m_, images_);
    }

private:
    int m_;
    std::vector<Point> images_;
    std::vector<Point> span_;
};

/// Whether A*(e_i) = y keeps Fh(f')(A* x) = Fh(f)(x) on span(e_1..e_i) and
/// keeps A* injective there. `i` is 1-based and A* must be defined on e_1..e_{i-1}.
inline bool admissible(const PartialLinearMap& astar, Point y, int i, std::span<const std::int64_t> fh_f,
                       std::span<const std::int64_t> fh_fp) {
    if (astar.defined() != i - 1) throw std::invalid_argument("admissible: basis index out of sequence");
    const auto span = astar.span_images();
    const std::size_t offset = std::size_t{1} << (i - 1);
    for (std::size_t x = 0; x < span.size(); ++x) {
        const Point image = span[x] ^ y;
        if (image == 0) return false;  // y already in the image span
        if (fh_fp[image] != fh_f[offset + x]) return false;
    }
    return true;
}

/// Given an invertible candidate A, finds a with f' = f o (A,a), re-verified
/// by direct recomposition.
inline std::optional<Point> candidate_checking(const LinearMap& a, const QuotientFunction& f,
                                               const QuotientFunction& fp) {
    const SpaceParams& p = f.params();
    if (!(fp.params() == p)) throw std::invalid_argument("candidate_checking: parameter mismatch");
    const auto inv = a.inverse();
    if (!inv) throw std::invalid_argument("candidate_checking: singular candidate");
    if (p.s == p.t) {
        if (q_apply_affine(f, AffineTransformation(a, 0)) == fp) return Point{0};
        return std::nullopt;
    }
    if (p.s != p.t - 1) throw std::invalid_argument("candidate_checking: expected a space B(t-1,t,m)");
    const QuotientFunction diff = q_apply_affine(fp, AffineTransformation(*inv, 0)) ^ f;
    const auto shift = delta_membership(f, diff);
    if (!shift) return std::nullopt;
    if (!(q_apply_affine(f, AffineTransformation(a, *shift)) == fp)) return std::nullopt;
    return shift;
}

/// Equivalence test with a budget of `iter` failed complete candidates.
inline EquivalenceOutcome equivalent(const QuotientFunction& f, const QuotientFunction& fp, const Classification& sub,
                                     const ClassResolver& resolve, std::int64_t iter, Rng& rng) {
    const SpaceParams& p = f.params();
    if (!(fp.params() == p)) throw std::invalid_argument("equivalent: parameter mismatch");
    if (p.s != p.t - 1 && p.s != p.t) throw std::invalid_argument("equivalent: expected a space B(t-1,t,m)");
    const int m = p.m;

    EquivalenceOutcome out;
    const ClassMap cm_fp = class_map(fp, sub, resolve);
    if (!(j_hat_signature(class_map(f, sub, resolve)) == j_hat_signature(cm_fp))) return out;

    const AffineTransformation sigma = random_affine(m, rng);
    const QuotientFunction f1 = q_apply_affine(f, sigma);
    const std::vector<std::int64_t> fh_f = fourier_map(class_map(f1, sub, resolve));
    const std::vector<std::int64_t> fh_fp = fourier_map(cm_fp);
    if (fh_f[0] != fh_fp[0]) return out;

    PartialLinearMap astar(m);
    const Point npoints = Point{1} << m;
    auto search = [&](auto& self, int i) -> void {
        if (i > m) {
            ++out.candidates_tested;
            const LinearMap a = linear_part_from_adjoint(astar.to_linear_map());
            if (auto shift = candidate_checking(a, f1, fp)) {
                out.verdict = Verdict::Equiv;
                out.witness = compose(sigma, AffineTransformation(a, *shift));
                return;
            }
            ++out.budget_used;
            if (--iter < 0) out.verdict = Verdict::Undefined;
            return;
        }
        for (Point y = 1; y < npoints && out.verdict == Verdict::NotEquiv; ++y) {
            if (!admissible(astar, y, i, fh_f, fh_fp)) continue;
            astar.extend(y);
            self(self, i + 1);
            astar.retract();
        }
    };
    search(search, 1);

    if (out.verdict == Verdict::Equiv && !(q_apply_affine(f, *out.witness) == fp))
        throw std::logic_error("equivalent: witness does not recompose");
    return out;
}

inline EquivalenceOutcome equivalent(const QuotientFunction& f, const QuotientFunction& fp, const Classification& sub,
                                     std::int64_t iter, Rng& rng) {
    const LookupResolver resolve(sub);
    return equivalent(f, fp, sub, std::cref(resolve), iter, rng);
}

}  // namespace rmcover
