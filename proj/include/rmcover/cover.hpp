#pragma once

// Cover sets of B(s,t,m) built from a classification of B(s-1,t-1,m-1) through
// the decomposition f = x_m g + h.

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "rmcover/classification.hpp"
#include "rmcover/error.hpp"
#include "rmcover/quotient.hpp"

namespace rmcover {

struct CoverEntry {
    std::uint32_t g_index = 0;  // class index into the sub-classification
    QuotientFunction h;         // element of B(s,t,m-1)
};

struct CoverSet {
    SpaceParams params;
    std::string sub_digest;
    std::vector<CoverEntry> entries;

    [[nodiscard]] std::size_t size() const noexcept { return entries.size(); }
};

namespace detail {

inline SpaceParams sub_params_of(const SpaceParams& p) { return {p.s - 1, p.t - 1, p.m - 1}; }
inline SpaceParams tail_params_of(const SpaceParams& p) { return {p.s, p.t, p.m - 1}; }

inline void check_cover_sub(const SpaceParams& p, const Classification& sub) {
    if (p.m < 2) throw std::invalid_argument("cover set: need at least two variables");
    if (!(sub.params == sub_params_of(p)))
        throw std::invalid_argument("cover set: expected a classification of B" + sub_params_of(p).to_string() +
                                    ", got B" + sub.params.to_string());
}

}  // namespace detail

/// x_m g + h for a cover entry.
inline QuotientFunction cover_element(const CoverEntry& e, const Classification& sub) {
    return compose_decomposition(sub.reps.at(e.g_index), e.h);
}

/// n(s-1,t-1,m-1) * 2^dim B(s,t,m-1).
inline std::uint64_t initial_cover_size(const SpaceParams& p, const Classification& sub) {
    detail::check_cover_sub(p, sub);
    const std::uint64_t dim = space_dimension(detail::tail_params_of(p));
    if (dim >= 63) throw GuardError("initial cover set size overflows");
    return sub.size() << dim;
}

/// Streams every entry of the initial cover set to fn(const CoverEntry&).
template <class Fn>
void for_each_initial_cover_entry(const SpaceParams& p, const Classification& sub, Fn&& fn) {
    detail::check_cover_sub(p, sub);
    const QuotientSpace tail(detail::tail_params_of(p));
    for (std::uint32_t g = 0; g < sub.size(); ++g)
        for (std::uint64_t h = 0; h < tail.cardinality(); ++h) fn(CoverEntry{g, tail.element(h)});
}

inline CoverSet initial_cover_set(const SpaceParams& p, const Classification& sub,
                                  std::uint64_t max_entries = std::uint64_t{1} << 24) {
    if (initial_cover_size(p, sub) > max_entries) throw GuardError("initial cover set exceeds the entry guard");
    CoverSet cs{p, sub.digest, {}};
    for_each_initial_cover_entry(p, sub, [&](const CoverEntry& e) { cs.entries.push_back(e); });
    return cs;
}

/// For each g, the orbit representatives R(g) of B(s,t,m-1) under
/// h -> h o sigma (sigma in Stab(g)) and h -> h + alpha g (alpha affine).
/// Orbits are enumerated exhaustively, so B(s,t,m-1) must fit `max_elements`.
inline CoverSet reduce_cover_set(const SpaceParams& p, const Classification& sub,
                                 std::uint64_t max_elements = std::uint64_t{1} << 26) {
    detail::check_cover_sub(p, sub);
    if (!sub.has_stabilizers()) throw std::invalid_argument("reduce_cover_set: sub-classification lacks stabilizers");
    const SpaceParams tail_params = detail::tail_params_of(p);
    check_enumerable(tail_params, max_elements);
    const QuotientSpace tail(tail_params);
    const int mt = tail_params.m;

    CoverSet cs{p, sub.digest, {}};
    std::vector<std::uint8_t> seen(tail.cardinality());
    std::vector<std::uint64_t> orbit;
    for (std::uint32_t gi = 0; gi < sub.size(); ++gi) {
        const QuotientFunction& g = sub.reps[gi];
        std::vector<IndexAction> actions;
        for (const AffineTransformation& sigma : sub.stabilizers[gi]) {
            if (!(q_apply_affine(g, sigma) == g))
                throw Error("reduce_cover_set: stabilizer generator of class " + std::to_string(gi) + " moves its representative");
            actions.emplace_back(tail, sigma);
        }
        const BooleanFunction glift = g.lift();
        for (int j = -1; j < mt; ++j) {
            const BooleanFunction alpha = j < 0 ? BooleanFunction::constant(mt, true) : BooleanFunction::coordinate(mt, j);
            BooleanFunction prod = alpha;
            prod.truth_table() &= glift.truth_table();
            const std::uint64_t shift = tail.index_of(project(prod, tail_params.s, tail_params.t));
            if (shift != 0) actions.push_back(IndexAction::translation(tail, shift));
        }
        std::fill(seen.begin(), seen.end(), 0);
        for (std::uint64_t start = 0; start < tail.cardinality(); ++start) {
            if (seen[start]) continue;
            seen[start] = 1;
            orbit.assign(1, start);
            for (std::size_t k = 0; k < orbit.size(); ++k)
                for (const IndexAction& a : actions) {
                    const std::uint64_t y = a(orbit[k]);
                    if (!seen[y]) {
                        seen[y] = 1;
                        orbit.push_back(y);
                    }
                }
            cs.entries.push_back(CoverEntry{gi, tail.element(start)});
        }
    }
    return cs;
}

}  // namespace rmcover
