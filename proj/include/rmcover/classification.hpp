#pragma once

// Orbit classifications of B(s,t,m) under AGL(m,2): exhaustive BFS over the
// index space, Schreier stabilizers, and the dense class lookup.

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "rmcover/digest.hpp"
#include "rmcover/error.hpp"
#include "rmcover/group.hpp"
#include "rmcover/group_chain.hpp"
#include "rmcover/quotient.hpp"

namespace rmcover {

inline constexpr std::uint32_t kNoClass = std::numeric_limits<std::uint32_t>::max();

struct Classification {
    SpaceParams params;
    /// Canonical representatives in class-index order.
    std::vector<QuotientFunction> reps;
    /// Optional; one entry per class.
    std::vector<std::uint64_t> orbit_sizes;
    /// Optional; generators of Stab(rep) <= AGL(m,2), one list per class.
    std::vector<std::vector<AffineTransformation>> stabilizers;
    /// Optional dense map from space index to class index.
    std::vector<std::uint32_t> lookup;
    std::string provenance = "agl-standard";
    std::string digest;

    [[nodiscard]] std::size_t size() const noexcept { return reps.size(); }
    [[nodiscard]] bool has_lookup() const noexcept { return !lookup.empty(); }
    [[nodiscard]] bool has_stabilizers() const noexcept { return stabilizers.size() == reps.size() && !reps.empty(); }
    [[nodiscard]] bool has_orbit_sizes() const noexcept { return orbit_sizes.size() == reps.size() && !reps.empty(); }

    /// Class index of a representative, if it is one.
    [[nodiscard]] std::optional<std::size_t> rep_index(const QuotientFunction& f) const {
        for (std::size_t i = 0; i < reps.size(); ++i)
            if (reps[i].anf() == f.anf()) return i;
        return std::nullopt;
    }
};

/// Digest over the parameters and the ordered representative list; it pins the
/// class numbering.
inline std::string classification_digest(const SpaceParams& p, const std::vector<QuotientFunction>& reps) {
    Fnv1a h;
    h.update("rmcover-classification");
    h.update(static_cast<std::uint64_t>(static_cast<std::int64_t>(p.s)));
    h.update(static_cast<std::uint64_t>(static_cast<std::int64_t>(p.t)));
    h.update(static_cast<std::uint64_t>(p.m));
    h.update(static_cast<std::uint64_t>(reps.size()));
    for (const QuotientFunction& r : reps) {
        h.update("|");
        for (Word w : r.anf().coefficients().words()) h.update(w);
    }
    return h.hex();
}

inline void seal(Classification& c) { c.digest = classification_digest(c.params, c.reps); }

struct OrbitOptions {
    /// Largest space cardinality an exhaustive enumeration may touch.
    std::uint64_t max_elements = std::uint64_t{1} << 26;
    bool stabilizers = true;
};

inline void check_enumerable(const SpaceParams& p, std::uint64_t max_elements) {
    const std::uint64_t dim = space_dimension(p);
    if (dim >= 63 || (std::uint64_t{1} << dim) > max_elements)
        throw GuardError("space B" + p.to_string() + " has 2^" + std::to_string(dim) +
                         " elements, beyond the enumeration guard");
}

namespace detail {

inline std::vector<IndexAction> index_actions(const QuotientSpace& space, const std::vector<AffineTransformation>& gens) {
    std::vector<IndexAction> actions;
    actions.reserve(gens.size());
    for (const AffineTransformation& g : gens) actions.emplace_back(space, g);
    return actions;
}

inline GroupOrder generated_order(int m, const std::vector<AffineTransformation>& gens) {
    AffineGroupChain chain(m);
    for (const AffineTransformation& g : gens) chain.add_generator(g);
    chain.complete();
    return chain.order();
}

/// Stabilizer of an orbit's root from Schreier generators of its BFS tree.
/// parent_of(x) returns (parent index, generator index) for non-root x.
template <class ParentFn>
std::vector<AffineTransformation> schreier_stabilizer(int m, const std::vector<std::uint64_t>& orbit,
                                                      const std::vector<IndexAction>& actions,
                                                      const std::vector<AffineTransformation>& gens,
                                                      ParentFn parent_of, GroupOrder target) {
    const std::uint64_t root = orbit.front();
    auto transversal = [&](std::uint64_t x) {
        std::vector<std::uint8_t> path;
        while (x != root) {
            auto [p, g] = parent_of(x);
            path.push_back(g);
            x = p;
        }
        AffineTransformation u = AffineTransformation::identity(m);
        for (std::size_t k = path.size(); k-- > 0;) u = compose(u, gens[path[k]]);
        return u;
    };
    AffineGroupChain chain(m);
    if (target == 1) return {};
    for (std::uint64_t x : orbit) {
        const AffineTransformation ux = transversal(x);
        for (std::size_t i = 0; i < gens.size(); ++i) {
            const std::uint64_t y = actions[i](x);
            if (y != root) {
                auto [p, g] = parent_of(y);
                if (p == x && g == i) continue;  // tree edge
            }
            const AffineTransformation sg = compose(compose(ux, gens[i]), invert(transversal(y)));
            if (chain.add_generator(sg)) {
                chain.complete(target);
                if (chain.order() >= target) return chain.accepted();
            }
        }
    }
    chain.complete();
    if (chain.order() != target) throw std::logic_error("schreier_stabilizer: order mismatch");
    return chain.accepted();
}

}  // namespace detail

/// Exhaustive orbit partition of B(s,t,m) under the group generated by `gens`.
/// Representatives are the minimal keys of their orbits, numbered in ascending
/// key order, so the zero class is always class 0.
inline Classification orbit_enumerate(const SpaceParams& p, const std::vector<AffineTransformation>& gens,
                                      const OrbitOptions& opt = {}) {
    check_enumerable(p, opt.max_elements);
    for (const AffineTransformation& g : gens)
        if (g.dim() != p.m) throw std::invalid_argument("orbit_enumerate: generator dimension mismatch");
    if (gens.size() > 255) throw std::invalid_argument("orbit_enumerate: too many generators");

    const QuotientSpace space(p);
    const std::uint64_t n = space.cardinality();
    const std::vector<IndexAction> actions = detail::index_actions(space, gens);

    Classification c;
    c.params = p;
    c.lookup.assign(n, kNoClass);
    std::vector<std::uint32_t> parent;
    std::vector<std::uint8_t> via;
    GroupOrder group_order = 0;
    if (opt.stabilizers) {
        parent.assign(n, 0);
        via.assign(n, 0);
        group_order = detail::generated_order(p.m, gens);
    }

    std::vector<std::uint64_t> orbit;
    for (std::uint64_t start = 0; start < n; ++start) {
        if (c.lookup[start] != kNoClass) continue;
        const auto cls = static_cast<std::uint32_t>(c.reps.size());
        orbit.assign(1, start);
        c.lookup[start] = cls;
        for (std::size_t k = 0; k < orbit.size(); ++k) {
            const std::uint64_t x = orbit[k];
            for (std::size_t i = 0; i < actions.size(); ++i) {
                const std::uint64_t y = actions[i](x);
                if (c.lookup[y] != kNoClass) continue;
                c.lookup[y] = cls;
                if (opt.stabilizers) {
                    parent[y] = static_cast<std::uint32_t>(x);
                    via[y] = static_cast<std::uint8_t>(i);
                }
                orbit.push_back(y);
            }
        }
        c.reps.push_back(space.element(start));
        c.orbit_sizes.push_back(orbit.size());
        if (opt.stabilizers) {
            const GroupOrder target = group_order / orbit.size();
            c.stabilizers.push_back(detail::schreier_stabilizer(
                p.m, orbit, actions, gens,
                [&](std::uint64_t x) { return std::pair<std::uint64_t, std::uint8_t>{parent[x], via[x]}; }, target));
        }
    }
    seal(c);
    return c;
}

inline Classification orbit_enumerate(const SpaceParams& p, const OrbitOptions& opt = {}) {
    return orbit_enumerate(p, agl_generators(p.m), opt);
}

/// Generators of Stab(rep) computed from scratch by a Schreier BFS over rep's orbit.
inline std::vector<AffineTransformation> compute_stabilizer(const QuotientFunction& rep,
                                                            const std::vector<AffineTransformation>& gens) {
    const QuotientSpace space(rep.params());
    const std::vector<IndexAction> actions = detail::index_actions(space, gens);
    const std::uint64_t root = space.index_of(rep);
    std::unordered_map<std::uint64_t, std::pair<std::uint64_t, std::uint8_t>> parent;
    std::vector<std::uint64_t> orbit{root};
    parent.emplace(root, std::pair<std::uint64_t, std::uint8_t>{root, 0});
    for (std::size_t k = 0; k < orbit.size(); ++k)
        for (std::size_t i = 0; i < actions.size(); ++i) {
            const std::uint64_t y = actions[i](orbit[k]);
            if (parent.emplace(y, std::pair<std::uint64_t, std::uint8_t>{orbit[k], static_cast<std::uint8_t>(i)}).second)
                orbit.push_back(y);
        }
    const GroupOrder target = detail::generated_order(rep.params().m, gens) / orbit.size();
    return detail::schreier_stabilizer(rep.params().m, orbit, actions, gens,
                                       [&](std::uint64_t x) { return parent.at(x); }, target);
}

/// Stab(rep) for a representative of `c`: stored generators when present,
/// otherwise recomputed with the standard AGL generators.
inline std::vector<AffineTransformation> stabilizer_generators(const QuotientFunction& rep, const Classification& c) {
    const auto idx = c.rep_index(rep);
    if (!(rep.params().m == c.params.m) || !idx) throw std::invalid_argument("stabilizer_generators: not a representative");
    if (c.has_stabilizers()) return c.stabilizers[*idx];
    return compute_stabilizer(rep, agl_generators(c.params.m));
}

/// Rebuilds the dense lookup (and orbit sizes) from the representatives,
/// rejecting representative lists that are incomplete or contain two members
/// of one orbit.
inline void rebuild_lookup(Classification& c, std::uint64_t max_elements = std::uint64_t{1} << 26) {
    check_enumerable(c.params, max_elements);
    const QuotientSpace space(c.params);
    const std::vector<IndexAction> actions = detail::index_actions(space, agl_generators(c.params.m));
    std::vector<std::uint32_t> lookup(space.cardinality(), kNoClass);
    std::vector<std::uint64_t> sizes;
    std::vector<std::uint64_t> orbit;
    for (std::size_t r = 0; r < c.reps.size(); ++r) {
        const std::uint64_t start = space.index_of(c.reps[r]);
        if (lookup[start] != kNoClass)
            throw Error("classification: representatives " + std::to_string(lookup[start]) + " and " +
                        std::to_string(r) + " are equivalent");
        const auto cls = static_cast<std::uint32_t>(r);
        orbit.assign(1, start);
        lookup[start] = cls;
        for (std::size_t k = 0; k < orbit.size(); ++k)
            for (const IndexAction& a : actions) {
                const std::uint64_t y = a(orbit[k]);
                if (lookup[y] == kNoClass) {
                    lookup[y] = cls;
                    orbit.push_back(y);
                }
            }
        sizes.push_back(orbit.size());
    }
    for (std::uint32_t v : lookup)
        if (v == kNoClass) throw Error("classification: representatives do not cover the space");
    c.lookup = std::move(lookup);
    c.orbit_sizes = std::move(sizes);
}

/// Class index through the dense lookup.
inline std::size_t lookup_class(const Classification& c, const QuotientFunction& h) {
    if (h.params().m != c.params.m) throw std::invalid_argument("lookup_class: dimension mismatch");
    if (!c.has_lookup()) throw Undecidable("lookup_class: classification carries no lookup");
    const QuotientSpace space(c.params);
    return c.lookup[space.index_of(h)];
}

}  // namespace rmcover
