#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "oracle.hpp"
#include "rmcover/classification.hpp"
#include "rmcover/cover.hpp"
#include "rmcover/group_chain.hpp"
#include "rmcover/pipeline.hpp"

using namespace rmcover;

namespace {

struct UnionFind {
    std::vector<std::uint64_t> parent;
    explicit UnionFind(std::uint64_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::uint64_t find(std::uint64_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::uint64_t a, std::uint64_t b) {
        a = find(a), b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

std::uint64_t oracle_image(const QuotientSpace& space, std::uint64_t idx, const oracle::Affine& s) {
    const SpaceParams& p = space.params();
    const auto table = oracle::table_of(space.element(idx).lift());
    const auto coeffs = oracle::keep_degrees(oracle::anf(oracle::compose(table, s)), p.s, p.t);
    AnfPolynomial a(p.m);
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        if (coeffs[i]) a.coefficients().set(i);
    return space.index_of(a);
}

// Orbit partition from pointwise composition under the given group elements;
// returns the minimal index of each element's orbit.
std::vector<std::uint64_t> oracle_orbit_minima(const SpaceParams& p, const std::vector<oracle::Affine>& elems) {
    const QuotientSpace space(p);
    UnionFind uf(space.cardinality());
    for (std::uint64_t i = 0; i < space.cardinality(); ++i)
        for (const auto& s : elems) uf.unite(i, oracle_image(space, i, s));
    std::vector<std::uint64_t> mins(space.cardinality());
    for (std::uint64_t i = 0; i < space.cardinality(); ++i) mins[i] = uf.find(i);
    return mins;
}

// Generators independent of agl_generators: every transvection and every unit translation.
std::vector<oracle::Affine> transvections_and_translations(int m) {
    std::vector<oracle::Affine> out;
    for (std::uint32_t v = 1; v < (1U << m); ++v)
        for (std::uint32_t theta = 1; theta < (1U << m); ++theta) {
            if (std::popcount(theta & v) & 1) continue;
            oracle::Affine t{m, std::vector<std::uint32_t>(m), 0};
            for (int i = 0; i < m; ++i) t.rows[i] = (1U << i) ^ (((v >> i) & 1U) ? theta : 0);
            out.push_back(t);
        }
    for (int i = 0; i < m; ++i) {
        oracle::Affine t{m, std::vector<std::uint32_t>(m), 1U << i};
        for (int j = 0; j < m; ++j) t.rows[j] = 1U << j;
        out.push_back(t);
    }
    return out;
}

void expect_partition(const Classification& c, const std::vector<std::uint64_t>& mins) {
    const QuotientSpace space(c.params);
    ASSERT_EQ(c.lookup.size(), mins.size());
    std::set<std::uint64_t> distinct(mins.begin(), mins.end());
    ASSERT_EQ(c.size(), distinct.size()) << c.params.to_string();
    for (std::uint64_t i = 0; i < mins.size(); ++i) ASSERT_EQ(space.index_of(c.reps[c.lookup[i]]), mins[i]);
}

std::size_t closure_size(int m, const std::vector<AffineTransformation>& gens) {
    std::set<std::vector<Point>> seen;
    std::vector<AffineTransformation> frontier{AffineTransformation::identity(m)};
    seen.insert(frontier[0].point_images());
    for (std::size_t k = 0; k < frontier.size(); ++k)
        for (const auto& g : gens) {
            AffineTransformation h = compose(frontier[k], g);
            if (seen.insert(h.point_images()).second) frontier.push_back(h);
        }
    return seen.size();
}

}  // namespace

TEST(OrbitEnumerate, SmallExamples) {
    const Classification c = orbit_enumerate({2, 2, 3});
    ASSERT_EQ(c.size(), 2u);
    EXPECT_TRUE(c.reps[0].is_zero());
    EXPECT_EQ(c.reps[1].anf(), AnfPolynomial::monomial(3, 0b011));
    const Classification d = orbit_enumerate({3, 3, 4});
    EXPECT_EQ(std::accumulate(d.orbit_sizes.begin(), d.orbit_sizes.end(), std::uint64_t{0}), 16u);
    EXPECT_THROW(orbit_enumerate({2, 5, 6}), GuardError);
}

TEST(OrbitEnumerate, MatchesFullGroupAtM3) {
    for (int m = 1; m <= 3; ++m) {
        const auto group = oracle::all_agl(m);
        for (int s = 0; s <= m; ++s)
            for (int t = s; t <= m; ++t) {
                const SpaceParams p{s, t, m};
                expect_partition(orbit_enumerate(p), oracle_orbit_minima(p, group));
            }
    }
}

TEST(OrbitEnumerate, MatchesIndependentGeneratorsAtM4) {
    const auto gens = transvections_and_translations(4);
    for (const SpaceParams p : {SpaceParams{2, 3, 4}, SpaceParams{2, 4, 4}, SpaceParams{3, 4, 4}, SpaceParams{1, 2, 4}})
        expect_partition(orbit_enumerate(p), oracle_orbit_minima(p, gens));
}

TEST(OrbitEnumerate, OrbitSizesDivideGroupOrder) {
    for (const SpaceParams p : {SpaceParams{2, 3, 5}, SpaceParams{3, 3, 6}, SpaceParams{2, 4, 5}}) {
        const Classification c = orbit_enumerate(p);
        std::uint64_t total = 0;
        for (std::uint64_t n : c.orbit_sizes) {
            EXPECT_EQ(agl_order(p.m) % n, GroupOrder{0});
            total += n;
        }
        EXPECT_EQ(total, std::uint64_t{1} << space_dimension(p));
    }
}

TEST(Stabilizers, FixRepsAndSatisfyOrbitStabilizer) {
    for (int m = 2; m <= 3; ++m)
        for (int s = 1; s <= m; ++s)
            for (int t = s; t <= m; ++t) {
                const Classification c = orbit_enumerate({s, t, m});
                for (std::size_t i = 0; i < c.size(); ++i) {
                    for (const auto& g : c.stabilizers[i]) ASSERT_EQ(q_apply_affine(c.reps[i], g), c.reps[i]);
                    ASSERT_EQ(GroupOrder{c.orbit_sizes[i] * closure_size(m, c.stabilizers[i])}, agl_order(m));
                }
            }
    for (const SpaceParams p : {SpaceParams{2, 3, 4}, SpaceParams{2, 3, 5}, SpaceParams{3, 3, 5}}) {
        const Classification c = orbit_enumerate(p);
        for (std::size_t i = 0; i < c.size(); ++i) {
            AffineGroupChain chain(p.m);
            for (const auto& g : c.stabilizers[i]) {
                ASSERT_EQ(q_apply_affine(c.reps[i], g), c.reps[i]);
                chain.add_generator(g);
            }
            chain.complete();
            ASSERT_EQ(chain.order() * c.orbit_sizes[i], agl_order(p.m));
        }
    }
}

TEST(Stabilizers, ZeroClassAndRecomputation) {
    const Classification c = orbit_enumerate({2, 2, 2});
    EXPECT_EQ(closure_size(2, stabilizer_generators(c.reps[0], c)), 24u);
    for (const auto& g : stabilizer_generators(c.reps[1], c)) EXPECT_EQ(q_apply_affine(c.reps[1], g), c.reps[1]);
    Classification bare = orbit_enumerate({2, 3, 4}, OrbitOptions{std::uint64_t{1} << 26, false});
    EXPECT_FALSE(bare.has_stabilizers());
    for (const auto& rep : bare.reps) {
        const auto gens = stabilizer_generators(rep, bare);
        AffineGroupChain chain(4);
        for (const auto& g : gens) {
            ASSERT_EQ(q_apply_affine(rep, g), rep);
            chain.add_generator(g);
        }
        chain.complete();
        EXPECT_EQ(chain.order() * bare.orbit_sizes[*bare.rep_index(rep)], agl_order(4));
    }
    EXPECT_THROW(stabilizer_generators(QuotientFunction({2, 3, 4}, AnfPolynomial::monomial(4, 0b1110)), bare),
                 std::invalid_argument);
}

TEST(CoverSet, InitialSizeAndCoverProperty) {
    const Classification sub = orbit_enumerate({1, 1, 2});
    EXPECT_EQ(sub.size(), 2u);
    EXPECT_EQ(initial_cover_size({2, 2, 3}, sub), 4u);
    for (const SpaceParams p : {SpaceParams{2, 2, 3}, SpaceParams{2, 3, 4}, SpaceParams{1, 2, 3}, SpaceParams{3, 4, 5}}) {
        const Classification s = orbit_enumerate({p.s - 1, p.t - 1, p.m - 1});
        const Classification oracle_cls = orbit_enumerate(p);
        const CoverSet initial = initial_cover_set(p, s);
        const CoverSet reduced = reduce_cover_set(p, s);
        EXPECT_EQ(initial.size(), initial_cover_size(p, s));
        EXPECT_LE(reduced.size(), initial.size());
        EXPECT_GE(reduced.size(), oracle_cls.size());
        for (const CoverSet* cs : {&initial, &reduced}) {
            std::set<std::size_t> hit;
            for (const auto& e : cs->entries) hit.insert(lookup_class(oracle_cls, cover_element(e, s)));
            EXPECT_EQ(hit.size(), oracle_cls.size()) << p.to_string();
        }
    }
    EXPECT_THROW(initial_cover_size({2, 3, 4}, sub), std::invalid_argument);
}

TEST(CoverSet, RequiresStabilizers) {
    const Classification bare = orbit_enumerate({1, 2, 3}, OrbitOptions{std::uint64_t{1} << 26, false});
    EXPECT_THROW(reduce_cover_set({2, 3, 4}, bare), std::invalid_argument);
}

// x_m g + h, x_m g + h o s (s in Stab g) and x_m g + h + alpha g share an orbit.
TEST(CoverSet, StabilizerActionSoundness) {
    std::mt19937_64 rng(7);
    for (const SpaceParams p : {SpaceParams{2, 3, 4}, SpaceParams{2, 2, 4}, SpaceParams{3, 4, 4}}) {
        const Classification sub = orbit_enumerate({p.s - 1, p.t - 1, p.m - 1});
        const Classification full = orbit_enumerate(p);
        for (std::size_t gi = 0; gi < sub.size(); ++gi) {
            const QuotientFunction& g = sub.reps[gi];
            for (int rep = 0; rep < 10; ++rep) {
                const QuotientFunction h = oracle::random_quotient({p.s, p.t, p.m - 1}, rng);
                const std::size_t base = lookup_class(full, compose_decomposition(g, h));
                for (const auto& sigma : sub.stabilizers[gi])
                    ASSERT_EQ(lookup_class(full, compose_decomposition(g, q_apply_affine(h, sigma))), base);
                BooleanFunction alpha = BooleanFunction::constant(p.m - 1, (rng() & 1) != 0);
                for (int j = 0; j < p.m - 1; ++j)
                    if (rng() & 1) alpha ^= BooleanFunction::coordinate(p.m - 1, j);
                BooleanFunction prod = alpha;
                prod.truth_table() &= g.lift().truth_table();
                const QuotientFunction shifted = h ^ project(prod, p.s, p.t);
                ASSERT_EQ(lookup_class(full, compose_decomposition(g, shifted)), base);
            }
        }
    }
}

TEST(ClassOf, LookupAndInvariantRoutes) {
    std::mt19937_64 rng(8);
    Rng grng(9);
    for (const SpaceParams p : {SpaceParams{2, 3, 4}, SpaceParams{2, 3, 5}, SpaceParams{3, 3, 5}}) {
        const Classification full = orbit_enumerate(p);
        const Classification sub = orbit_enumerate({p.s - 1, p.t - 1, p.m - 1});
        Classification bare = full;
        bare.lookup.clear();
        EXPECT_EQ(class_of(QuotientFunction(p), full), 0u);
        EXPECT_THROW(class_of(QuotientFunction(p), bare), Undecidable);
        const ClassIndex index(bare, sub);
        for (std::size_t i = 0; i < full.size(); ++i) {
            EXPECT_EQ(class_of(full.reps[i], full), i);
            EXPECT_EQ(index(full.reps[i]), i);
            const QuotientFunction moved = q_apply_affine(full.reps[i], random_affine(p.m, grng));
            EXPECT_EQ(class_of(moved, full), i);
            EXPECT_EQ(class_of(moved, bare, ClassOfOptions{&sub}), i);
        }
        const QuotientFunction r = oracle::random_quotient(p, rng);
        EXPECT_EQ(index(r), class_of(r, full));
    }
    const Classification c = orbit_enumerate({2, 3, 4});
    EXPECT_THROW(class_of(QuotientFunction({2, 2, 4}), c), std::invalid_argument);
}

TEST(ClassOf, ConstructedMembershipAtM7) {
    const Classification c = orbit_enumerate({5, 5, 7});
    ASSERT_EQ(c.size(), 4u);
    Rng rng(10);
    for (std::size_t i = 0; i < c.size(); ++i)
        for (int rep = 0; rep < 5; ++rep) EXPECT_EQ(class_of(q_apply_affine(c.reps[i], random_affine(7, rng)), c), i);
}

TEST(RebuildLookup, RejectsBadRepresentativeLists) {
    Classification c = orbit_enumerate({2, 3, 4});
    Classification dup = c;
    dup.reps.push_back(q_apply_affine(c.reps[2], transvection(4, 1, 2)));
    EXPECT_THROW(rebuild_lookup(dup), Error);
    Classification missing = c;
    missing.reps.pop_back();
    EXPECT_THROW(rebuild_lookup(missing), Error);
    Classification again = c;
    again.lookup.clear();
    again.orbit_sizes.clear();
    rebuild_lookup(again);
    EXPECT_EQ(again.lookup, c.lookup);
    EXPECT_EQ(again.orbit_sizes, c.orbit_sizes);
}

TEST(Pipeline, MatchesOracleCounts) {
    for (const SpaceParams p :
         {SpaceParams{2, 2, 3}, SpaceParams{2, 3, 4}, SpaceParams{3, 3, 5}, SpaceParams{2, 3, 5}, SpaceParams{3, 4, 5}}) {
        const Classification sub = orbit_enumerate({p.s - 1, p.t - 1, p.m - 1});
        const PipelineReport r = classify_pipeline(p, sub, PipelineBudgets{1 << 14, 3, 2});
        EXPECT_TRUE(r.unresolved.empty());
        Classification got = r.classification;
        EXPECT_EQ(got.size(), orbit_enumerate(p).size()) << p.to_string();
        EXPECT_EQ(got.provenance, "pipeline");
        EXPECT_NO_THROW(rebuild_lookup(got));
    }
}

TEST(Pipeline, DeterministicAcrossJobCounts) {
    const Classification sub = orbit_enumerate({1, 2, 4});
    const auto a = classify_pipeline({2, 3, 5}, sub, PipelineBudgets{1 << 14, 5, 1});
    const auto b = classify_pipeline({2, 3, 5}, sub, PipelineBudgets{1 << 14, 5, 3});
    EXPECT_EQ(a.classification.digest, b.classification.digest);
    EXPECT_EQ(a.equivalence_calls, b.equivalence_calls);
}

// Sub-classes resolved through the level below instead of a dense lookup.
TEST(Pipeline, SubWithoutLookup) {
    for (const SpaceParams p : {SpaceParams{3, 4, 5}, SpaceParams{2, 3, 5}}) {
        Classification sub = orbit_enumerate({p.s - 1, p.t - 1, p.m - 1});
        const Classification sub_sub = orbit_enumerate({p.s - 2, p.t - 2, p.m - 2});
        const std::string want = classify_pipeline(p, sub).classification.digest;
        sub.lookup.clear();
        EXPECT_THROW(classify_pipeline(p, sub), Undecidable);
        const PipelineReport r = classify_pipeline(p, sub, PipelineBudgets{}, &sub_sub);
        EXPECT_TRUE(r.unresolved.empty());
        EXPECT_EQ(r.classification.digest, want) << p.to_string();
    }
}

TEST(Digest, PinsNumbering) {
    Classification c = orbit_enumerate({2, 3, 4});
    const std::string d = c.digest;
    std::swap(c.reps[1], c.reps[2]);
    EXPECT_NE(classification_digest(c.params, c.reps), d);
    EXPECT_EQ(orbit_enumerate({2, 3, 4}).digest, d);
}
