#include <gtest/gtest.h>

#include <random>

#include "oracle.hpp"
#include "rmcover/quotient.hpp"

using namespace rmcover;

namespace {

// Reduces through the oracle: compose pointwise, re-expand, keep degrees in [s,t].
oracle::Table oracle_q_apply(const QuotientFunction& f, const AffineTransformation& s) {
    const auto coeffs = oracle::anf(oracle::compose(oracle::table_of(f.lift()), oracle::affine_from(s)));
    return oracle::keep_degrees(coeffs, f.params().s, f.params().t);
}

oracle::Table coeffs_of(const QuotientFunction& f) { return oracle::table_of(BooleanFunction(f.params().m, f.anf().coefficients())); }

}  // namespace

TEST(Space, Dimensions) {
    EXPECT_EQ(space_dimension({2, 2, 3}), 3u);
    EXPECT_EQ(space_dimension({2, 3, 4}), 10u);
    EXPECT_EQ(space_dimension({5, 5, 7}), 21u);
    EXPECT_EQ(space_dimension({5, 6, 8}), 84u);
    EXPECT_EQ(space_dimension({4, 5, 7}), 56u);
    EXPECT_EQ(space_dimension({3, 2, 4}), 0u);
    EXPECT_EQ(binomial(8, 4), 70u);
}

TEST(Quotient, RejectsMonomialsOutsideDegrees) {
    EXPECT_THROW(QuotientFunction({2, 3, 4}, AnfPolynomial::monomial(4, 0b1)), std::invalid_argument);
    EXPECT_THROW(project(AnfPolynomial::monomial(4, 0b1111), 2, 3), std::invalid_argument);
    const QuotientFunction q = project(AnfPolynomial::monomial(4, 0b1) ^ AnfPolynomial::monomial(4, 0b11), 2, 3);
    EXPECT_EQ(q.anf(), AnfPolynomial::monomial(4, 0b11));
}

TEST(Quotient, ApplyMatchesOracle) {
    std::mt19937_64 rng(1);
    for (int m = 2; m <= 7; ++m)
        for (int s = 0; s <= m; ++s)
            for (int t = s; t <= m; ++t) {
                const SpaceParams p{s, t, m};
                const QuotientFunction f = oracle::random_quotient(p, rng);
                const AffineTransformation a = random_affine(m, rng);
                ASSERT_EQ(coeffs_of(q_apply_affine(f, a)), oracle_q_apply(f, a)) << p.to_string();
            }
}

// Translations act trivially on B(t,t,m).
TEST(Quotient, TranslationsTrivialOnHomogeneousTop) {
    std::mt19937_64 rng(2);
    for (int m = 2; m <= 7; ++m)
        for (int t = 1; t <= m; ++t) {
            const QuotientFunction f = oracle::random_quotient({t, t, m}, rng);
            const Point a = static_cast<Point>(rng()) & point_mask(m);
            ASSERT_EQ(q_apply_affine(f, AffineTransformation::translation_by(m, a)), f);
        }
}

TEST(Quotient, DecomposeRoundTrip) {
    std::mt19937_64 rng(3);
    for (int m = 2; m <= 8; ++m) {
        const SpaceParams p{2, std::min(m, 4), m};
        const QuotientFunction f = oracle::random_quotient(p, rng);
        const Decomposition d = decompose(f);
        EXPECT_EQ(d.g.params(), (SpaceParams{1, p.t - 1, m - 1}));
        EXPECT_EQ(d.h.params(), (SpaceParams{2, p.t, m - 1}));
        EXPECT_EQ(compose_decomposition(d.g, d.h), f);
        // x_m g + h evaluated pointwise.
        const auto g = d.g.lift(), h = d.h.lift(), lf = f.lift();
        const Point top = Point{1} << (m - 1);
        for (Point x = 0; x < lf.size(); ++x) {
            const Point low = x & (top - 1);
            ASSERT_EQ(lf(x), ((x & top) ? g(low) : false) != h(low));
        }
    }
}

TEST(QuotientSpace, IndexRoundTripAndKeyOrder) {
    const QuotientSpace space({2, 3, 4});
    EXPECT_EQ(space.dim(), 10);
    for (std::uint64_t i = 0; i < space.cardinality(); ++i) {
        ASSERT_EQ(space.index_of(space.element(i)), i);
        if (i > 0) {
            ASSERT_LT(space.element(i - 1), space.element(i));
        }
    }
    EXPECT_THROW(QuotientSpace({1, 8, 8}), GuardError);
}

TEST(IndexAction, AgreesWithQApply) {
    std::mt19937_64 rng(4);
    for (const SpaceParams p : {SpaceParams{2, 3, 4}, SpaceParams{2, 3, 5}, SpaceParams{3, 4, 6}, SpaceParams{1, 2, 5}}) {
        const QuotientSpace space(p);
        for (int rep = 0; rep < 10; ++rep) {
            const AffineTransformation s = random_affine(p.m, rng);
            const IndexAction act(space, s);
            for (int k = 0; k < 20; ++k) {
                const QuotientFunction f = oracle::random_quotient(p, rng);
                ASSERT_EQ(act(space.index_of(f)), space.index_of(q_apply_affine(f, s)));
            }
            const QuotientFunction h = oracle::random_quotient(p, rng);
            const IndexAction tr = IndexAction::translation(space, space.index_of(h));
            const QuotientFunction f = oracle::random_quotient(p, rng);
            ASSERT_EQ(tr(space.index_of(f)), space.index_of(f ^ h));
        }
    }
}

TEST(QuotientDerivative, DegreeDrop) {
    std::mt19937_64 rng(5);
    for (int m = 3; m <= 8; ++m) {
        const SpaceParams p{2, 3, m};
        const QuotientFunction f = oracle::random_quotient(p, rng);
        for (int rep = 0; rep < 5; ++rep) {
            const Point v = static_cast<Point>(rng()) & point_mask(m);
            const QuotientFunction d = quotient_derivative(f, v);
            EXPECT_EQ(d.params(), (SpaceParams{1, 2, m}));
            const DegreeInfo info = degree_valuation(d.anf());
            if (!info.is_zero()) {
                EXPECT_LE(info.degree, 2);
            }
        }
    }
}

// Membership in Delta(f) against the definition: candidate equals the degree t-1
// part of some derivative. Exhaustive over all candidates in B(2,2,m).
TEST(DeltaMembership, ExhaustiveAgainstDefinition) {
    std::mt19937_64 rng(6);
    for (int m = 3; m <= 4; ++m)
        for (int rep = 0; rep < 8; ++rep) {
            const QuotientFunction f = oracle::random_quotient({2, 3, m}, rng);
            const QuotientSpace cand({2, 2, m});
            const BooleanFunction lift = f.lift();
            for (std::uint64_t c = 0; c < cand.cardinality(); ++c) {
                const QuotientFunction candidate = cand.element(c);
                bool reachable = false;
                for (Point a = 0; a < (Point{1} << m) && !reachable; ++a)
                    reachable = project(derivative(lift, a), 2, 2) == candidate;
                const auto got = delta_membership(f, candidate);
                ASSERT_EQ(got.has_value(), reachable);
                if (got) {
                    ASSERT_EQ(project(derivative(lift, *got), 2, 2), candidate);
                }
            }
        }
}

TEST(DeltaMembership, RejectsTopDegreeAndIgnoresLow) {
    const QuotientFunction f({2, 3, 4}, AnfPolynomial::monomial(4, 0b0111));
    EXPECT_FALSE(delta_membership(f, QuotientFunction({3, 3, 4}, AnfPolynomial::monomial(4, 0b0111))).has_value());
    // D_{e1}(x1x2x3) = x2x3; a linear tail is ignored.
    const QuotientFunction c({1, 2, 4}, AnfPolynomial::monomial(4, 0b0110) ^ AnfPolynomial::monomial(4, 0b1000));
    const auto a = delta_membership(f, c);
    ASSERT_TRUE(a.has_value());
    EXPECT_EQ(*a & 0b0111u, 0b0001u);
}
