#include <gtest/gtest.h>

#include <random>

#include "oracle.hpp"
#include "rmcover/bit_vector.hpp"
#include "rmcover/boolean_function.hpp"
#include "rmcover/group.hpp"

using namespace rmcover;

TEST(BitVector, BasicsAndOrdering) {
    BitVector a(130), b(130);
    EXPECT_TRUE(a.none());
    a.set(129);
    a.set(3);
    EXPECT_EQ(a.popcount(), 2u);
    EXPECT_EQ(a.highest_set_bit(), 129u);
    b.set(128);
    EXPECT_GT(a, b);
    b.flip(129);
    EXPECT_GT(b, a);
    a ^= a;
    EXPECT_TRUE(a.none());
}

TEST(BooleanFunction, ConstantsAndCoordinates) {
    const auto one = BooleanFunction::constant(3, true);
    EXPECT_EQ(weight(one), 8u);
    const auto x2 = BooleanFunction::coordinate(3, 1);
    for (Point x = 0; x < 8; ++x) EXPECT_EQ(x2(x), ((x >> 1) & 1U) != 0);
    EXPECT_THROW(BooleanFunction(0), std::invalid_argument);
    EXPECT_THROW(BooleanFunction(17), std::invalid_argument);
}

TEST(Mobius, InvolutionExhaustiveUpTo4) {
    for (int m = 1; m <= 4; ++m)
        for (std::uint32_t code = 0; code < (1U << (1U << m)); ++code) {
            BooleanFunction f(m);
            for (Point x = 0; x < f.size(); ++x)
                if ((code >> x) & 1U) f.set(x);
            const AnfPolynomial p = to_anf(f);
            ASSERT_EQ(to_function(p), f);
            ASSERT_EQ(oracle::table_of(BooleanFunction(m, p.coefficients())), oracle::anf(oracle::table_of(f)));
        }
}

TEST(Mobius, InvolutionRandomUpTo10) {
    std::mt19937_64 rng(5);
    for (int m = 5; m <= 10; ++m)
        for (int rep = 0; rep < 20; ++rep) {
            const BooleanFunction f = oracle::random_function(m, rng);
            const AnfPolynomial p = to_anf(f);
            EXPECT_EQ(to_function(p), f);
            if (m <= 8) {
                EXPECT_EQ(oracle::table_of(BooleanFunction(m, p.coefficients())), oracle::anf(oracle::table_of(f)));
            }
        }
}

TEST(Anf, MonomialConvention) {
    // x1 is the least significant index bit.
    const BooleanFunction f = to_function(AnfPolynomial::monomial(3, 0b001));
    EXPECT_EQ(f, BooleanFunction::coordinate(3, 0));
    const BooleanFunction g = to_function(AnfPolynomial::monomial(3, 0b110));
    for (Point x = 0; x < 8; ++x) EXPECT_EQ(g(x), x == 6 || x == 7);
}

TEST(Degree, MatchesOracle) {
    std::mt19937_64 rng(9);
    for (int m = 1; m <= 7; ++m)
        for (int rep = 0; rep < 30; ++rep) {
            BooleanFunction f = oracle::random_function(m, rng);
            if (rep % 3 == 0) f = to_function(AnfPolynomial::monomial(m, static_cast<Point>(rng()) & point_mask(m)));
            const DegreeInfo d = degree_valuation(to_anf(f));
            const auto t = oracle::table_of(f);
            if (oracle::weight(t) == 0) {
                EXPECT_TRUE(d.is_zero());
                continue;
            }
            EXPECT_EQ(d.degree, oracle::degree(t));
            EXPECT_EQ(d.valuation, oracle::valuation(t));
        }
    const DegreeInfo z = degree_valuation(AnfPolynomial(4));
    EXPECT_EQ(z.degree, DegreeInfo::kNegInfinity);
    EXPECT_EQ(z.valuation, DegreeInfo::kInfinity);
}

TEST(Dirac, WeightOneFullDegree) {
    for (int m = 1; m <= 6; ++m)
        for (Point a = 0; a < (Point{1} << m); ++a) {
            const BooleanFunction d = dirac(a, m);
            ASSERT_EQ(weight(d), 1u);
            ASSERT_TRUE(d(a));
            ASSERT_EQ(degree(d), m);
        }
    EXPECT_THROW(dirac(8, 3), std::invalid_argument);
}

TEST(ApplyAffine, Pointwise) {
    Rng rng(3);
    for (int m = 1; m <= 8; ++m)
        for (int rep = 0; rep < 10; ++rep) {
            const BooleanFunction f = oracle::random_function(m, rng);
            const AffineTransformation s = random_affine(m, rng);
            const BooleanFunction g = apply_affine(f, s);
            for (Point x = 0; x < f.size(); ++x) ASSERT_EQ(g(x), f(s(x)));
        }
}

TEST(Derivative, PointwiseIncludingWordShifts) {
    Rng rng(4);
    for (int m = 1; m <= 10; ++m)
        for (int rep = 0; rep < 12; ++rep) {
            const BooleanFunction f = oracle::random_function(m, rng);
            Point v = static_cast<Point>(rng()) & point_mask(m);
            if (rep % 2 == 0 && m > 6) v &= ~Point{63};
            const BooleanFunction d = derivative(f, v);
            for (Point x = 0; x < f.size(); ++x) ASSERT_EQ(d(x), f(x) != f(x ^ v)) << "m=" << m << " v=" << v;
        }
}

// Degree drops by at least one and D_v f is v-periodic; exhaustive at m <= 4.
TEST(Derivative, DegreeDropAndPeriodicity) {
    auto check = [](const BooleanFunction& f, Point v) {
        const BooleanFunction d = derivative(f, v);
        const int df = degree(f);
        const int dd = degree(d);
        if (df <= 0) {
            ASSERT_TRUE(d.truth_table().none());
        } else {
            ASSERT_LE(dd, df - 1);
        }
        ASSERT_TRUE(is_periodic(d, v));
    };
    for (int m = 1; m <= 4; ++m)
        for (std::uint32_t code = 0; code < (1U << (1U << m)); ++code) {
            BooleanFunction f(m);
            for (Point x = 0; x < f.size(); ++x)
                if ((code >> x) & 1U) f.set(x);
            for (Point v = 1; v < f.size(); ++v) check(f, v);
        }
    Rng rng(8);
    for (int m = 5; m <= 8; ++m)
        for (int rep = 0; rep < 30; ++rep) {
            const BooleanFunction f = oracle::random_function(m, rng);
            const Point v = 1 + static_cast<Point>(rng() % ((Point{1} << m) - 1));
            check(f, v);
        }
}

// D_{u+v} f = D_u f + D_v f o (x + u).
TEST(Derivative, Cocycle) {
    Rng rng(10);
    for (int m = 2; m <= 8; ++m)
        for (int rep = 0; rep < 20; ++rep) {
            const BooleanFunction f = oracle::random_function(m, rng);
            const Point u = static_cast<Point>(rng()) & point_mask(m);
            const Point v = static_cast<Point>(rng()) & point_mask(m);
            const BooleanFunction lhs = derivative(f, u ^ v);
            const BooleanFunction rhs = derivative(f, u) ^ apply_affine(derivative(f, v), AffineTransformation::translation_by(m, u));
            ASSERT_EQ(lhs, rhs);
        }
}

TEST(RestrictPeriodic, Pointwise) {
    Rng rng(12);
    for (int m = 2; m <= 8; ++m)
        for (int rep = 0; rep < 10; ++rep) {
            const Point v = 1 + static_cast<Point>(rng() % ((Point{1} << m) - 1));
            const BooleanFunction d = derivative(oracle::random_function(m, rng), v);
            const BooleanFunction r = restrict_periodic(d, v);
            ASSERT_EQ(r.vars(), m - 1);
            const int pivot = restriction_pivot(v);
            for (Point y = 0; y < r.size(); ++y) {
                const Point low = y & ((Point{1} << pivot) - 1);
                const Point x = low | ((y >> pivot) << (pivot + 1));
                ASSERT_EQ(r(y), d(x));
            }
        }
    BooleanFunction f = BooleanFunction::coordinate(3, 0);
    EXPECT_THROW(restrict_periodic(f, 1), std::invalid_argument);
}
