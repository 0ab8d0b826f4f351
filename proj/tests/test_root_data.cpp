#include "gkm/gkm.hpp"

#include <gtest/gtest.h>

using namespace gkm;

namespace {

ContextPtr rank1(std::int64_t a, std::int64_t p) { return context_with({{a}}, {{"lambda", {p}}}); }

}  // namespace

TEST(ValidateMatrix, RealRankOne) {
    auto m = validate_matrix({{2}});
    EXPECT_EQ(m.rank(), 1u);
    EXPECT_EQ(m.real_indices(), std::vector<std::size_t>{0});
    EXPECT_TRUE(m.imaginary_indices().empty());
}

TEST(ValidateMatrix, ImaginaryRankOne) {
    auto m = validate_matrix({{-1}});
    EXPECT_EQ(m.imaginary_indices(), std::vector<std::size_t>{0});
    EXPECT_TRUE(m.real_indices().empty());
}

TEST(ValidateMatrix, AsymmetricZeroNamesOffendingEntry) {
    try {
        validate_matrix({{2, -1}, {0, -2}});
        FAIL() << "expected rejection";
    } catch (const MatrixError& e) {
        EXPECT_EQ(e.kind(), MatrixError::Kind::AsymmetricZero);
        EXPECT_EQ(e.label(), "AsymmetricZero(1,2)");
        EXPECT_EQ(e.axiom(), 3);
    }
}

TEST(ValidateMatrix, DiagonalAndSignAxioms) {
    try {
        validate_matrix({{1}});
        FAIL();
    } catch (const MatrixError& e) {
        EXPECT_EQ(e.kind(), MatrixError::Kind::AxisViolation);
        EXPECT_EQ(e.axiom(), 1);
    }
    try {
        validate_matrix({{2, 1}, {-1, 2}});
        FAIL();
    } catch (const MatrixError& e) {
        EXPECT_EQ(e.label(), "AxisViolation(1,2)");
        EXPECT_EQ(e.axiom(), 2);
    }
    // Real rows need a_ij / integrality only through integers; -3 is fine.
    EXPECT_NO_THROW(validate_matrix({{2, -3}, {-1, -4}}));
}

TEST(ValidateMatrix, ZeroDiagonalBehindFlag) {
    EXPECT_NO_THROW(validate_matrix({{0}}, true));
    EXPECT_THROW(validate_matrix({{0}}, false), MatrixError);
}

TEST(ValidateMatrix, NonSquareRejected) { EXPECT_THROW(validate_matrix({{2, -1}}), std::invalid_argument); }

TEST(Pairing, RankOneImaginary) {
    auto cp = rank1(-1, 2);
    const auto& ctx = *cp;
    const Weight lambda = ctx.base_weight("lambda");
    const Weight alpha = ctx.simple_root(0);
    EXPECT_EQ(ctx.pairing(0, lambda), 2);
    EXPECT_EQ(ctx.pairing(0, lambda - alpha), 3);
    EXPECT_EQ(ctx.pairing(0, ctx.rho()), Rational(-1, 2));
}

TEST(Pairing, UnknownBase) {
    auto cp = rank1(-1, 2);
    EXPECT_THROW(cp->base_weight("nu"), UnknownBase);
}

TEST(Pairing, Linearity) {
    auto cp = context_with({{2, -1}, {-1, -2}}, {{"lambda", {1, 1}}, {"mu", {1, 0}}});
    const auto& ctx = *cp;
    const Weight x = ctx.base_weight("lambda") - Rational(3, 2) * ctx.simple_root(1);
    const Weight y = ctx.base_weight("mu") + ctx.simple_root(0);
    for (std::size_t i = 0; i < 2; ++i)
        EXPECT_EQ(ctx.pairing(i, Rational(2, 3) * x + y), Rational(2, 3) * ctx.pairing(i, x) + ctx.pairing(i, y));
}

TEST(Reflect, Examples) {
    auto cp = rank1(-1, 2);
    const auto& ctx = *cp;
    const Weight lambda = ctx.base_weight("lambda");
    const Weight alpha = ctx.simple_root(0);
    EXPECT_EQ(reflect(ctx, 0, lambda), lambda - Rational(2) * alpha);
    EXPECT_EQ(reflect_inverse(ctx, 0, lambda - Rational(2) * alpha), lambda);

    auto cp2 = rank1(2, 2);
    const Weight l2 = cp2->base_weight("lambda");
    EXPECT_EQ(reflect(*cp2, 0, l2 - cp2->simple_root(0)), l2 - cp2->simple_root(0));
    EXPECT_THROW(reflect_inverse(*cp2, 0, l2), std::domain_error);
}

TEST(Reflect, InverseBothWays) {
    auto cp = context_with({{2, -1}, {-1, -2}}, {{"lambda", {1, 1}}});
    const auto& ctx = *cp;
    const Weight w = ctx.base_weight("lambda") - Rational(1, 3) * ctx.simple_root(0) + ctx.rho();
    EXPECT_EQ(reflect_inverse(ctx, 1, reflect(ctx, 1, w)), w);
    EXPECT_EQ(reflect(ctx, 1, reflect_inverse(ctx, 1, w)), w);
}

TEST(Reflect, RealIsInvolutionImaginaryIsNot) {
    auto cp = context_with({{2, -1}, {-1, -2}}, {{"lambda", {1, 1}}});
    const auto& ctx = *cp;
    const Weight w = ctx.base_weight("lambda");
    EXPECT_EQ(reflect(ctx, 0, reflect(ctx, 0, w)), w);
    Weight x = w;
    for (int k = 1; k <= 5; ++k) {
        x = reflect(ctx, 1, x);
        EXPECT_FALSE(x == w) << "imaginary reflection returned after " << k << " steps";
    }
}

TEST(Reflect, ImaginaryCorootNonPositiveOnRoots) {
    auto cp = context_with({{2, -1}, {-1, -2}});
    for (std::size_t j = 0; j < 2; ++j) EXPECT_LE(cp->pairing(1, cp->simple_root(j)), 0);
}

TEST(Dominance, Examples) {
    auto c1 = rank1(-1, 2);
    EXPECT_TRUE(is_dominant(*c1, -c1->simple_root(0)));
    EXPECT_TRUE(is_dominant(*c1, c1->base_weight("lambda") - Rational(2) * c1->simple_root(0)));
    auto c2 = rank1(2, 2);
    EXPECT_FALSE(is_dominant(*c2, c2->base_weight("lambda") - Rational(2) * c2->simple_root(0)));
    EXPECT_TRUE(is_P_plus(*c2, c2->base_weight("lambda")));
    EXPECT_FALSE(is_P_plus(*c2, Rational(1, 2) * c2->base_weight("lambda")));
}

TEST(Weights, IntegralityAndDepth) {
    auto cp = rank1(-1, 2);
    const auto& ctx = *cp;
    const Weight lambda = ctx.base_weight("lambda");
    EXPECT_TRUE(ctx.in_P(lambda - ctx.simple_root(0)));
    EXPECT_FALSE(ctx.in_P(lambda - Rational(1, 2) * ctx.simple_root(0)));
    EXPECT_EQ(depth_below(lambda, lambda - Rational(6) * ctx.simple_root(0)), 6);
    EXPECT_THROW(depth_below(lambda, ctx.rho()), std::invalid_argument);
    EXPECT_TRUE((lambda - (lambda - ctx.simple_root(0))).in_Q_plus());
}
