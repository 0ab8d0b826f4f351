#include "gkm/gkm.hpp"

#include <gtest/gtest.h>

using namespace gkm;

TEST(MatrixFile, ParsesEntriesAndBases) {
    auto mf = parse_matrix_text("# mixed\n2\n2 -1\n-1 -2\nbases:\nlambda 1 1\nmu 1/2 0\n");
    ASSERT_EQ(mf.entries.size(), 2u);
    EXPECT_EQ(mf.entries[1][1], -2);
    ASSERT_EQ(mf.bases.size(), 2u);
    EXPECT_EQ(mf.bases[1].name, "mu");
    EXPECT_EQ(mf.bases[1].pairings[0], Rational(1, 2));
}

TEST(MatrixFile, RoundTrip) {
    auto mf = parse_matrix_text("2\n2 -1\n-2 -2\nbases:\nlambda 1 0\n");
    auto again = parse_matrix_text(format_matrix_file(mf));
    EXPECT_EQ(again.entries, mf.entries);
    ASSERT_EQ(again.bases.size(), 1u);
    EXPECT_EQ(again.bases[0].pairings, mf.bases[0].pairings);
}

TEST(MatrixFile, ErrorsCarryPosition) {
    try {
        parse_matrix_text("2\n2 -1\n-1 x\n");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3u);
        EXPECT_EQ(e.column(), 4u);
    }
    EXPECT_THROW(parse_matrix_text("2\n2 -1\n"), ParseError);
    EXPECT_THROW(parse_matrix_text(""), ParseError);
}

TEST(WeightText, FormatAndParse) {
    auto cp = context_with({{2, -1}, {-1, -2}}, {{"lambda", {1, 1}}});
    const auto& ctx = *cp;
    Weight w = ctx.base_weight("lambda") - Rational(2) * ctx.simple_root(0) + Rational(1, 2) * ctx.simple_root(1);
    EXPECT_EQ(format_weight(ctx, w), "lambda - 2*a1 + 1/2*a2");
    EXPECT_EQ(parse_weight(ctx, "lambda - 2*a1 + 1/2*a2"), w);
    EXPECT_EQ(format_weight(ctx, ctx.zero()), "0");
    EXPECT_EQ(parse_weight(ctx, "0"), ctx.zero());
    EXPECT_EQ(parse_weight(ctx, "-rho"), -ctx.rho());
    EXPECT_THROW(parse_weight(ctx, "a3"), std::invalid_argument);
    EXPECT_THROW(parse_weight(ctx, "nu"), UnknownBase);
}

TEST(Rationals, ParseStrictly) {
    Rational q;
    EXPECT_TRUE(parse_rational("-3/6", q));
    EXPECT_EQ(q, Rational(-1, 2));
    EXPECT_FALSE(parse_rational("1/0", q));
    EXPECT_FALSE(parse_rational("1.5", q));
    EXPECT_FALSE(parse_rational("", q));
}
