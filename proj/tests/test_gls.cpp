#include "gkm/gkm.hpp"

#include <gtest/gtest.h>

using namespace gkm;

namespace {

Rational q(long a, long b = 1) { return Rational(a, b); }

struct Rank1 {
    ContextPtr cp;
    Weight lambda, alpha;
    Rank1(std::int64_t a, std::int64_t p) : cp(context_with({{a}}, {{"lambda", {p}}})) {
        lambda = cp->base_weight("lambda");
        alpha = cp->simple_root(0);
    }
    const WeightContext& ctx() const { return *cp; }
    // r^s lambda
    Weight r(std::size_t s) const { return apply_word(*cp, TWord(s, 0), lambda); }
};

}  // namespace

TEST(GlsF, ImaginaryChainClosedForm) {
    Rank1 c(-1, 2);
    auto p1 = gls_f(c.ctx(), 0, straight_gls(c.lambda));
    ASSERT_TRUE(p1);
    EXPECT_EQ(*p1, make_gls(c.lambda, {c.r(1), c.lambda}, {q(0), q(1, 2), q(1)}));
    auto p2 = gls_f(c.ctx(), 0, *p1);
    ASSERT_TRUE(p2);
    EXPECT_EQ(*p2, make_gls(c.lambda, {c.r(2), c.r(1), c.lambda}, {q(0), q(1, 4), q(1, 2), q(1)}));
}

TEST(GlsF, RealStepDropsMergedSegment) {
    Rank1 c(2, 2);
    auto p = gls_f(c.ctx(), 0, make_gls(c.lambda, {c.r(1), c.lambda}, {q(0), q(1, 2), q(1)}));
    ASSERT_TRUE(p);
    EXPECT_EQ(*p, make_gls(c.lambda, {c.r(1)}, {q(0), q(1)}));
    EXPECT_EQ(p->weights, std::vector<Weight>{c.r(1)});
    EXPECT_EQ(p->breaks, (std::vector<Rational>{q(0), q(1)}));
    EXPECT_FALSE(gls_f(c.ctx(), 0, *p));
}

TEST(GlsE, Examples) {
    Rank1 c(-1, 2);
    const GLSPath top = straight_gls(c.lambda);
    auto p1 = *gls_f(c.ctx(), 0, top);
    auto up = gls_e(c.ctx(), 0, p1);
    ASSERT_TRUE(up);
    EXPECT_EQ(*up, top);
    // Ambient e is nonzero but leaves the crystal.
    EXPECT_TRUE(apply_e(c.ctx(), 0, render(c.ctx(), top)));
    EXPECT_FALSE(gls_e(c.ctx(), 0, top));

    Rank1 r(2, 2);
    EXPECT_FALSE(gls_e(r.ctx(), 0, straight_gls(r.lambda)));
    auto down = *gls_f(r.ctx(), 0, straight_gls(r.lambda));
    EXPECT_EQ(gls_e_real(r.ctx(), 0, down), std::optional<GLSPath>(straight_gls(r.lambda)));
}

TEST(VerifyGls, MembershipRankOne) {
    Rank1 c(-1, 2);
    auto ok = verify_gls(c.ctx(), make_gls(c.lambda, {c.r(1), c.lambda}, {q(0), q(1, 2), q(1)}));
    EXPECT_TRUE(ok) << ok.reason;
    EXPECT_EQ(ok.chains.size(), 1u);
    auto bad = verify_gls(c.ctx(), make_gls(c.lambda, {c.r(1)}, {q(0), q(1)}));
    EXPECT_FALSE(bad);
    EXPECT_TRUE(bad.failing_pair.has_value());
    Rank1 one(-1, 1);
    EXPECT_TRUE(verify_gls(one.ctx(), make_gls(one.lambda, {one.r(1)}, {q(0), q(1)})));
}

TEST(VerifyGls, RejectsMalformedBreaks) {
    Rank1 c(-1, 2);
    GLSPath raw{c.lambda, {c.r(1), c.lambda}, {q(0), q(1, 2), q(1, 2)}};
    EXPECT_FALSE(verify_gls(c.ctx(), raw));
    EXPECT_THROW(make_gls(c.lambda, {c.lambda}, {q(0), q(1, 2)}), std::invalid_argument);
}

TEST(Enumerate, ImaginaryChain) {
    Rank1 c(-1, 2);
    auto g = enumerate(c.ctx(), c.lambda, 3);
    ASSERT_EQ(g.size(), 4u);
    for (std::size_t s = 0; s < 4; ++s) {
        EXPECT_EQ(g.nodes[s].wt, c.lambda - Rational(static_cast<long>(s)) * c.alpha);
        EXPECT_EQ(g.nodes[s].depth, s);
        if (s < 3) {
            EXPECT_TRUE(g.nodes[s].f[0].is_edge());
            EXPECT_EQ(g.nodes[s].f[0].target, s + 1);
        }
    }
    EXPECT_TRUE(g.nodes[3].frontier);
    EXPECT_EQ(g.nodes[3].f[0].kind, LinkKind::Cut);
}

TEST(Enumerate, RealRankOne) {
    Rank1 c(2, 2);
    auto g = enumerate(c.ctx(), c.lambda, 4);
    ASSERT_EQ(g.size(), 3u);
    EXPECT_EQ(g.nodes[2].wt, c.r(1));
    EXPECT_EQ(g.nodes[2].f[0].kind, LinkKind::None);
    EXPECT_EQ(g.edge_count(), 2u);
}

TEST(Enumerate, RejectsNonDominant) {
    Rank1 c(2, 2);
    EXPECT_THROW(enumerate(c.ctx(), -c.lambda, 2), std::domain_error);
}

TEST(Enumerate, MixedRankTwoMatchesOracle) {
    auto cp = context_with({{2, -1}, {-1, -2}}, {{"lambda", {1, 1}}});
    auto g = enumerate(*cp, cp->base_weight("lambda"), 2);
    auto c = check_oracle(*cp, g);
    EXPECT_TRUE(c.ok()) << c.line();
    EXPECT_GT(c.checked, 0u);
    for (const auto& x : {check_gls_nodes(*cp, g), check_highest_weight(*cp, g), check_crystal(*cp, g, "crystal")})
        EXPECT_TRUE(x.ok()) << x.line();
}

TEST(Enumerate, ParallelMatchesSequential) {
    auto cp = context_with({{2, -1}, {-1, -2}}, {{"lambda", {1, 1}}});
    auto a = enumerate(*cp, cp->base_weight("lambda"), 4, false);
    auto b = enumerate(*cp, cp->base_weight("lambda"), 4, true);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t k = 0; k < a.size(); ++k) EXPECT_EQ(a.nodes[k].element, b.nodes[k].element);
    std::function<std::string(const GLSPath&)> label = [](const GLSPath& p) { return format_breaks(p); };
    EXPECT_EQ(export_dot(a, label), export_dot(b, label));
}

TEST(Enumerate, InGraphImaginaryE) {
    Rank1 c(-1, 2);
    auto g = enumerate(c.ctx(), c.lambda, 3);
    EXPECT_FALSE(gls_e_in(g, 0, g.nodes[0].element));
    EXPECT_EQ(gls_e_in(g, 0, g.nodes[2].element), std::optional<GLSPath>(g.nodes[1].element));
    EXPECT_THROW(gls_e_in(g, 0, straight_gls(Rational(2) * c.lambda)), std::invalid_argument);
}

TEST(NonStrict, WitnessAtTop) {
    Rank1 c(-1, 2);
    auto g = enumerate(c.ctx(), c.lambda, 3);
    auto w = nonstrict_witnesses(c.ctx(), g);
    ASSERT_FALSE(w.empty());
    EXPECT_EQ(w.front(), (std::pair<std::size_t, std::size_t>{0, 0}));
}

TEST(Join, StraightPathsGiveConcatenation) {
    auto cp = context_with({{2, -1}, {-1, -2}}, {{"lambda", {1, 0}}, {"mu", {0, 1}}});
    const auto& ctx = *cp;
    const Weight l = ctx.base_weight("lambda"), m = ctx.base_weight("mu");
    auto out = try_properly_join(ctx, straight_gls(Rational(2) * l), straight_gls(Rational(2) * m), q(1, 2), q(1, 2));
    ASSERT_TRUE(out.accepted());
    EXPECT_EQ(*out.path, concatenate(ctx, linear_path(ctx, l), linear_path(ctx, m), q(1, 2)));
    EXPECT_TRUE(out.certificate.condition1);
    EXPECT_TRUE(out.certificate.condition2_restricted);
}

TEST(Join, SelfJoinIsIdentity) {
    auto cp = context_with({{2, -1}, {-1, -2}}, {{"lambda", {1, 1}}});
    const auto& ctx = *cp;
    const GLSPath p = straight_gls(ctx.base_weight("lambda"));
    auto out = try_properly_join(ctx, p, p, q(1, 3), q(1, 3));
    ASSERT_TRUE(out.accepted());
    EXPECT_EQ(*out.path, render(ctx, p));
}

TEST(Join, MovedRightPathIsRejected) {
    auto cp = context_with({{-1}}, {{"lambda", {1}}, {"mu", {1}}});
    const auto& ctx = *cp;
    const Weight l2 = Rational(2) * ctx.base_weight("lambda");
    const GLSPath right = *gls_f(ctx, 0, straight_gls(Rational(2) * ctx.base_weight("mu")));
    auto out = try_properly_join(ctx, straight_gls(l2), right, q(1, 4), q(1, 4));
    EXPECT_FALSE(out.accepted());
    EXPECT_EQ(out.failed_condition, 1);
    EXPECT_EQ(out.certificate.condition2_full, out.certificate.condition2_restricted);
    try {
        properly_join(ctx, straight_gls(l2), right, q(1, 4), q(1, 4));
        FAIL();
    } catch (const JoinRejected& e) {
        EXPECT_EQ(e.condition(), 1);
    }
    EXPECT_THROW(try_properly_join(ctx, straight_gls(l2), right, q(1, 2), q(1, 2)), std::invalid_argument);
}

TEST(GlsText, Format) {
    Rank1 c(-1, 2);
    auto p1 = *gls_f(c.ctx(), 0, straight_gls(c.lambda));
    EXPECT_EQ(format_gls(c.ctx(), p1), "(lambda - 2*a1, lambda; 0, 1/2, 1)");
    EXPECT_EQ(format_breaks(p1), "0 1/2 1");
}
