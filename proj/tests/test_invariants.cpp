#include "gkm/gkm.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace gkm;

TEST(Suite, BundledMatricesPass) {
    std::ostringstream os;
    SuiteOptions opt;
    opt.stop_on_first = false;
    EXPECT_TRUE(run_suite(os, opt)) << os.str();
    EXPECT_EQ(os.str().find("FAIL"), std::string::npos);
}

TEST(Suite, SeedOnlyChangesSampling) {
    std::ostringstream a, b;
    SuiteOptions opt;
    opt.seed = 7;
    EXPECT_TRUE(run_suite(a, opt));
    opt.seed = 7;
    run_suite(b, opt);
    EXPECT_EQ(a.str(), b.str());
}

TEST(Embedding, EveryIndexOfMixedMatrix) {
    for (std::size_t i = 0; i < 2; ++i) {
        auto c = check_embedding({{2, -1}, {-1, -2}}, i);
        EXPECT_TRUE(c.ok()) << c.line();
        EXPECT_GT(c.checked, 0u);
    }
}

TEST(TensorCheck, RankTwoSplits) {
    auto cp = context_with({{2, -1}, {-1, -2}}, {{"lambda", {1, 0}}, {"mu", {0, 1}}});
    auto c = check_tensor(*cp, cp->base_weight("lambda"), cp->base_weight("mu"), 3);
    EXPECT_TRUE(c.ok()) << c.line();
}

TEST(CheckOutcomeText, Lines) {
    CheckOutcome c("sample");
    c.checked = 3;
    EXPECT_EQ(c.line(), "ok   sample (3 checks)");
    c.fail("broken");
    EXPECT_EQ(c.line(), "FAIL sample (3 checks, 1 failures; first: broken)");
}
