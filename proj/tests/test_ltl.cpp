#include "rcheck/buchi.hpp"
#include "rcheck/corpus.hpp"
#include "rcheck/ltl.hpp"

#include <gtest/gtest.h>

using namespace rcheck;

namespace {

// All lasso words with |prefix| + |loop| <= maxLen over `atoms` atoms.
template <class F>
void for_each_lasso(int atoms, int maxLen, F&& f) {
    const std::uint64_t letters = std::uint64_t{1} << atoms;
    for (int n = 1; n <= maxLen; ++n) {
        std::vector<std::uint64_t> word(static_cast<std::size_t>(n), 0);
        for (;;) {
            for (int cut = 0; cut < n; ++cut) {
                LassoWord w;
                w.prefix.assign(word.begin(), word.begin() + cut);
                w.loop.assign(word.begin() + cut, word.end());
                f(w);
            }
            std::size_t k = 0;
            while (k < word.size() && ++word[k] == letters) word[k++] = 0;
            if (k == word.size()) break;
        }
    }
}

const CompiledSystem& corpus() {
    static const CompiledSystem sys = compile_source(load_fixture("resource-allocation").model);
    return sys;
}

} // namespace

TEST(Ltl, ParsesCorpusProperties) {
    auto props = parse_property_file(load_fixture("resource-allocation").properties);
    ASSERT_GE(props.size(), 7u);
    EXPECT_EQ(props[0].name, "p1");
    ASSERT_TRUE(props[0].expectHolds.has_value());
    EXPECT_TRUE(*props[0].expectHolds);
    for (const auto& p : props) {
        LtlFormula f;
        ASSERT_NO_THROW(f = parse_ltl(p.formula, corpus())) << p.name;
        EXPECT_FALSE(f.atoms.empty());
    }
    auto p6 = std::find_if(props.begin(), props.end(), [](const auto& p) { return p.name == "p6"; });
    ASSERT_NE(p6, props.end());
    ASSERT_TRUE(p6->expectHolds.has_value());
    EXPECT_FALSE(*p6->expectHolds);
}

TEST(Ltl, AtomsAreLabelsOrStateExpressions) {
    auto f = parse_ltl("G (manager-sForward -> X machine3-rForward)", corpus());
    ASSERT_EQ(f.atoms.size(), 2u);
    ASSERT_TRUE(f.atoms[0].label.has_value());
    EXPECT_EQ(corpus().labelName(*f.atoms[0].label), "manager-sForward");
    EXPECT_EQ(f.root->op, LtlOp::Globally);

    auto g = parse_ltl("F (client1-mLink != empty)", corpus());
    ASSERT_EQ(g.atoms.size(), 1u);
    EXPECT_FALSE(g.atoms[0].label.has_value());
    EXPECT_EQ(g.atoms[0].expr->kind, ExprKind::Ne);

    auto h = parse_ltl("(!machine1-asgn & machine1-rForward) -> machine1-sConnect", corpus());
    EXPECT_EQ(h.atoms.size(), 3u);
    EXPECT_EQ(h.root->op, LtlOp::Implies);
}

TEST(Ltl, Precedence) {
    auto f = parse_abstract_ltl("p U q U r");
    EXPECT_EQ(print_ltl(f), "p U (q U r)");
    auto g = parse_abstract_ltl("G p -> F q & r | !X p");
    EXPECT_EQ(print_ltl(g), "G p -> ((F q & r) | !X p)");
    auto h = parse_abstract_ltl("F G p");
    EXPECT_EQ(h.root->op, LtlOp::Finally);
    EXPECT_EQ(h.root->lhs->op, LtlOp::Globally);
}

TEST(Ltl, UnknownNames) {
    try {
        parse_ltl("G client1-sFly", corpus());
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::UnknownLabel);
    }
    try {
        parse_ltl("G (client1-speed == 2)", corpus());
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::UnknownVariable);
    }
    EXPECT_THROW(parse_ltl("G (client1-cLink == 3)", corpus()), Error);
    EXPECT_THROW(parse_ltl("G (", corpus()), Error);
}

TEST(Ltl, ArithmeticAtomInParentheses) {
    auto sys = compile_source(load_fixture("ping").model);
    auto f = parse_ltl("G ((pinger-n + 1) <= 6)", sys);
    ASSERT_EQ(f.atoms.size(), 1u);
    EXPECT_EQ(f.root->op, LtlOp::Globally);
}

TEST(Ltl, PropertyFileErrors) {
    EXPECT_THROW(parse_property_file("p1 G p ;"), Error);
    EXPECT_THROW(parse_property_file("p1 : G p ; expect maybe"), Error);
    EXPECT_THROW(parse_property_file("a : p ;\na : q ;"), Error);
    auto ok = parse_property_file("# c\n\nq : F r ; expect holds  # trailing\n");
    ASSERT_EQ(ok.size(), 1u);
    EXPECT_TRUE(*ok[0].expectHolds);
    EXPECT_EQ(ok[0].pos.line, 3);
}

TEST(Buchi, TextbookShapes) {
    auto g = parse_abstract_ltl("G p");
    auto bg = ltl_to_buchi(g.root, g.atoms);
    EXPECT_EQ(bg.numStates, 1);
    ASSERT_EQ(bg.edges[0].size(), 1u);
    EXPECT_EQ(bg.edges[0][0].target, 0);
    EXPECT_EQ(bg.edges[0][0].pos, 1u);
    EXPECT_TRUE(bg.edges[0][0].accepting);

    auto f = parse_abstract_ltl("F p");
    auto bf = ltl_to_buchi(f.root, f.atoms);
    EXPECT_EQ(bf.numStates, 2);
    // The sink after p loops on TRUE and accepts.
    int sink = -1;
    for (const auto& e : bf.edges[0]) {
        if (e.pos == 1u) sink = e.target;
    }
    ASSERT_GE(sink, 0);
    ASSERT_EQ(bf.edges[static_cast<std::size_t>(sink)].size(), 1u);
    EXPECT_TRUE(bf.edges[static_cast<std::size_t>(sink)][0].accepting);
}

TEST(Buchi, UntilExamples) {
    auto f = parse_abstract_ltl("p U q");
    auto b = ltl_to_buchi(f.root, f.atoms);
    // atoms: p = bit 0, q = bit 1
    EXPECT_TRUE(accepts(b, {{}, {2}}));
    EXPECT_TRUE(accepts(b, {{1, 1, 2}, {0}}));
    EXPECT_FALSE(accepts(b, {{}, {1}}));
    EXPECT_FALSE(accepts(b, {{1, 0}, {2}}));
}

class BuchiOracle : public ::testing::TestWithParam<const char*> {};

TEST_P(BuchiOracle, AgreesWithRecursiveSemanticsOnAllShortLassos) {
    auto f = parse_abstract_ltl(GetParam());
    auto b = ltl_to_buchi(f.root, f.atoms);
    auto nb = ltl_to_buchi(ltl_unary(LtlOp::Not, f.root), f.atoms);
    std::size_t words = 0;
    for_each_lasso(static_cast<int>(f.atoms.size()), 6, [&](const LassoWord& w) {
        ++words;
        bool expected = eval_ltl(f.root, w);
        if (accepts(b, w) != expected) {
            ADD_FAILURE() << GetParam() << " disagrees on a word of length " << w.prefix.size() + w.loop.size();
        }
        if (accepts(nb, w) == expected) {
            ADD_FAILURE() << "!(" << GetParam() << ") disagrees on a word of length " << w.prefix.size() + w.loop.size();
        }
    });
    EXPECT_GT(words, 0u);
}

INSTANTIATE_TEST_SUITE_P(TwelveFormulas, BuchiOracle,
                         ::testing::Values("G p", "F p", "X p", "p U q", "G F p", "F G p", "G (p -> F q)",
                                           "!(p U q) | X r", "G (p -> X q)", "(p U q) U r", "F p & G !q",
                                           "X X p | G (q U r)"));
