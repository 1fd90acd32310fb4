#include <gtest/gtest.h>

#include <random>

#include "oracle.hpp"
#include "teamlogic/genatom.hpp"
#include "teamlogic/negation.hpp"
#include "teamlogic/parser.hpp"
#include "teamlogic/props.hpp"
#include "teamlogic/semantics.hpp"

using namespace tl;

namespace {

const Model kM = grid_model();

Formula P(const std::string& s) { return parse_formula(s); }

const std::vector<std::string> kCorpus = {
    "x = y",
    "x != y \\/ P(z)",
    "A x. E y. x != y",
    "E x. x = x",
    "bot",
    "top",
    "=(x;y)",
    "=(;x)",
    "=(x,y;z)",
    "=(x;y,z)",
    "inc(x;y)",
    "inc(x,y;y,z)",
    "ind(x;;y)",
    "ind(x;z;y)",
    "ind(x,y;;z)",
    "=(x;y) /\\ inc(y;z)",
    "x = y || ind(x;;z)",
    "E1 z. =(z;x)",
    "A1 z. inc(x;z)",
    "=(x;y) || =(y;x) /\\ x != z",
    "wneg =(x;y)",
    "wneg (x = y) /\\ inc(z;x)",
    "A1 x. (=(x;y) || P(x))",
};

std::vector<Team> grid() { return grid_teams(kM, {"x", "y", "z"}, 4); }

}  // namespace

TEST(Negatable, Examples) {
    EXPECT_TRUE(is_negatable_fragment(P("=(x;y)")).inFragment);
    auto r = is_negatable_fragment(P("E x. =(x;y)"));
    EXPECT_FALSE(r.inFragment);
    EXPECT_FALSE(r.reason.empty());
    EXPECT_TRUE(is_negatable_fragment(P("x = y || ind(x;;y)")).inFragment);
}

TEST(Negatable, SplitOrAndQuantifiersOverAtomsExcluded) {
    EXPECT_FALSE(is_negatable_fragment(P("=(x;y) \\/ x = y")).inFragment);
    EXPECT_FALSE(is_negatable_fragment(P("A z. inc(x;z)")).inFragment);
    EXPECT_TRUE(is_negatable_fragment(P("A z. (x = z \\/ x != z)")).inFragment);
    for (const auto& s : kCorpus) EXPECT_TRUE(is_negatable_fragment(P(s)).inFragment) << s;
}

TEST(Wneg, EqualityInstance) {
    Formula f = wneg(P("x = y"));
    ASSERT_EQ(f->op, Op::Exists);
    ASSERT_EQ(f->l->op, Op::Exists);
    std::string w1 = f->name, w2 = f->l->name;
    EXPECT_NE(w1, w2);
    Formula body = f->l->l;
    EXPECT_TRUE(equal(body, conj(inc({w1, w2}, {"x", "y"}), neq(Term::var(w1), Term::var(w2)))));
}

TEST(Wneg, BooleanDisjunctionDualisesToConjunction) {
    Formula a = P("=(x;y)"), b = P("inc(x;z)");
    EXPECT_TRUE(equal(wneg(bor(a, b)), conj(wneg(a), wneg(b))));
    EXPECT_TRUE(equal(wneg(conj(a, b)), bor(wneg(a), wneg(b))));
}

TEST(Wneg, QuantifierDuals) {
    Formula f = wneg(P("E1 z. =(z;x)"));
    EXPECT_EQ(f->op, Op::Forall1);
    EXPECT_EQ(wneg(P("A1 z. =(z;x)"))->op, Op::Exists1);
}

TEST(Wneg, SentenceIsClassicalNegation) { EXPECT_TRUE(equal(wneg(P("A x. E y. x != y")), P("E x. A y. x = y"))); }

TEST(Wneg, OutOfFragmentCarriesReport) {
    try {
        wneg(P("E x. =(x;y)"));
        FAIL();
    } catch (const NotNegatable& e) {
        EXPECT_FALSE(e.report.inFragment);
    }
}

TEST(Wneg, ResultHasNoWeakNegation) {
    std::function<bool(const Formula&)> has = [&](const Formula& f) {
        return f && (f->op == Op::WNeg || has(f->l) || has(f->r));
    };
    for (const auto& s : kCorpus) EXPECT_FALSE(has(wneg(P(s)))) << s;
}

TEST(Wneg, MatchesWeakNegationClauseOnGrid) {
    auto teams = grid();
    for (const auto& s : kCorpus) {
        Formula f = P(s), n = wneg(f);
        for (const auto& x : teams) EXPECT_EQ(eval(kM, x, n), oracle::sat(kM, x, weak_neg(f))) << s;
    }
}

TEST(Wneg, RandomNegatableFormulas) {
    Model m = grid_model();
    std::mt19937_64 rng(43);
    RandomFormulaOptions o;
    o.fragment = Fragment::Full;
    o.depth = 3;
    auto teams = grid_teams(m, {"x", "y"}, 4);
    int tried = 0;
    for (int i = 0; i < 400 && tried < 60; ++i) {
        Formula f = random_formula(rng, o);
        if (!is_negatable_fragment(f).inFragment) continue;
        ++tried;
        Formula n = wneg(f);
        for (const auto& x : teams) EXPECT_EQ(eval(m, x, n), eval(m, x, weak_neg(f))) << print_formula(f);
    }
    EXPECT_GE(tried, 20);
}

TEST(Definability, UniqueQuantifierAndBooleanDisjunctionDefinable) {
    const Term w = Term::var("w"), u = Term::var("u");
    auto teams = grid_teams(kM, {"x", "y"}, 4);
    for (const char* a : {"=(x;y)", "inc(x;y)", "x = y", "ind(x;;y)"})
        for (const char* b : {"=(y;x)", "x != y", "inc(y;x)"}) {
            Formula f = P(a), g = P(b);
            Formula e1 = exists1("x", f), e1_def = exists("x", conj(dep({}, {"x"}), f));
            Formula bd = exists("w", exists("u", conj(conj(conj(dep({}, {"w"}), dep({}, {"u"})), sor(eq(w, u), f)),
                                                      sor(neq(w, u), g))));
            for (const auto& x : teams) {
                EXPECT_EQ(oracle::sat(kM, x, e1), oracle::sat(kM, x, e1_def));
                EXPECT_EQ(eval(kM, x, e1), oracle::sat(kM, x, e1_def));
                EXPECT_EQ(eval(kM, x, bor(f, g)), oracle::sat(kM, x, bd)) << a << " " << b;
            }
        }
}
