#include <gtest/gtest.h>

#include <random>

#include "teamlogic/formula.hpp"
#include "teamlogic/parser.hpp"
#include "teamlogic/props.hpp"

using namespace tl;

namespace {

Term v(const std::string& n) { return Term::var(n); }
Term c(const std::string& n) { return Term::cst(n); }
std::set<std::string> S(std::initializer_list<std::string> xs) { return xs; }

}  // namespace

TEST(FreeVars, IndependenceAtomListsAreFree) { EXPECT_EQ(free_vars(ind({"x"}, {"z"}, {"y"})), S({"x", "y", "z"})); }

TEST(FreeVars, QuantifierBinds) { EXPECT_EQ(free_vars(exists("x", dep({"x"}, {"y"}))), S({"y"})); }

TEST(FreeVars, BotHasNone) { EXPECT_TRUE(free_vars(bot()).empty()); }

TEST(FreeVars, InclusionAndConstants) {
    EXPECT_EQ(free_vars(inc({"x", "y"}, {"u", "v"})), S({"x", "y", "u", "v"}));
    EXPECT_EQ(free_vars(eq(v("x"), c("a"))), S({"x"}));
    EXPECT_EQ(free_vars(forall("x", sor(eq(v("x"), v("y")), exists("y", eq(v("y"), v("z")))))), S({"y", "z"}));
}

TEST(Substitute, VariableToConstant) { EXPECT_TRUE(equal(substitute(eq(v("x"), v("y")), {{"x", c("c")}}), eq(c("c"), v("y")))); }

TEST(Substitute, AvoidsCapture) {
    Formula f = substitute(exists("y", eq(v("x"), v("y"))), {{"x", v("y")}});
    ASSERT_EQ(f->op, Op::Exists);
    EXPECT_NE(f->name, "y");
    EXPECT_TRUE(equal(f->l, eq(v("y"), v(f->name))));
}

TEST(Substitute, ConstantIntoDependenceAtomRejected) {
    EXPECT_THROW(substitute(dep({"x"}, {"y"}), {{"x", c("c")}}), LogicError);
}

TEST(Substitute, RenamesInsideAtomLists) {
    EXPECT_TRUE(equal(substitute(inc({"x"}, {"y"}), {{"x", v("z")}}), inc({"z"}, {"y"})));
    EXPECT_TRUE(equal(substitute(exists("x", dep({"x"}, {"y"})), {{"x", v("z")}}), exists("x", dep({"x"}, {"y"}))));
}

TEST(FoNegate, DeMorgan) {
    Formula f = conj(eq(v("x"), v("y")), rel_atom("R", {v("x")}));
    EXPECT_TRUE(equal(fo_negate(f), sor(neq(v("x"), v("y")), neg_rel_atom("R", {v("x")}))));
}

TEST(FoNegate, QuantifierDuality) {
    EXPECT_TRUE(equal(fo_negate(forall("x", eq(v("x"), v("x")))), exists("x", neq(v("x"), v("x")))));
}

TEST(FoNegate, RejectsDependence) { EXPECT_THROW(fo_negate(dep({"x"}, {"y"})), LogicError); }

TEST(FoNegate, BotAndTopSwap) {
    EXPECT_TRUE(equal(fo_negate(bot()), top()));
    EXPECT_TRUE(equal(fo_negate(top()), bot()));
}

TEST(IsFirstOrder, Examples) {
    EXPECT_TRUE(is_first_order(eq(v("x"), v("y"))));
    EXPECT_FALSE(is_first_order(dep({"x"}, {"y"})));
    EXPECT_FALSE(is_first_order(bor(eq(v("x"), v("y")), bot())));
    EXPECT_FALSE(is_first_order(weak_neg(eq(v("x"), v("y")))));
    EXPECT_FALSE(is_first_order(exists1("x", eq(v("x"), v("y")))));
}

TEST(ExpandSugar, ImplicationIsNegatedAntecedentOrConsequent) {
    Formula f = impl(eq(v("x"), v("y")), eq(v("u"), v("v")));
    EXPECT_TRUE(equal(expand_sugar(f), sor(neq(v("x"), v("y")), eq(v("u"), v("v")))));
}

TEST(ExpandSugar, SequenceEquality) {
    EXPECT_TRUE(equal(expand_sugar(seq_eq({"x", "y"}, {"u", "v"})), conj(eq(v("x"), v("u")), eq(v("y"), v("v")))));
}

TEST(ExpandSugar, SequenceInequality) {
    EXPECT_TRUE(equal(expand_sugar(seq_neq({"x", "y"}, {"u", "v"})), sor(neq(v("x"), v("u")), neq(v("y"), v("v")))));
}

TEST(ExpandSugar, NonFirstOrderAntecedentRejected) {
    EXPECT_THROW(expand_sugar(impl(dep({"x"}, {"y"}), eq(v("u"), v("v")))), LogicError);
}

TEST(FormulaProperty, DoubleNegationIsIdentity) {
    std::mt19937_64 rng(7);
    RandomFormulaOptions o;
    o.fragment = Fragment::FirstOrder;
    for (int i = 0; i < 500; ++i) {
        Formula f = random_formula(rng, o);
        EXPECT_TRUE(equal(fo_negate(fo_negate(f)), f)) << print_formula(f);
    }
}

TEST(FormulaProperty, SubstitutionUpdatesFreeVariables) {
    std::mt19937_64 rng(11);
    RandomFormulaOptions o;
    o.fragment = Fragment::Independence;
    for (int i = 0; i < 500; ++i) {
        Formula f = random_formula(rng, o);
        auto fv = free_vars(f);
        if (!fv.count("x")) continue;
        auto expect = fv;
        expect.erase("x");
        expect.insert("q");
        EXPECT_EQ(free_vars(substitute(f, {{"x", v("q")}})), expect) << print_formula(f);
        auto withc = fv;
        withc.erase("x");
        if (is_first_order(f)) EXPECT_EQ(free_vars(substitute(f, {{"x", c("k")}})), withc);
    }
}
