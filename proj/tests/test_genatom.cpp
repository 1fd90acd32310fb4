#include <gtest/gtest.h>

#include <random>

#include "oracle.hpp"
#include "teamlogic/eso.hpp"
#include "teamlogic/genatom.hpp"
#include "teamlogic/parser.hpp"
#include "teamlogic/props.hpp"
#include "teamlogic/semantics.hpp"

using namespace tl;

namespace {

const Model kM = make_model({"a", "b"});
const AtomRegistry kReg = register_builtin_atoms();

// one native instance per builtin atom, over x, y, z with repetitions where the width demands it
const std::vector<std::pair<std::string, std::string>> kNative = {
    {"dep0", "=(;x)"},
    {"dep0_2", "=(;x,y)"},
    {"dep1", "=(x;y)"},
    {"dep1_2", "=(x;y,z)"},
    {"dep2", "=(x,y;z)"},
    {"dep2_2", "=(x,y;z,x)"},
    {"dep3", "=(x,y,z;x)"},
    {"inc1", "inc(x;y)"},
    {"inc2", "inc(x,y;y,z)"},
    {"inc3", "inc(x,y,z;z,x,y)"},
    {"ind1_1_0", "ind(x;;y)"},
    {"ind1_1_1", "ind(x;z;y)"},
    {"ind1_2_0", "ind(x;;y,z)"},
    {"ind1_2_1", "ind(x;z;y,z)"},
    {"ind2_1_0", "ind(x,y;;z)"},
    {"ind2_1_1", "ind(x,z;y;x)"},
    {"ind2_2_0", "ind(x,y;;z,x)"},
    {"ind2_2_1", "ind(x,y;z;y,x)"},
};

const std::vector<Team>& small_teams() {
    static const std::vector<Team> teams = grid_teams(kM, {"x", "y", "z"}, 3);
    return teams;
}

}  // namespace

TEST(Registry, RelationArities) {
    EXPECT_EQ(kReg.get("dep1").relation_arity(), 4);
    EXPECT_EQ(kReg.get("inc2").relation_arity(), 8);
    EXPECT_EQ(kReg.get("ind1_1_1").relation_arity(), 9);
    for (const auto& [name, d] : kReg.all()) {
        int sum = 0;
        for (int k : d.k) sum += k;
        EXPECT_EQ(d.relation_arity(), sum * d.m) << name;
        EXPECT_NO_THROW(validate(d)) << name;
    }
}

TEST(Registry, EveryBuiltinHasANativeInstance) {
    std::set<std::string> covered;
    for (const auto& [name, text] : kNative) {
        covered.insert(name);
        auto g = as_gen(parse_formula(text));
        EXPECT_EQ(g.def.name, name) << text;
    }
    for (const auto& [name, d] : kReg.all()) EXPECT_TRUE(covered.count(name)) << name;
}

TEST(EvalDirect, DependenceOnDisagreeingTeam) {
    Team x({"x", "y"}, {{0, 0}, {0, 1}});
    EXPECT_FALSE(eval_direct(kM, x, kReg.get("dep1"), {"x", "y"}));
    EXPECT_TRUE(eval_direct(kM, Team::empty_over({"x", "y"}), kReg.get("dep1"), {"x", "y"}));
    EXPECT_THROW(eval_direct(kM, x, kReg.get("dep1"), {"x"}), LogicError);
}

TEST(EvalDirect, MatchesNativeClausesOnAllSmallTeams) {
    for (const auto& [name, text] : kNative) {
        Formula f = parse_formula(text);
        auto g = as_gen(f);
        for (const auto& x : small_teams()) EXPECT_EQ(eval_direct(kM, x, g.def, g.args), oracle::sat(kM, x, f)) << text;
    }
}

TEST(EvalDirect, FirstOrderAtomsAreFlat) {
    Model m = grid_model();
    std::mt19937_64 rng(41);
    RandomFormulaOptions o;
    for (int i = 0; i < 40; ++i) {
        Formula f = random_formula(rng, o);
        if (free_vars(f).empty()) continue;
        GenAtomDef d = make_fo_def("fo", f);
        VarList args = sorted_free_vars(f);
        for (const auto& x : grid_teams(m, {"x", "y"}, 4)) EXPECT_EQ(eval_direct(m, x, d, args), oracle::sat(m, x, f));
    }
}

TEST(Complement, Involution) {
    for (const auto& [name, d] : kReg.all()) {
        GenAtomDef cc = complement(complement(d));
        EXPECT_EQ(cc.polarity, d.polarity);
        EXPECT_TRUE(equal(cc.phi, d.phi)) << name;
    }
}

TEST(Complement, DependenceNegatedDefinition) {
    GenAtomDef c = complement(kReg.get("dep1"));
    EXPECT_EQ(c.polarity, Polarity::Sigma);
    EXPECT_EQ(c.k, (std::vector<int>{2}));
    ParseOptions o;
    o.allow_reserved = true;
    EXPECT_TRUE(equal(c.phi, parse_formula("w$1$1$1 = w$1$2$1 /\\ w$1$1$2 != w$1$2$2", o)));
}

TEST(Complement, IsWeakNegationOnTeamsUpToFour) {
    auto teams = grid_teams(kM, {"x", "y", "z"}, 4);
    for (const auto& [name, text] : kNative) {
        Formula f = parse_formula(text);
        auto g = as_gen(f);
        GenAtomDef c = complement(g.def);
        for (const auto& x : teams)
            EXPECT_EQ(eval_direct(kM, x, c, g.args), oracle::sat(kM, x, weak_neg(f))) << text;
    }
}

TEST(BuildInc, Shapes) {
    EXPECT_TRUE(equal(build_inc({{"w1"}}, {"x"}), inc({"w1"}, {"x"})));
    EXPECT_TRUE(equal(build_inc({{"w1"}, {"w2"}}, {"x"}), conj(inc({"w1"}, {"x"}), inc({"w2"}, {"x"}))));
    EXPECT_THROW(build_inc({{"w1", "w2"}}, {"x"}), LogicError);
}

TEST(BuildPro, EmptyPrefixAndSingleTupleGiveTop) {
    Formula f = build_pro({}, {"x"}, {{"w"}});
    std::vector<Formula> leaves;
    std::function<void(const Formula&)> walk = [&](const Formula& g) {
        if (g->op == Op::And) {
            walk(g->l);
            walk(g->r);
        } else {
            leaves.push_back(g);
        }
    };
    walk(f);
    ASSERT_EQ(leaves.size(), 3u);
    EXPECT_TRUE(equal(leaves[0], inc({"x"}, {"w"})));
    EXPECT_EQ(leaves[1]->op, Op::Top);
    EXPECT_EQ(leaves[2]->op, Op::Top);
}

TEST(BuildPro, TwoTuplesGiveTwoIndependenceAtoms) {
    Formula f = build_pro({"p"}, {"x"}, {{"w1"}, {"w2"}});
    int inds = 0;
    std::function<void(const Formula&)> walk = [&](const Formula& g) {
        if (g->op == Op::And) {
            walk(g->l);
            walk(g->r);
        } else if (g->op == Op::Ind) {
            ++inds;
        }
    };
    walk(f);
    EXPECT_EQ(inds, 3);
    EXPECT_THROW(build_pro({}, {"x"}, {{"w1", "w2"}}), LogicError);
}

TEST(SigmaPi, DependenceIsOneProRound) {
    Formula f = sigma_pi_translate(kReg.get("dep1"), {"x", "y"});
    auto [vs, body] = std::pair{VarList{}, f};
    while (body->op == Op::Exists) {
        vs.push_back(body->name);
        body = body->l;
    }
    EXPECT_EQ(vs.size(), 4u);
    EXPECT_EQ(body->op, Op::And);
}

TEST(SigmaPi, InclusionNestsTwoRounds) {
    Formula f = sigma_pi_translate(kReg.get("inc1"), {"x", "y"});
    int blocks = 0;
    std::function<void(const Formula&, bool)> walk = [&](const Formula& g, bool in) {
        if (!g) return;
        if (g->op == Op::Exists && !in) ++blocks;
        walk(g->l, g->op == Op::Exists);
        walk(g->r, false);
    };
    walk(f, false);
    EXPECT_EQ(blocks, 2);
}

TEST(SigmaPi, ReservedClash) { EXPECT_THROW(sigma_pi_translate(kReg.get("dep1"), {"w$1$1$1", "y"}), LogicError); }

TEST(SigmaPi, EquivalentToNativeOnAllSmallTeams) {
    for (const auto& [name, text] : kNative) {
        Formula f = parse_formula(text);
        auto g = as_gen(f);
        Formula t = sigma_pi_translate(g.def, g.args);
        EvalBudget wide;
        wide.maxSupplementRows = std::size_t{1} << 22;
        for (const auto& x : small_teams()) EXPECT_EQ(eval(kM, x, t, nullptr, wide), oracle::sat(kM, x, f)) << text;
    }
}

TEST(Eso, AtomSentenceMatchesNativeOnTeamsUpToFour) {
    auto teams = grid_teams(kM, {"x", "y", "z"}, 4);
    for (const auto& [name, text] : kNative) {
        Formula f = parse_formula(text);
        auto g = as_gen(f);
        Formula s = eso_translate_atom(g.def, "S");
        for (const auto& x : teams) {
            Model ms = expand_with_relation(kM, "S", g.def.m, rel(x, g.args));
            EXPECT_EQ(eval_single(ms, {}, s), oracle::sat(kM, x, f)) << text;
        }
    }
}

TEST(Eso, DependenceSentenceIsUniversal) {
    Formula s = eso_translate_atom(kReg.get("dep1"), "S");
    EXPECT_EQ(s->op, Op::Forall);
    Model empty = expand_with_relation(kM, "S", 2, {});
    EXPECT_TRUE(eval_single(empty, {}, s));
}

TEST(SimulatingTeam, ConstantChoice) {
    Team x({"x", "y"}, {{0, 0}, {0, 1}, {1, 1}});
    Team y = simulating_team(kM, x, {{2, 2, 2}}, {"x"}, {{"w"}});
    EXPECT_EQ(y.size(), 3u);
    for (std::size_t r = 0; r < y.size(); ++r) EXPECT_EQ(y.assignment(r).at("w"), 1);
    EXPECT_TRUE(eval(kM, y, build_inc({{"w"}}, {"x"})));
}

TEST(SimulatingTeam, IdentityChoice) {
    Team x({"x", "y"}, {{0, 0}, {0, 1}, {1, 1}});
    Team y = simulating_team(kM, x, {{0, 1, 2}}, {"x", "y"}, {{"w1", "w2"}});
    EXPECT_TRUE(eval(kM, y, parse_formula("inc(w1, w2 ; x, y) /\\ w1 = x /\\ w2 = y")));
    EXPECT_THROW(simulating_team(kM, Team::empty_over({"x"}), {{}}, {"x"}, {{"w"}}), LogicError);
}

TEST(DuplicatingTeam, Sizes) {
    Team x({"x"}, {{0}, {1}});
    Team y = duplicating_team(kM, x, {"x"}, {{"w"}});
    EXPECT_EQ(y.size(), 4u);
    EXPECT_EQ(duplicating_team(kM, x, {"x"}, {{"w1"}, {"w2"}}).size(), 8u);
    EXPECT_TRUE(eval(kM, y, build_pro({}, {"x"}, {{"w"}})));
    EXPECT_THROW(duplicating_team(kM, Team::empty_over({"x"}), {"x"}, {{"w"}}), LogicError);
}

TEST(GenatomFile, ParseAndPrint) {
    auto defs = parse_genatoms(
        "# pairs that agree\n"
        "genatom same Pi n=1 k=[2] m=1\n"
        "phi: w$1$1$1 = w$1$2$1\n"
        "genatom hit Sigma n=1 k=[1] m=1\n"
        "phi: w$1$1$1 = w$1$1$1\n");
    ASSERT_EQ(defs.size(), 2u);
    EXPECT_EQ(defs[0].polarity, Polarity::Pi);
    EXPECT_EQ(defs[1].polarity, Polarity::Sigma);
    auto again = parse_genatoms(print_genatom(defs[0]));
    ASSERT_EQ(again.size(), 1u);
    EXPECT_TRUE(equal(again[0].phi, defs[0].phi));
    EXPECT_THROW(parse_genatoms("genatom bad Pi n=2 k=[1] m=1\nphi: top\n"), LogicError);
    EXPECT_THROW(parse_genatoms("genatom bad Pi n=1 k=[1] m=1\n"), LogicError);
    EXPECT_THROW(parse_genatoms("phi: top\n"), LogicError);
    EXPECT_THROW(parse_genatoms("genatom bad Pi n=1 k=[1] m=1\nphi: =(w$1$1$1;w$1$1$1)\n"), LogicError);
}

TEST(GenatomFile, UserAtomEvaluatesThroughRegistry) {
    AtomRegistry reg = register_builtin_atoms();
    for (auto& d : parse_genatoms("genatom same Pi n=1 k=[2] m=1\nphi: w$1$1$1 = w$1$2$1\n")) reg.add(d);
    auto ar = reg.arities();
    ParseOptions o;
    o.atoms = &ar;
    Formula f = parse_formula("@same(x)", o);
    Team x({"x", "y"}, {{0, 0}, {0, 1}});
    EXPECT_TRUE(eval(kM, x, f, &reg));
    EXPECT_FALSE(eval(kM, Team({"x"}, {{0}, {1}}), f, &reg));
    EXPECT_EQ(eval(kM, Team({"x"}, {{0}, {1}}), sigma_pi_translate(reg.get("same"), {"x"})), false);
}
