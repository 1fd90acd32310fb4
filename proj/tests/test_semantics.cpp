#include <gtest/gtest.h>

#include <random>

#include "oracle.hpp"
#include "teamlogic/parser.hpp"
#include "teamlogic/props.hpp"
#include "teamlogic/semantics.hpp"

using namespace tl;

namespace {

const Model kM = make_model({"a", "b"});

Formula P(const std::string& s) { return parse_formula(s); }

Team xy(std::vector<Row> rows) { return Team({"x", "y"}, std::move(rows)); }

std::vector<Team> teams_xy() {
    std::vector<Team> out;
    all_teams(kM, {"x", "y"}, [&](const Team& t) { return out.push_back(t), true; });
    return out;
}

}  // namespace

TEST(Eval, EmptyTeamSatisfiesEverything) {
    for (const char* s : {"bot", "=(x;y)", "inc(x;y)", "ind(x;;y)", "x != x", "wneg top", "E z. (z = x /\\ z != x)"})
        EXPECT_TRUE(eval(kM, Team::empty_over({"x", "y"}), P(s))) << s;
}

TEST(Eval, DependenceFails) { EXPECT_FALSE(eval(kM, xy({{0, 0}, {0, 1}}), P("=(x,y)"))); }

TEST(Eval, InclusionFails) { EXPECT_FALSE(eval(kM, xy({{0, 1}, {1, 1}}), P("inc(x ; y)"))); }

TEST(Eval, IndependenceFailsOnDiagonal) {
    Team x = xy({{0, 0}, {1, 1}});
    EXPECT_EQ(oracle::sat(kM, x, P("ind(x ; ; y)")), false);
    EXPECT_FALSE(eval(kM, x, P("ind(x ; ; y)")));
}

TEST(Eval, FirstOrderDisjunctionOfConstants) {
    Model m = parse_model("domain a b\nconst a a\nconst b b\n");
    ParseOptions o;
    o.constants = {"a", "b"};
    EXPECT_TRUE(eval(m, Team({"x"}, {{0}, {1}}), parse_formula("x = a \\/ x = b", o)));
}

TEST(Eval, ExtraClauses) {
    Team x = xy({{0, 0}, {1, 0}});
    EXPECT_TRUE(eval(kM, x, P("E1 z. =(;z)")));
    EXPECT_FALSE(eval(kM, x, P("A1 z. z = x")));
    EXPECT_TRUE(eval(kM, x, P("=(;x) || =(;y)")));
    EXPECT_FALSE(eval(kM, x, P("=(;x) || inc(y;x) /\\ x != x")));
    EXPECT_TRUE(eval(kM, x, P("wneg =(;x)")));
    EXPECT_FALSE(eval(kM, x, P("wneg =(;y)")));
}

TEST(Eval, FreeVariableOutsideTeam) { EXPECT_THROW(eval(kM, Team({"x"}, {{0}}), P("x = z")), LogicError); }

TEST(Eval, BudgetExceededReported) {
    Model m = make_model({"a", "b", "c", "d"});
    std::vector<Row> rows;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) rows.push_back({i, j});
    EvalBudget b;
    b.maxSplitRows = 4;
    EXPECT_THROW(eval(m, Team({"x", "y"}, rows), P("=(x;y) \\/ =(y;x)"), nullptr, b), BudgetExceeded);
}

TEST(EvalSingle, Examples) {
    EXPECT_TRUE(eval_single(kM, {{"x", 0}}, P("x = x")));
    EXPECT_FALSE(eval_single(kM, {{"x", 0}}, P("bot")));
    EXPECT_THROW(eval_single(kM, {{"x", 0}, {"y", 0}}, P("=(x;y)")), LogicError);
}

TEST(EvalSingle, AgreesWithEvalOnSingletons) {
    Model m = grid_model();
    std::mt19937_64 rng(5);
    RandomFormulaOptions o;
    for (int i = 0; i < 200; ++i) {
        Formula f = random_formula(rng, o);
        Row r{static_cast<int>(rng() % 2), static_cast<int>(rng() % 2)};
        Team x({"x", "y"}, {r});
        EXPECT_EQ(eval_single(m, x.assignment(0), f), eval(m, x, f)) << print_formula(f);
    }
}

TEST(Eval, AtomsMatchOracleOnAllTeams) {
    for (const char* s : {"=(x;y)", "=(y;x)", "=(;x)", "inc(x;y)", "inc(y;x)", "inc(x,y;y,x)", "ind(x;;y)", "ind(x;y;x)",
                          "ind(x,y;;x)", "ind(x;;x)", "x = y", "x != y"}) {
        Formula f = P(s);
        for (const auto& x : teams_xy()) EXPECT_EQ(eval(kM, x, f), oracle::sat(kM, x, f)) << s;
    }
}

TEST(Eval, RandomFormulasMatchOracle) {
    Model m = grid_model();
    std::mt19937_64 rng(17);
    for (auto frag : {Fragment::FirstOrder, Fragment::Dependence, Fragment::Independence, Fragment::Full}) {
        RandomFormulaOptions o;
        o.fragment = frag;
        for (int i = 0; i < 60; ++i) {
            Formula f = random_formula(rng, o);
            for (std::size_t k = 0; k < 6; ++k) {
                Team x = random_team(rng, m, {"x", "y"}, rng() % 4);
                EXPECT_EQ(eval(m, x, f), oracle::sat(m, x, f)) << print_formula(f);
            }
        }
    }
}

TEST(Eval, SolverSwitchesAgree) {
    Model m = grid_model();
    std::mt19937_64 rng(23);
    RandomFormulaOptions o;
    o.fragment = Fragment::Independence;
    for (int i = 0; i < 150; ++i) {
        Formula f = random_formula(rng, o);
        Team x = random_team(rng, m, {"x", "y"}, 1 + rng() % 3);
        Evaluator plain(m);
        plain.set_fo_shortcut(false);
        plain.set_block_solver(false);
        EXPECT_EQ(Evaluator(m).eval(x, f), plain.eval(x, f)) << print_formula(f);
    }
}

TEST(EvalProperty, FlatnessAndUnionClosure) {
    Model m = grid_model();
    std::mt19937_64 rng(29);
    RandomFormulaOptions o;
    for (int i = 0; i < 200; ++i) {
        Formula f = random_formula(rng, o);
        Team x = random_team(rng, m, {"x", "y"}, rng() % 5);
        bool rows = true;
        for (std::size_t r = 0; r < x.size(); ++r) rows = rows && eval_single(m, x.assignment(r), f);
        EXPECT_EQ(eval(m, x, f), rows) << print_formula(f);
        Team y = random_team(rng, m, {"x", "y"}, rng() % 5);
        std::vector<Row> u = x.rows();
        u.insert(u.end(), y.rows().begin(), y.rows().end());
        if (eval(m, x, f) && eval(m, y, f)) EXPECT_TRUE(eval(m, x.with_rows(u), f));
    }
}

TEST(EvalProperty, DownwardClosureOfDependenceFragment) {
    Model m = grid_model();
    std::mt19937_64 rng(31);
    RandomFormulaOptions o;
    o.fragment = Fragment::Dependence;
    for (int i = 0; i < 150; ++i) {
        Formula f = random_formula(rng, o);
        Team x = random_team(rng, m, {"x", "y"}, 1 + rng() % 4);
        if (!eval(m, x, f)) continue;
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << x.size()); ++mask)
            EXPECT_TRUE(eval(m, x.subteam(mask), f)) << print_formula(f);
    }
}

TEST(EvalProperty, LocalityLemAndWeakNegationClause) {
    Model m = grid_model();
    std::mt19937_64 rng(37);
    RandomFormulaOptions o;
    o.fragment = Fragment::Full;
    for (int i = 0; i < 150; ++i) {
        Formula f = random_formula(rng, o);
        Team x = random_team(rng, m, {"x", "y"}, rng() % 4);
        bool v = eval(m, x, f);
        EXPECT_EQ(v, eval(m, restrict(x, free_vars(f)), f)) << print_formula(f);
        EXPECT_EQ(eval(m, x, weak_neg(f)), x.empty() || !v);
    }
    RandomFormulaOptions fo;
    for (int i = 0; i < 150; ++i) {
        Formula f = random_formula(rng, fo);
        Team x = random_team(rng, m, {"x", "y"}, rng() % 5);
        EXPECT_TRUE(eval(m, x, sor(f, fo_negate(f)))) << print_formula(f);
    }
}
