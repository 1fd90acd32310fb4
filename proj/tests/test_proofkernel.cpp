#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "oracle.hpp"
#include "teamlogic/genatom.hpp"
#include "teamlogic/parser.hpp"
#include "teamlogic/proofkernel.hpp"
#include "teamlogic/props.hpp"
#include "teamlogic/semantics.hpp"

using namespace tl;

namespace {

Formula P(const std::string& s) { return parse_formula(s); }

const std::vector<std::string> kScripts = {"inc_compress_eq", "dep_inc_transfer", "dep_transitivity", "ind_exchange", "ind_symmetry", "ind_decomposition", "ind_permutation"};

std::string slurp(const std::string& name) {
    std::ifstream in(std::filesystem::path(TEAMLOGIC_SOURCE_DIR) / "scripts" / (name + ".proof"));
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const AtomRegistry& registry() {
    static const AtomRegistry reg = register_builtin_atoms();
    return reg;
}

ProofVerdict check_text(const std::string& text) {
    return check_proof(parse_proof_script(text, &registry()), &registry());
}

}  // namespace

TEST(Corpus, EveryScriptAccepted) {
    for (const auto& name : kScripts) {
        std::string text = slurp(name);
        ASSERT_FALSE(text.empty()) << name;
        auto v = check_text(text);
        EXPECT_TRUE(v.accepted) << name << " step " << v.step << ": " << v.reason;
        EXPECT_TRUE(v.conclusion) << name;
    }
}

TEST(Corpus, PrintParseRoundTrip) {
    for (const auto& name : kScripts) {
        ProofScript s = parse_proof_script(slurp(name), &registry());
        std::string printed = print_proof_script(s);
        ProofScript t = parse_proof_script(printed, &registry());
        ASSERT_EQ(s.steps.size(), t.steps.size()) << name;
        for (std::size_t i = 0; i < s.steps.size(); ++i) {
            EXPECT_EQ(s.steps[i].number, t.steps[i].number);
            EXPECT_EQ(s.steps[i].rule, t.steps[i].rule);
            EXPECT_EQ(s.steps[i].depth, t.steps[i].depth);
            EXPECT_TRUE(equal(s.steps[i].formula, t.steps[i].formula)) << name << " step " << s.steps[i].number;
        }
        EXPECT_EQ(print_proof_script(t), printed);
    }
}

TEST(Corpus, CitationMutantsRejected) {
    for (const auto& name : kScripts) {
        ProofScript s = parse_proof_script(slurp(name), &registry());
        auto mutants = citation_mutants(s);
        EXPECT_FALSE(mutants.empty()) << name;
        for (const auto& m : mutants) EXPECT_FALSE(check_proof(m, &registry()).accepted) << name;
    }
}

TEST(Corpus, EndSequentHoldsUpToTwoElements) {
    EntailOptions o;
    o.maxDomain = 2;
    o.samples = 400;
    o.sampleSeed = 11;
    o.atoms = &registry();
    for (const auto& name : kScripts) {
        auto v = check_text(slurp(name));
        ASSERT_TRUE(v.accepted) << name;
        auto e = entails_bounded(v.hypotheses, v.conclusion, o);
        EXPECT_EQ(e.status, EntailmentStatus::ValidUpToBound) << name;
    }
}

TEST(Corpus, RuleInstancesSoundOnSmallSignatures) {
    EntailOptions o;
    o.maxDomain = 2;
    o.samples = 100;
    o.sampleSeed = 13;
    o.atoms = &registry();
    std::size_t checked = 0;
    for (const auto& name : kScripts) {
        ProofScript s = parse_proof_script(slurp(name), &registry());
        for (const auto& r : rule_instances(s, &registry())) {
            std::set<std::string> vs;
            for (const auto& f : r.premises)
                for (const auto& v : free_vars(f)) vs.insert(v);
            for (const auto& f : {r.conclusion, r.assumption, r.minor})
                if (f)
                    for (const auto& v : free_vars(f)) vs.insert(v);
            if (vs.size() > 6) continue;
            ++checked;
            auto v = rule_soundness_check(r, o);
            EXPECT_EQ(v.status, EntailmentStatus::ValidUpToBound) << name << " " << r.rule << " " << print_formula(r.conclusion);
        }
    }
    EXPECT_GE(checked, 40u);
}

TEST(Rejection, EigenvariableFreeInConclusion) {
    std::ifstream in(std::filesystem::path(TEAMLOGIC_SOURCE_DIR) / "tests" / "data" / "bad_eigen.proof");
    std::ostringstream ss;
    ss << in.rdbuf();
    auto v = check_text(ss.str());
    EXPECT_FALSE(v.accepted);
    EXPECT_EQ(v.step, 4);
}

TEST(Rejection, LocalErrors) {
    const char* bad[] = {
        "1. x = y ; hyp\n2. y = x ; andE 1\n",
        "1. x = y ; hyp\n2. y = z ; fo 3\n3. z = z ; eqRefl\n",
        "1. x = y ; hyp\n2. x = y ; frobnicate 1\n",
        "1. x = y ; hyp\nassume 2. y = x\n  3. y = x ; hyp\n",
        "1. x = y ; hyp\nassume 2. wneg x = y\n  3. bot ; fo 1 2\nqed 2\n4. y = x ; wnegE 2-3\n",
        "1. inc(x;y) ; hyp\n2. inc(y;x) ; incPro 1\n",
        "2. x = y ; hyp\n1. y = x ; fo 2\n",
        "1. x = y ; hyp\nassume 2. z = z\n  3. z = z ; eqRefl\nqed 2\n4. x = x ; fo 3\n",
    };
    for (const char* s : bad) {
        bool rejected = false;
        try {
            rejected = !check_text(s).accepted;
        } catch (const LogicError&) {
            rejected = true;
        }
        EXPECT_TRUE(rejected) << s;
    }
}

TEST(Acceptance, SmallScripts) {
    auto v = check_text("# swap\n1. x y = u v ; hyp\n2. y = v ; fo 1\n3. =(x;y) ; hyp\n4. =(x;y) /\\ y = v ; andI 3 2\n");
    EXPECT_TRUE(v.accepted) << v.reason;
    EXPECT_EQ(v.hypotheses.size(), 2u);
    EXPECT_TRUE(equal(v.conclusion, P("=(x;y) /\\ y = v")));
}

TEST(BoundedFo, Examples) {
    EXPECT_TRUE(bounded_fo_step({P("x = y"), P("y = z")}, P("x = z")));
    EXPECT_TRUE(bounded_fo_step({P("x y = u v")}, P("x = u")));
    EXPECT_FALSE(bounded_fo_step({P("x != y")}, P("x = y")));
    EXPECT_TRUE(bounded_fo_step({P("x = y"), P("x != y")}, P("bot")));
    EXPECT_THROW(bounded_fo_step({P("E z. z = x")}, P("x = x")), LogicError);
}

TEST(WnegElimTarget, DefinesWeakNegationOnGrid) {
    Model m = grid_model();
    auto teams = grid_teams(m, {"x", "y", "z"}, 3);
    for (const char* s : {"=(x;z)", "ind(x;;y,z)", "x = y"}) {
        Formula goal = P(s), target = wneg_elim_target(goal, &registry());
        EXPECT_FALSE(equal(goal, target));
        for (const auto& x : teams)
            EXPECT_EQ(eval(m, x, target, &registry()), eval(m, x, weak_neg(goal), &registry())) << s << " " << print_formula(target);
    }
}

TEST(CloseFormula, SentenceUnchanged) {
    auto c = close_formula({}, P("A x. x = x"));
    EXPECT_TRUE(equal(c.closed, P("A x. x = x")));
}

TEST(CloseFormula, OneFreeVariable) {
    auto c = close_formula({P("=(y;z)")}, P("inc(x;x)"));
    EXPECT_EQ(c.closed->op, Op::Exists);
    EXPECT_EQ(c.closed->name, "x");
    EXPECT_TRUE(equal(c.closed->l, P("inc(x;x)")));
}

TEST(CloseFormula, SchemasAccepted) {
    auto c = close_formula({P("=(y;z)")}, P("inc(x,w;w,x)"));
    for (const auto& text : {c.intro_schema, c.elim_schema}) {
        auto v = check_text(text);
        EXPECT_TRUE(v.accepted) << text << v.reason;
        EXPECT_TRUE(equal(v.conclusion, c.closed)) << text;
    }
}

TEST(CloseFormula, SharedVariableRejected) {
    EXPECT_THROW(close_formula({P("=(x;y)")}, P("x = x")), LogicError);
}
