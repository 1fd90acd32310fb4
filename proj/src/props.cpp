#include "teamlogic/props.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>

#include "teamlogic/eso.hpp"
#include "teamlogic/genatom.hpp"
#include "teamlogic/negation.hpp"
#include "teamlogic/parser.hpp"
#include "teamlogic/semantics.hpp"

namespace tl {

namespace {

struct FormulaGen {
    std::mt19937_64& rng;
    const RandomFormulaOptions& o;

    int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }
    std::string var(const VarList& scope) { return scope[static_cast<std::size_t>(pick(static_cast<int>(scope.size())))]; }
    VarList vars(const VarList& scope, int lo, int hi) {
        VarList out;
        int n = lo + pick(hi - lo + 1);
        for (int i = 0; i < n; ++i) out.push_back(var(scope));
        return out;
    }

    Formula leaf(const VarList& scope) {
        int kinds = o.fragment == Fragment::FirstOrder ? 4 : o.fragment == Fragment::Dependence ? 5 : 7;
        switch (pick(kinds)) {
        case 0: return eq(Term::var(var(scope)), Term::var(var(scope)));
        case 1: return neq(Term::var(var(scope)), Term::var(var(scope)));
        case 2: return rel_atom("P", {Term::var(var(scope))});
        case 3: return neg_rel_atom("P", {Term::var(var(scope))});
        case 4: return dep(vars(scope, 0, 1), {var(scope)});
        case 5: return ind({var(scope)}, vars(scope, 0, 1), {var(scope)});
        default: {
            VarList a = vars(scope, 1, 2);
            return inc(a, vars(scope, static_cast<int>(a.size()), static_cast<int>(a.size())));
        }
        }
    }

    Formula node(int depth, const VarList& scope) {
        if (depth == 0 || pick(10) < 3) return leaf(scope);
        int ops = o.fragment == Fragment::FirstOrder ? 4 : o.fragment == Fragment::Dependence ? 6
                  : o.fragment == Fragment::Independence                                    ? 7
                                                                                            : 8;
        int op = pick(ops);
        if (op == 0) return conj(node(depth - 1, scope), node(depth - 1, scope));
        if (op == 1) return sor(node(depth - 1, scope), node(depth - 1, scope));
        if (op == 6) return bor(node(depth - 1, scope), node(depth - 1, scope));
        if (op == 7) return weak_neg(node(depth - 1, scope));
        std::string v = var(o.bound);
        VarList inner = scope;
        if (std::find(inner.begin(), inner.end(), v) == inner.end()) inner.push_back(v);
        Formula body = node(depth - 1, inner);
        switch (op) {
        case 2: return exists(v, body);
        case 3: return forall(v, body);
        case 4: return exists1(v, body);
        default: return forall1(v, body);
        }
    }
};

// teams indexed by the bitmask of the assignments they contain
std::vector<Team> teams_by_mask(const Model& m, const VarList& vs) {
    auto rows = all_assignments(m, vs.size());
    std::vector<Team> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << rows.size()); ++mask) {
        std::vector<Row> sel;
        for (std::size_t i = 0; i < rows.size(); ++i)
            if ((mask >> i) & 1) sel.push_back(rows[i]);
        out.emplace_back(vs, std::move(sel));
    }
    return out;
}

std::string one_line(std::string s) {
    std::replace(s.begin(), s.end(), '\n', ' ');
    return s;
}

struct Runner {
    SuiteResult& r;
    const Model& m;

    void check(bool ok, const std::function<std::string()>& note) {
        ++r.checks;
        if (ok) return;
        ++r.failures;
        if (r.notes.size() < 5) r.notes.push_back(note());
    }
    std::string at(const Formula& f, const Team& x) const {
        return print_formula(f) + " on {" + one_line(print_team(x, m)) + "}";
    }
};

std::vector<Formula> atom_kinds() {
    return {dep({"x"}, {"y"}),         dep({"x", "y"}, {"z"}),        dep({}, {"x"}),
            dep({"x"}, {"y", "z"}),    ind({"x"}, {}, {"y"}),         ind({"x"}, {"z"}, {"y"}),
            ind({"x", "y"}, {}, {"z"}), ind({"x"}, {}, {"y", "z"}),   inc({"x"}, {"y"}),
            inc({"x", "y"}, {"y", "x"}), inc({"x", "y"}, {"z", "x"})};
}

std::vector<Team> atom_grid(const Model& m, std::mt19937_64& rng) {
    VarList vs = {"x", "y", "z"};
    auto teams = grid_teams(m, vs, 3);
    for (int i = 0; i < 50; ++i) teams.push_back(random_team(rng, m, vs, 4));
    return teams;
}

void flatness(Runner& run, std::mt19937_64& rng, std::size_t n) {
    auto teams = teams_by_mask(run.m, {"x", "y", "z"});
    RandomFormulaOptions o{Fragment::FirstOrder, {"x", "y", "z"}, {"x", "y", "z"}, 3};
    for (std::size_t k = 0; k < n; ++k) {
        Formula f = random_formula(rng, o);
        std::vector<bool> sat(teams.size());
        for (std::size_t i = 0; i < teams.size(); ++i) sat[i] = eval(run.m, teams[i], f);
        for (std::size_t mask = 0; mask < teams.size(); ++mask) {
            bool rows = true;
            for (std::size_t b = 0; b < 8; ++b)
                if ((mask >> b) & 1) rows = rows && sat[std::size_t{1} << b];
            run.check(sat[mask] == rows, [&] { return "flatness: " + run.at(f, teams[mask]); });
        }
        for (std::size_t a = 0; a < teams.size(); ++a)
            for (std::size_t b = a + 1; b < teams.size(); ++b)
                if (sat[a] && sat[b]) run.check(sat[a | b], [&] { return "union: " + run.at(f, teams[a | b]); });
    }
}

void lem(Runner& run, std::mt19937_64& rng, std::size_t n) {
    auto teams = teams_by_mask(run.m, {"x", "y", "z"});
    RandomFormulaOptions o{Fragment::FirstOrder, {"x", "y", "z"}, {"x", "y", "z"}, 3};
    for (std::size_t k = 0; k < n; ++k) {
        Formula f = random_formula(rng, o);
        Formula g = sor(f, fo_negate(f));
        for (const auto& x : teams) run.check(eval(run.m, x, g), [&] { return "lem: " + run.at(g, x); });
    }
}

void downward(Runner& run, std::mt19937_64& rng, std::size_t n) {
    auto teams = teams_by_mask(run.m, {"x", "y", "z"});
    RandomFormulaOptions o{Fragment::Dependence, {"x", "y", "z"}, {"x", "y", "z"}, 3};
    for (std::size_t k = 0; k < n; ++k) {
        Formula f = random_formula(rng, o);
        std::vector<bool> sat(teams.size());
        for (std::size_t i = 0; i < teams.size(); ++i) sat[i] = eval(run.m, teams[i], f);
        for (std::size_t mask = 0; mask < teams.size(); ++mask) {
            if (!sat[mask]) continue;
            for (std::size_t b = 0; b < 8; ++b)
                if ((mask >> b) & 1)
                    run.check(sat[mask & ~(std::size_t{1} << b)],
                              [&] { return "downward: " + run.at(f, teams[mask & ~(std::size_t{1} << b)]); });
        }
    }
}

void locality(Runner& run, std::mt19937_64& rng, std::size_t n) {
    auto teams = teams_by_mask(run.m, {"x", "y", "z"});
    RandomFormulaOptions o{Fragment::Full, {"x", "y"}, {"x", "y", "z"}, 3};
    for (std::size_t k = 0; k < n; ++k) {
        Formula f = random_formula(rng, o);
        auto fv = free_vars(f);
        for (const auto& x : teams)
            run.check(eval(run.m, x, f) == eval(run.m, restrict(x, fv), f), [&] { return "locality: " + run.at(f, x); });
    }
}

void empty_team(Runner& run, std::mt19937_64& rng, std::size_t n) {
    RandomFormulaOptions o{Fragment::Full, {"x", "y", "z"}, {"x", "y", "z"}, 3};
    Team e = Team::empty_over({"x", "y", "z"});
    for (std::size_t k = 0; k < n; ++k) {
        Formula f = random_formula(rng, o);
        run.check(eval(run.m, e, f), [&] { return "empty team: " + print_formula(f); });
    }
}

void prop44(Runner& run, std::mt19937_64& rng, std::size_t n) {
    auto teams = teams_by_mask(run.m, {"x", "y"});
    RandomFormulaOptions o{Fragment::FirstOrder, {"x", "y"}, {"x", "y", "z"}, 3};
    for (std::size_t k = 0; k < n; ++k) {
        Formula f = random_formula(rng, o);
        Formula syn = wneg(f), prim = weak_neg(f);
        for (const auto& x : teams)
            run.check(eval(run.m, x, syn) == eval(run.m, x, prim), [&] { return "prop44: " + run.at(f, x); });
    }
}

void thm52(Runner& run, std::mt19937_64& rng) {
    auto teams = atom_grid(run.m, rng);
    for (const auto& a : atom_kinds()) {
        auto g = as_gen(a);
        Formula tr = sigma_pi_translate(g.def, g.args);
        for (const auto& x : teams) {
            bool native = eval(run.m, x, a), trans = eval(run.m, x, tr), direct = eval_direct(run.m, x, g.def, g.args);
            run.check(native == trans && trans == direct, [&] { return "thm52: " + run.at(a, x); });
        }
    }
}

void fact52(Runner& run, std::mt19937_64& rng) {
    auto teams = atom_grid(run.m, rng);
    for (const auto& a : atom_kinds()) {
        auto g = as_gen(a);
        GenAtomDef c = complement(g.def);
        Formula neg = weak_neg(a), tr = sigma_pi_translate(c, g.args);
        for (const auto& x : teams) {
            bool w = eval(run.m, x, neg), direct = eval_direct(run.m, x, c, g.args), trans = eval(run.m, x, tr);
            run.check(w == direct && direct == trans, [&] { return "fact52: " + run.at(a, x); });
        }
    }
}

void lem54(Runner& run, std::mt19937_64& rng, std::size_t n) {
    VarList dom = {"x", "y", "z"};
    for (std::size_t k = 0; k < n; ++k) {
        Team x = random_team(rng, run.m, dom, 1 + rng() % 4);
        VarList args = rng() % 2 ? VarList{"x"} : VarList{"x", "y"};
        std::size_t groups = 1 + rng() % 2;
        std::vector<VarList> ws;
        for (std::size_t i = 0; i < groups; ++i) {
            VarList w;
            for (std::size_t l = 0; l < args.size(); ++l) w.push_back("w" + std::to_string(i + 1) + "_" + std::to_string(l + 1));
            ws.push_back(w);
        }
        std::vector<std::vector<std::size_t>> gammas(groups, std::vector<std::size_t>(x.size()));
        for (auto& g : gammas)
            for (auto& r : g) r = rng() % x.size();

        Team y = simulating_team(run.m, x, gammas, args, ws);
        bool rows_ok = y.size() == x.size();
        for (std::size_t r = 0; rows_ok && r < x.size(); ++r) {
            auto ext = std::find_if(y.rows().begin(), y.rows().end(), [&](const Row& row) {
                for (const auto& v : dom)
                    if (row[static_cast<std::size_t>(y.col(v))] != x.rows()[r][static_cast<std::size_t>(x.col(v))]) return false;
                return true;
            });
            rows_ok = ext != y.rows().end();
            for (std::size_t i = 0; rows_ok && i < groups; ++i)
                for (std::size_t l = 0; l < args.size(); ++l)
                    rows_ok = rows_ok && (*ext)[static_cast<std::size_t>(y.col(ws[i][l]))] ==
                                             x.rows()[gammas[i][r]][static_cast<std::size_t>(x.col(args[l]))];
        }
        Formula inc_post = build_inc(ws, args);
        run.check(rows_ok && eval(run.m, y, inc_post), [&] { return "lem54 simulating: " + run.at(inc_post, x); });

        Team d = duplicating_team(run.m, x, args, ws);
        VarList prefix;
        for (const auto& v : dom)
            if (std::find(args.begin(), args.end(), v) == args.end()) prefix.push_back(v);
        Formula pro_post = build_pro(prefix, args, ws);
        auto r = rel(x, args);
        bool values_ok = true;
        for (const auto& w : ws) {
            auto rw = rel(d, w);
            for (const auto& t : rw) values_ok = values_ok && r.count(t);
        }
        run.check(values_ok && eval(run.m, d, pro_post), [&] { return "lem54 duplicating: " + run.at(pro_post, x); });
    }
}

void thm24(Runner& run, std::mt19937_64& rng, std::size_t n) {
    auto teams = grid_teams(run.m, {"x", "y", "z"}, 4);
    std::vector<Formula> atoms = atom_kinds();
    atoms.push_back(eq(Term::var("x"), Term::var("y")));
    atoms.push_back(rel_atom("P", {Term::var("z")}));
    for (const auto& a : atoms)
        for (const auto& x : teams) run.check(check_correspondence(run.m, x, a), [&] { return "thm24: " + run.at(a, x); });
    auto small = teams_by_mask(run.m, {"x", "y"});
    RandomFormulaOptions o{Fragment::Independence, {"x", "y"}, {"x", "y", "z"}, 3};
    for (std::size_t k = 0; k < n; ++k) {
        Formula f = random_formula(rng, o);
        for (const auto& x : small) run.check(check_correspondence(run.m, x, f), [&] { return "thm24: " + run.at(f, x); });
    }
}

void footnotes(Runner& run, std::mt19937_64& rng, std::size_t n) {
    auto teams = teams_by_mask(run.m, {"x", "y"});
    RandomFormulaOptions o{Fragment::Independence, {"x", "y"}, {"x", "y", "z"}, 2};
    const Term w = Term::var("w"), u = Term::var("u");
    for (std::size_t k = 0; k < n; ++k) {
        Formula f = random_formula(rng, o), g = random_formula(rng, o);
        std::string v = o.bound[rng() % o.bound.size()];
        Formula e1 = exists1(v, f), e1_def = exists(v, conj(dep({}, {v}), f));
        Formula b = bor(f, g);
        Formula b_def = exists("w", exists("u", conj(conj(conj(dep({}, {"w"}), dep({}, {"u"})), sor(eq(w, u), f)),
                                                     sor(neq(w, u), g))));
        for (const auto& x : teams) {
            run.check(eval(run.m, x, e1) == eval(run.m, x, e1_def), [&] { return "definability E1: " + run.at(e1, x); });
            run.check(eval(run.m, x, b) == eval(run.m, x, b_def), [&] { return "definability bor: " + run.at(b, x); });
        }
    }
}

}  // namespace

Formula random_formula(std::mt19937_64& rng, const RandomFormulaOptions& opts) {
    FormulaGen g{rng, opts};
    return g.node(opts.depth, opts.free);
}

Model grid_model() {
    Model m = make_model({"a", "b"});
    return expand_with_relation(m, "P", 1, {{0}});
}

std::vector<Team> grid_teams(const Model& m, const VarList& vs, std::size_t max_rows) {
    auto rows = all_assignments(m, vs.size());
    std::vector<Team> out;
    std::vector<Row> cur;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == rows.size()) {
            out.emplace_back(vs, cur);
            return;
        }
        rec(i + 1);
        if (cur.size() < max_rows) {
            cur.push_back(rows[i]);
            rec(i + 1);
            cur.pop_back();
        }
    };
    rec(0);
    return out;
}

Team random_team(std::mt19937_64& rng, const Model& m, const VarList& vs, std::size_t rows) {
    auto all = all_assignments(m, vs.size());
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(std::min(rows, all.size()));
    return Team(vs, all);
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> n = {"flatness", "downward", "locality", "empty-team", "lem",       "thm52",
                                               "fact52",   "lem54",    "prop44",   "thm24",      "footnotes"};
    return n;
}

SuiteResult run_suite(const std::string& name, const SuiteOptions& opts) {
    SuiteResult r;
    r.name = name;
    Model m = grid_model();
    Runner run{r, m};
    std::mt19937_64 rng(opts.seed);
    auto count = [&](std::size_t def) { return opts.count ? opts.count : def; };
    auto t0 = std::chrono::steady_clock::now();
    if (name == "flatness") flatness(run, rng, count(100));
    else if (name == "lem") lem(run, rng, count(100));
    else if (name == "downward") downward(run, rng, count(100));
    else if (name == "locality") locality(run, rng, count(100));
    else if (name == "empty-team") empty_team(run, rng, count(100));
    else if (name == "prop44") prop44(run, rng, count(50));
    else if (name == "thm52") thm52(run, rng);
    else if (name == "fact52") fact52(run, rng);
    else if (name == "lem54") lem54(run, rng, count(100));
    else if (name == "thm24") thm24(run, rng, count(100));
    else if (name == "footnotes") footnotes(run, rng, count(100));
    else throw LogicError("unknown suite '" + name + "'");
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

}  // namespace tl
