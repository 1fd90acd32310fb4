#include "teamlogic/eso.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <sstream>

#include "teamlogic/parser.hpp"
#include "teamlogic/semantics.hpp"

namespace tl {

namespace {

using Mem = std::function<Formula(const std::vector<Term>&)>;

std::vector<Term> as_terms(const VarList& vs) {
    std::vector<Term> out;
    for (const auto& v : vs) out.push_back(Term::var(v));
    return out;
}

Formula forall_all(const VarList& vs, Formula body) {
    for (auto it = vs.rbegin(); it != vs.rend(); ++it) body = forall(*it, body);
    return body;
}

Formula exists_all(const VarList& vs, Formula body) {
    for (auto it = vs.rbegin(); it != vs.rend(); ++it) body = exists(*it, body);
    return body;
}

Formula implies(const Formula& a, const Formula& b) { return sor(fo_negate(a), b); }

VarList with_var(VarList v, const std::string& x) {
    if (std::find(v.begin(), v.end(), x) == v.end()) {
        v.push_back(x);
        std::sort(v.begin(), v.end());
    }
    return v;
}

class Translator {
public:
    explicit Translator(const AtomRegistry* reg) : reg_(reg) {}

    std::vector<std::pair<std::string, int>> so;

    Formula tr(const Formula& f, const Mem& mem, const VarList& V, const VarList& P);

    // atom matrix; member(tuple) tests membership of a tuple of m terms
    Formula atom(const GenAtomDef& d, const Mem& member) {
        Formula inner = d.phi;
        for (int g = d.n; g >= 1; --g) {
            VarList flat;
            std::vector<Formula> guards;
            for (const auto& t : grid_group(d, g)) {
                flat.insert(flat.end(), t.begin(), t.end());
                guards.push_back(member(as_terms(t)));
            }
            Formula guard = conj_all(guards);
            inner = d.round_is_universal(g) ? forall_all(flat, implies(guard, inner))
                                            : exists_all(flat, conj(guard, inner));
        }
        if (d.polarity == Polarity::Sigma) {
            VarList ts;
            for (int l = 0; l < d.m; ++l) ts.push_back(fresh_t());
            inner = sor(forall_all(ts, fo_negate(member(as_terms(ts)))), inner);
        }
        return inner;
    }

private:
    const AtomRegistry* reg_;
    int next_t_ = 0, next_q_ = 0, next_s_ = 0;

    std::string fresh_t() { return "t$" + std::to_string(++next_t_); }
    std::string fresh_q() { return "q$" + std::to_string(++next_q_); }

    Mem fresh_relation(const VarList& V, const VarList& P) {
        std::string s = "S$" + std::to_string(++next_s_);
        so.emplace_back(s, static_cast<int>(P.size() + V.size()));
        auto params = as_terms(P);
        return [s, params](const std::vector<Term>& t) {
            std::vector<Term> args = params;
            args.insert(args.end(), t.begin(), t.end());
            return rel_atom(s, args);
        };
    }

    // membership in the projection of mem (over V) onto the sub-list `sub`, given terms for sub
    Mem project(const Mem& mem, const VarList& V, const VarList& sub) {
        return [this, mem, V, sub](const std::vector<Term>& t) {
            std::vector<Term> full;
            VarList hidden;
            std::vector<Formula> eqs;
            for (const auto& v : V) {
                auto it = std::find(sub.begin(), sub.end(), v);
                if (it != sub.end()) {
                    full.push_back(t[it - sub.begin()]);
                } else {
                    hidden.push_back(fresh_t());
                    full.push_back(Term::var(hidden.back()));
                }
            }
            for (std::size_t p = 0; p < sub.size(); ++p) {
                auto first = std::find(sub.begin(), sub.end(), sub[p]) - sub.begin();
                if (static_cast<std::size_t>(first) != p) eqs.push_back(eq(t[first], t[p]));
            }
            eqs.insert(eqs.begin(), exists_all(hidden, mem(full)));
            return conj_all(eqs);
        };
    }
};

Formula Translator::tr(const Formula& f, const Mem& mem, const VarList& V, const VarList& P) {
    auto Vt = as_terms(V);
    if (is_first_order(f)) return forall_all(V, implies(mem(Vt), expand_sugar(f)));
    switch (f->op) {
    case Op::Dep:
    case Op::Ind:
    case Op::Inc:
    case Op::Gen: {
        GenInstance g = as_gen(f, reg_);
        return atom(g.def, project(mem, V, g.args));
    }
    case Op::And: return conj(tr(f->l, mem, V, P), tr(f->r, mem, V, P));
    case Op::BoolOr: return sor(tr(f->l, mem, V, P), tr(f->r, mem, V, P));
    case Op::SplitOr: {
        Mem s1 = fresh_relation(V, P), s2 = fresh_relation(V, P);
        Formula cover = forall_all(V, implies(mem(Vt), sor(s1(Vt), s2(Vt))));
        Formula g1 = forall_all(V, implies(s1(Vt), mem(Vt)));
        Formula g2 = forall_all(V, implies(s2(Vt), mem(Vt)));
        return conj_all({cover, g1, g2, tr(f->l, s1, V, P), tr(f->r, s2, V, P)});
    }
    case Op::Exists:
    case Op::Forall: {
        const std::string& x = f->name;
        VarList V2 = with_var(V, x);
        auto V2t = as_terms(V2);
        Mem s = fresh_relation(V2, P);
        Formula ext = f->op == Op::Exists ? exists(x, s(V2t)) : forall(x, s(V2t));
        Formula cover = forall_all(V, implies(mem(Vt), ext));
        bool rebinds = std::find(V.begin(), V.end(), x) != V.end();
        Formula guard = forall_all(V2, implies(s(V2t), rebinds ? exists(x, mem(Vt)) : mem(Vt)));
        return conj_all({cover, guard, tr(f->l, s, V2, P)});
    }
    case Op::Exists1:
    case Op::Forall1: {
        const std::string& x = f->name;
        VarList V2 = with_var(V, x);
        std::string q = fresh_q();
        bool rebinds = std::find(V.begin(), V.end(), x) != V.end();
        VarList base = V;
        if (rebinds) base.erase(std::find(base.begin(), base.end(), x));
        Mem below = project(mem, V, base);
        std::size_t xi = std::find(V2.begin(), V2.end(), x) - V2.begin();
        Mem pinned = [below, V2, base, xi, q](const std::vector<Term>& t) {
            std::vector<Term> bt;
            for (const auto& b : base) bt.push_back(t[std::find(V2.begin(), V2.end(), b) - V2.begin()]);
            return conj(eq(t[xi], Term::var(q)), below(bt));
        };
        VarList P2 = P;
        P2.push_back(q);
        Formula body = tr(f->l, pinned, V2, P2);
        return f->op == Op::Exists1 ? exists(q, body) : forall(q, body);
    }
    case Op::WNeg: throw LogicError("tau needs a formula without weak negation; apply wneg first");
    default: throw LogicError("tau: unsupported connective");
    }
}

}  // namespace

ESOFormula tau(const Formula& f, const std::string& R, const AtomRegistry* reg) {
    Translator t(reg);
    Mem mem = [R](const std::vector<Term>& args) { return rel_atom(R, args); };
    Formula matrix = t.tr(f, mem, sorted_free_vars(f), {});
    return {t.so, matrix};
}

Formula eso_translate_atom(const GenAtomDef& d, const std::string& S) {
    validate(d);
    Translator t(nullptr);
    return t.atom(d, [S](const std::vector<Term>& args) { return rel_atom(S, args); });
}

std::string print_eso(const ESOFormula& psi) {
    std::ostringstream out;
    for (const auto& [s, k] : psi.soVars) out << "E2 " << s << '/' << k << ". ";
    out << print_formula(psi.matrix);
    return out.str();
}

namespace {

class Grounder {
public:
    enum Kind : std::uint8_t { False, True, Var, NotVar, And, Or };
    struct Gate {
        Kind kind;
        int var = -1;
        std::vector<int> kids;
    };

    Grounder(const Model& m, const std::vector<std::pair<std::string, int>>& so, std::size_t cap) : m_(m) {
        gates_.push_back({False, -1, {}});
        gates_.push_back({True, -1, {}});
        int offset = 0;
        for (const auto& [name, arity] : so) {
            double cells = std::pow(static_cast<double>(m.size()), static_cast<double>(arity));
            if (cells > static_cast<double>(cap))
                throw EsoCapExceeded("second-order variable " + name + " has " +
                                     std::to_string(static_cast<long long>(cells)) + " cells, cap is " +
                                     std::to_string(cap));
            if (m.relations.count(name)) throw LogicError("second-order variable " + name + " clashes with the model");
            so_[name] = {offset, arity};
            offset += static_cast<int>(cells);
        }
        nvars_ = offset;
    }

    int nvars() const { return nvars_; }

    int ground(const Formula& f, Assignment& env) {
        const Node& n = *f;
        switch (n.op) {
        case Op::Top: return 1;
        case Op::Bot: return 0;
        case Op::Eq:
        case Op::NegEq: return eval_single(m_, env, f) ? 1 : 0;
        case Op::FOAtom:
        case Op::NegFOAtom: {
            auto it = so_.find(n.name);
            if (it == so_.end()) return eval_single(m_, env, f) ? 1 : 0;
            if (static_cast<int>(n.terms.size()) != it->second.second)
                throw LogicError("second-order variable " + n.name + " used with the wrong arity");
            int cell = 0;
            for (const auto& t : n.terms) {
                int v;
                if (t.is_var()) {
                    auto e = env.find(t.name);
                    if (e == env.end()) throw LogicError("variable " + t.name + " is unbound in the matrix");
                    v = e->second;
                } else {
                    v = m_.constants.at(t.name);
                }
                cell = cell * m_.size() + v;
            }
            gates_.push_back({n.op == Op::FOAtom ? Var : NotVar, it->second.first + cell, {}});
            return static_cast<int>(gates_.size()) - 1;
        }
        case Op::And:
        case Op::SplitOr: {
            bool is_and = n.op == Op::And;
            std::vector<int> kids;
            for (const auto& c : {n.l, n.r}) {
                int g = ground(c, env);
                if (!absorb(is_and, g, kids)) return is_and ? 0 : 1;
            }
            return combine(is_and, std::move(kids));
        }
        case Op::Exists:
        case Op::Forall: {
            bool is_and = n.op == Op::Forall;
            auto saved = env.find(n.name) != env.end() ? std::optional<int>(env[n.name]) : std::nullopt;
            std::vector<int> kids;
            bool decided = false;
            for (int a = 0; a < m_.size() && !decided; ++a) {
                env[n.name] = a;
                int g = ground(n.l, env);
                if (!absorb(is_and, g, kids)) decided = true;
            }
            if (saved) env[n.name] = *saved;
            else env.erase(n.name);
            if (decided) return is_and ? 0 : 1;
            return combine(is_and, std::move(kids));
        }
        default: throw LogicError("eso matrix must be first-order");
        }
    }

    // 0 false, 1 true, 2 unknown
    int eval3(int g, const std::vector<std::int8_t>& a, std::vector<std::int8_t>& val) const {
        const Gate& G = gates_[g];
        int r;
        switch (G.kind) {
        case False: r = 0; break;
        case True: r = 1; break;
        case Var: r = a[G.var] < 0 ? 2 : a[G.var]; break;
        case NotVar: r = a[G.var] < 0 ? 2 : 1 - a[G.var]; break;
        default: {
            bool is_and = G.kind == And;
            r = is_and ? 1 : 0;
            for (int k : G.kids) {
                int v = eval3(k, a, val);
                if (v == (is_and ? 0 : 1)) {
                    r = v;
                    break;
                }
                if (v == 2) r = 2;
            }
        }
        }
        val[g] = static_cast<std::int8_t>(r);
        return r;
    }

    int unknown_var(int g, const std::vector<std::int8_t>& val) const {
        const Gate& G = gates_[g];
        if (G.kind == Var || G.kind == NotVar) return G.var;
        for (int k : G.kids)
            if (val[k] == 2) return unknown_var(k, val);
        return -1;
    }

    bool solve(int root) {
        std::vector<std::int8_t> a(nvars_, -1), val(gates_.size(), 2);
        return dpll(root, a, val);
    }

private:
    const Model& m_;
    std::map<std::string, std::pair<int, int>> so_;
    int nvars_ = 0;
    std::vector<Gate> gates_;

    // false when g decides the connective
    static bool absorb(bool is_and, int g, std::vector<int>& kids) {
        if (g == (is_and ? 0 : 1)) return false;
        if (g != (is_and ? 1 : 0)) kids.push_back(g);
        return true;
    }

    int combine(bool is_and, std::vector<int> kids) {
        if (kids.empty()) return is_and ? 1 : 0;
        if (kids.size() == 1) return kids[0];
        gates_.push_back({is_and ? And : Or, -1, std::move(kids)});
        return static_cast<int>(gates_.size()) - 1;
    }

    bool dpll(int root, std::vector<std::int8_t>& a, std::vector<std::int8_t>& val) {
        int r = eval3(root, a, val);
        if (r != 2) return r == 1;
        int v = unknown_var(root, val);
        for (std::int8_t b : {1, 0}) {
            a[v] = b;
            if (dpll(root, a, val)) return true;
        }
        a[v] = -1;
        return false;
    }
};

}  // namespace

bool eval_eso(const Model& m, const ESOFormula& psi, std::size_t cap) {
    Grounder g(m, psi.soVars, cap);
    Assignment env;
    int root = g.ground(expand_sugar(psi.matrix), env);
    return g.solve(root);
}

bool check_correspondence(const Model& m, const Team& x, const Formula& f, const AtomRegistry* reg) {
    bool team_side = eval(m, x, f, reg);
    VarList V = sorted_free_vars(f);
    std::string R = "R";
    std::set<std::string> taken;
    for (const auto& [k, r] : m.relations) taken.insert(k);
    for (const auto& [k, c] : m.constants) taken.insert(k);
    if (taken.count(R)) R = fresh_name(R, taken);
    ESOFormula psi = tau(f, R, reg);
    Model expanded = expand_with_relation(m, R, static_cast<int>(V.size()), rel(x, V));
    return team_side == eval_eso(expanded, psi);
}

}  // namespace tl
