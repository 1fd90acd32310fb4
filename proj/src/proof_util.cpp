#include "proof_util.hpp"

#include <functional>

#include "teamlogic/proofkernel.hpp"

namespace tl::detail {

namespace {

using Binds = std::vector<std::pair<std::string, std::string>>;

bool var_eq(const std::string& a, const std::string& b, const Binds& env) {
    for (auto it = env.rbegin(); it != env.rend(); ++it) {
        bool ma = it->first == a, mb = it->second == b;
        if (ma || mb) return ma && mb;
    }
    return a == b;
}

bool list_eq(const VarList& x, const VarList& y, const Binds& env) {
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (!var_eq(x[i], y[i], env)) return false;
    return true;
}

bool alpha(const Formula& f, const Formula& g, Binds& env) {
    if (!f || !g) return !f && !g;
    if (f->op != g->op) return false;
    if (is_quantifier(f->op)) {
        env.emplace_back(f->name, g->name);
        bool ok = alpha(f->l, g->l, env);
        env.pop_back();
        return ok;
    }
    if (f->name != g->name || f->terms.size() != g->terms.size()) return false;
    for (std::size_t i = 0; i < f->terms.size(); ++i) {
        const Term &s = f->terms[i], &t = g->terms[i];
        if (s.kind != t.kind) return false;
        if (s.is_var() ? !var_eq(s.name, t.name, env) : s.name != t.name) return false;
    }
    return list_eq(f->a, g->a, env) && list_eq(f->b, g->b, env) && list_eq(f->c, g->c, env) &&
           alpha(f->l, g->l, env) && alpha(f->r, g->r, env);
}

struct Matcher {
    std::map<std::string, Term> sigma;

    bool bind(const std::string& v, const Term& t) {
        auto [it, fresh] = sigma.emplace(v, t);
        return fresh || it->second == t;
    }
    bool terms(const Term& p, const Term& t, const std::set<std::string>& holes) {
        if (p.is_var() && holes.count(p.name)) return bind(p.name, t);
        return p == t;
    }
    bool list(const VarList& p, const VarList& t, const std::set<std::string>& holes) {
        if (p.size() != t.size()) return false;
        for (std::size_t i = 0; i < p.size(); ++i)
            if (!terms(Term::var(p[i]), Term::var(t[i]), holes)) return false;
        return true;
    }
    bool run(const Formula& p, const Formula& t, const std::set<std::string>& holes) {
        if (!p || !t) return !p && !t;
        if (p->op != t->op || p->name != t->name || p->terms.size() != t->terms.size()) return false;
        if (is_quantifier(p->op)) {
            auto inner = holes;
            inner.erase(p->name);
            return run(p->l, t->l, inner);
        }
        for (std::size_t i = 0; i < p->terms.size(); ++i)
            if (!terms(p->terms[i], t->terms[i], holes)) return false;
        return list(p->a, t->a, holes) && list(p->b, t->b, holes) && list(p->c, t->c, holes) &&
               run(p->l, t->l, holes) && run(p->r, t->r, holes);
    }
};

}  // namespace

bool alpha_equal(const Formula& f, const Formula& g) {
    Binds env;
    return alpha(f, g, env);
}

void conjuncts(const Formula& f, std::vector<Formula>& out) {
    if (f->op == Op::And) {
        conjuncts(f->l, out);
        conjuncts(f->r, out);
    } else {
        out.push_back(f);
    }
}

std::optional<std::map<std::string, Term>> match_instance(const Formula& p, const Formula& t,
                                                          const std::set<std::string>& holes) {
    Matcher m;
    if (!m.run(p, t, holes)) return std::nullopt;
    try {
        if (!equal(substitute(p, m.sigma), t)) return std::nullopt;
    } catch (const LogicError&) {
        return std::nullopt;
    }
    return m.sigma;
}

std::pair<VarList, Formula> strip_exists(const Formula& f, std::size_t max) {
    VarList vs;
    Formula g = f;
    while (g->op == Op::Exists && vs.size() < max) {
        vs.push_back(g->name);
        g = g->l;
    }
    return {vs, g};
}

}  // namespace tl::detail

namespace tl {

namespace {

struct FoSearch {
    std::map<std::pair<bool, std::string>, int> term_index;
    std::vector<int> cls;
    std::vector<Formula> premises;
    Formula conclusion;
    std::map<std::pair<std::string, std::vector<int>>, int> ground;
    std::vector<bool> truth;
    bool relation_stage = false;

    int idx(const Term& t) const { return term_index.at({t.is_var(), t.name}); }

    void collect(const Formula& f) {
        if (!f) return;
        for (const auto& t : f->terms)
            term_index.emplace(std::pair{t.is_var(), t.name}, static_cast<int>(term_index.size()));
        collect(f->l);
        collect(f->r);
    }

    // 0 false, 1 true, 2 unknown
    int ev(const Formula& f) {
        switch (f->op) {
        case Op::Bot: return 0;
        case Op::Top: return 1;
        case Op::Eq:
        case Op::NegEq: {
            int x = cls[static_cast<std::size_t>(idx(f->terms[0]))], y = cls[static_cast<std::size_t>(idx(f->terms[1]))];
            if (x < 0 || y < 0) return 2;
            return (x == y) == (f->op == Op::Eq) ? 1 : 0;
        }
        case Op::FOAtom:
        case Op::NegFOAtom: {
            if (!relation_stage) return 2;
            std::vector<int> key;
            for (const auto& t : f->terms) key.push_back(cls[static_cast<std::size_t>(idx(t))]);
            bool v = truth[static_cast<std::size_t>(ground.at({f->name, key}))];
            return v == (f->op == Op::FOAtom) ? 1 : 0;
        }
        case Op::And: {
            int a = ev(f->l);
            if (a == 0) return 0;
            int b = ev(f->r);
            if (b == 0) return 0;
            return a == 1 && b == 1 ? 1 : 2;
        }
        case Op::SplitOr:
        case Op::BoolOr: {
            int a = ev(f->l);
            if (a == 1) return 1;
            int b = ev(f->r);
            if (b == 1) return 1;
            return a == 0 && b == 0 ? 0 : 2;
        }
        default: throw LogicError("bounded first-order step on a non first-order formula");
        }
    }

    void ground_atoms(const Formula& f) {
        if (!f) return;
        if (f->op == Op::FOAtom || f->op == Op::NegFOAtom) {
            std::vector<int> key;
            for (const auto& t : f->terms) key.push_back(cls[static_cast<std::size_t>(idx(t))]);
            ground.emplace(std::pair{f->name, key}, static_cast<int>(ground.size()));
        }
        ground_atoms(f->l);
        ground_atoms(f->r);
    }

    bool consistent_now() {
        for (const auto& p : premises)
            if (ev(p) == 0) return false;
        return ev(conclusion) != 1;
    }

    bool countermodel(std::size_t i, int ncls) {
        if (!consistent_now()) return false;
        if (i == cls.size()) {
            ground.clear();
            for (const auto& p : premises) ground_atoms(p);
            ground_atoms(conclusion);
            if (ground.size() > 20) throw LogicError("bounded first-order step: too many relational atoms");
            relation_stage = true;
            truth.assign(ground.size(), false);
            bool found = false;
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << ground.size()) && !found; ++mask) {
                for (std::size_t k = 0; k < ground.size(); ++k) truth[k] = (mask >> k) & 1;
                bool all = true;
                for (const auto& p : premises) all = all && ev(p) == 1;
                found = all && ev(conclusion) == 0;
            }
            relation_stage = false;
            return found;
        }
        for (int c = 0; c <= ncls; ++c) {
            cls[i] = c;
            if (countermodel(i + 1, std::max(ncls, c + 1))) return true;
        }
        cls[i] = -1;
        return false;
    }
};

}  // namespace

bool bounded_fo_step(const std::vector<Formula>& premises, const Formula& conclusion) {
    FoSearch s;
    for (const auto& p : premises) {
        if (!is_quantifier_free_fo(p)) throw LogicError("bounded first-order step needs quantifier-free premises");
        s.premises.push_back(expand_sugar(p));
    }
    if (!is_quantifier_free_fo(conclusion)) throw LogicError("bounded first-order step needs a quantifier-free conclusion");
    s.conclusion = expand_sugar(conclusion);
    for (const auto& p : s.premises) s.collect(p);
    s.collect(s.conclusion);
    s.cls.assign(s.term_index.size(), -1);
    return !s.countermodel(0, 0);
}

}  // namespace tl
