#include "teamlogic/formula.hpp"

#include <algorithm>

namespace tl {

namespace {

Formula make(Node n) { return std::make_shared<const Node>(std::move(n)); }

void check_vars(const VarList& vs) {
    for (const auto& v : vs)
        if (v.empty()) throw LogicError("empty variable name");
}

}  // namespace

bool operator==(const Node& x, const Node& y) {
    if (x.op != y.op || x.name != y.name || x.terms != y.terms || x.a != y.a || x.b != y.b || x.c != y.c)
        return false;
    return equal(x.l, y.l) && equal(x.r, y.r);
}

bool equal(const Formula& x, const Formula& y) {
    if (x == y) return true;
    if (!x || !y) return false;
    return *x == *y;
}

Formula rel_atom(std::string rel, std::vector<Term> args) {
    if (rel.empty()) throw LogicError("empty relation symbol");
    return make({Op::FOAtom, std::move(rel), std::move(args), {}, {}, {}, nullptr, nullptr});
}

Formula neg_rel_atom(std::string rel, std::vector<Term> args) {
    if (rel.empty()) throw LogicError("empty relation symbol");
    return make({Op::NegFOAtom, std::move(rel), std::move(args), {}, {}, {}, nullptr, nullptr});
}

Formula eq(Term lhs, Term rhs) { return make({Op::Eq, "", {std::move(lhs), std::move(rhs)}, {}, {}, {}, nullptr, nullptr}); }
Formula neq(Term lhs, Term rhs) { return make({Op::NegEq, "", {std::move(lhs), std::move(rhs)}, {}, {}, {}, nullptr, nullptr}); }
Formula bot() { return make({Op::Bot, "", {}, {}, {}, {}, nullptr, nullptr}); }
Formula top() { return make({Op::Top, "", {}, {}, {}, {}, nullptr, nullptr}); }

Formula dep(VarList determiners, VarList dependent) {
    if (dependent.empty()) throw LogicError("dependence atom needs a dependent variable");
    check_vars(determiners);
    check_vars(dependent);
    return make({Op::Dep, "", {}, std::move(determiners), std::move(dependent), {}, nullptr, nullptr});
}

Formula ind(VarList xs, VarList zs, VarList ys) {
    check_vars(xs);
    check_vars(zs);
    check_vars(ys);
    return make({Op::Ind, "", {}, std::move(xs), std::move(zs), std::move(ys), nullptr, nullptr});
}

Formula inc(VarList xs, VarList ys) {
    if (xs.size() != ys.size()) throw LogicError("inclusion atom sides differ in length");
    check_vars(xs);
    check_vars(ys);
    return make({Op::Inc, "", {}, std::move(xs), std::move(ys), {}, nullptr, nullptr});
}

Formula gen(std::string atom, VarList args) {
    check_vars(args);
    return make({Op::Gen, std::move(atom), {}, std::move(args), {}, {}, nullptr, nullptr});
}

Formula conj(Formula l, Formula r) { return make({Op::And, "", {}, {}, {}, {}, std::move(l), std::move(r)}); }
Formula sor(Formula l, Formula r) { return make({Op::SplitOr, "", {}, {}, {}, {}, std::move(l), std::move(r)}); }
Formula bor(Formula l, Formula r) { return make({Op::BoolOr, "", {}, {}, {}, {}, std::move(l), std::move(r)}); }
Formula exists(std::string v, Formula body) { return make({Op::Exists, std::move(v), {}, {}, {}, {}, std::move(body), nullptr}); }
Formula forall(std::string v, Formula body) { return make({Op::Forall, std::move(v), {}, {}, {}, {}, std::move(body), nullptr}); }
Formula exists1(std::string v, Formula body) { return make({Op::Exists1, std::move(v), {}, {}, {}, {}, std::move(body), nullptr}); }
Formula forall1(std::string v, Formula body) { return make({Op::Forall1, std::move(v), {}, {}, {}, {}, std::move(body), nullptr}); }
Formula weak_neg(Formula body) { return make({Op::WNeg, "", {}, {}, {}, {}, std::move(body), nullptr}); }
Formula impl(Formula l, Formula r) { return make({Op::Impl, "", {}, {}, {}, {}, std::move(l), std::move(r)}); }

Formula seq_eq(VarList lhs, VarList rhs) {
    if (lhs.size() != rhs.size()) throw LogicError("sequence equality sides differ in length");
    if (lhs.empty()) return top();
    if (lhs.size() == 1) return eq(Term::var(lhs[0]), Term::var(rhs[0]));
    return make({Op::SeqEq, "", {}, std::move(lhs), std::move(rhs), {}, nullptr, nullptr});
}

Formula seq_neq(VarList lhs, VarList rhs) {
    if (lhs.size() != rhs.size()) throw LogicError("sequence inequality sides differ in length");
    if (lhs.empty()) return bot();
    if (lhs.size() == 1) return neq(Term::var(lhs[0]), Term::var(rhs[0]));
    return make({Op::SeqNeq, "", {}, std::move(lhs), std::move(rhs), {}, nullptr, nullptr});
}

Formula conj_all(const std::vector<Formula>& fs) {
    if (fs.empty()) return top();
    Formula acc = fs[0];
    for (size_t i = 1; i < fs.size(); ++i) acc = conj(acc, fs[i]);
    return acc;
}

Formula exists_block(const VarList& vs, Formula body) {
    for (auto it = vs.rbegin(); it != vs.rend(); ++it) body = exists(*it, body);
    return body;
}

bool is_quantifier(Op op) {
    return op == Op::Exists || op == Op::Forall || op == Op::Exists1 || op == Op::Forall1;
}

bool is_literal(const Formula& f) {
    return f->op == Op::FOAtom || f->op == Op::NegFOAtom || f->op == Op::Eq || f->op == Op::NegEq;
}

bool is_first_order(const Formula& f) {
    switch (f->op) {
    case Op::FOAtom: case Op::NegFOAtom: case Op::Eq: case Op::NegEq:
    case Op::Bot: case Op::Top: case Op::SeqEq: case Op::SeqNeq:
        return true;
    case Op::And: case Op::SplitOr: case Op::Impl:
        return is_first_order(f->l) && is_first_order(f->r);
    case Op::Exists: case Op::Forall:
        return is_first_order(f->l);
    default:
        return false;
    }
}

bool is_quantifier_free_fo(const Formula& f) {
    switch (f->op) {
    case Op::FOAtom: case Op::NegFOAtom: case Op::Eq: case Op::NegEq:
    case Op::Bot: case Op::Top: case Op::SeqEq: case Op::SeqNeq:
        return true;
    case Op::And: case Op::SplitOr: case Op::Impl:
        return is_quantifier_free_fo(f->l) && is_quantifier_free_fo(f->r);
    default:
        return false;
    }
}

namespace {

void collect_free(const Formula& f, std::set<std::string>& bound, std::set<std::string>& out) {
    auto add = [&](const std::string& v) {
        if (!bound.count(v)) out.insert(v);
    };
    switch (f->op) {
    case Op::FOAtom: case Op::NegFOAtom: case Op::Eq: case Op::NegEq:
        for (const auto& t : f->terms)
            if (t.is_var()) add(t.name);
        break;
    case Op::Dep: case Op::Ind: case Op::Inc: case Op::Gen: case Op::SeqEq: case Op::SeqNeq:
        for (const auto* vs : {&f->a, &f->b, &f->c})
            for (const auto& v : *vs) add(v);
        break;
    case Op::Bot: case Op::Top:
        break;
    case Op::Exists: case Op::Forall: case Op::Exists1: case Op::Forall1: {
        bool fresh = bound.insert(f->name).second;
        collect_free(f->l, bound, out);
        if (fresh) bound.erase(f->name);
        break;
    }
    case Op::WNeg:
        collect_free(f->l, bound, out);
        break;
    default:
        collect_free(f->l, bound, out);
        collect_free(f->r, bound, out);
    }
}

void collect_all(const Formula& f, std::set<std::string>& out) {
    for (const auto& t : f->terms)
        if (t.is_var()) out.insert(t.name);
    for (const auto* vs : {&f->a, &f->b, &f->c}) out.insert(vs->begin(), vs->end());
    if (is_quantifier(f->op)) out.insert(f->name);
    if (f->l) collect_all(f->l, out);
    if (f->r) collect_all(f->r, out);
}

}  // namespace

std::set<std::string> free_vars(const Formula& f) {
    std::set<std::string> bound, out;
    collect_free(f, bound, out);
    return out;
}

std::vector<std::string> sorted_free_vars(const Formula& f) {
    auto s = free_vars(f);
    return {s.begin(), s.end()};
}

std::set<std::string> all_vars(const Formula& f) {
    std::set<std::string> out;
    collect_all(f, out);
    return out;
}

std::set<std::string> constants_of(const Formula& f) {
    std::set<std::string> out;
    for (const auto& t : f->terms)
        if (!t.is_var()) out.insert(t.name);
    if (f->l) out.merge(constants_of(f->l));
    if (f->r) out.merge(constants_of(f->r));
    return out;
}

std::map<std::string, int> relations_of(const Formula& f) {
    std::map<std::string, int> out;
    auto merge = [&](const std::map<std::string, int>& m) {
        for (const auto& [k, v] : m) {
            auto [it, ok] = out.emplace(k, v);
            if (!ok && it->second != v) throw LogicError("relation " + k + " used with two arities");
        }
    };
    if (f->op == Op::FOAtom || f->op == Op::NegFOAtom) merge({{f->name, static_cast<int>(f->terms.size())}});
    if (f->l) merge(relations_of(f->l));
    if (f->r) merge(relations_of(f->r));
    return out;
}

int depth(const Formula& f) {
    int d = 0;
    if (f->l) d = std::max(d, depth(f->l));
    if (f->r) d = std::max(d, depth(f->r));
    return (f->l || f->r) ? d + 1 : 0;
}

std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
    std::string n = base + "'";
    while (avoid.count(n)) n += "'";
    return n;
}

Formula substitute(const Formula& f, const std::map<std::string, Term>& sigma) {
    auto map_term = [&](const Term& t) {
        if (!t.is_var()) return t;
        auto it = sigma.find(t.name);
        return it == sigma.end() ? t : it->second;
    };
    auto map_vars = [&](const VarList& vs) {
        VarList out;
        for (const auto& v : vs) {
            Term t = map_term(Term::var(v));
            if (!t.is_var()) throw LogicError("cannot substitute constant " + t.name + " into an atom argument");
            out.push_back(t.name);
        }
        return out;
    };
    Node n = *f;
    switch (f->op) {
    case Op::FOAtom: case Op::NegFOAtom: case Op::Eq: case Op::NegEq:
        for (auto& t : n.terms) t = map_term(t);
        return make(std::move(n));
    case Op::Dep: case Op::Ind: case Op::Inc: case Op::Gen: case Op::SeqEq: case Op::SeqNeq:
        n.a = map_vars(f->a);
        n.b = map_vars(f->b);
        n.c = map_vars(f->c);
        return make(std::move(n));
    case Op::Bot: case Op::Top:
        return f;
    case Op::Exists: case Op::Forall: case Op::Exists1: case Op::Forall1: {
        std::map<std::string, Term> inner;
        auto body_free = free_vars(f->l);
        for (const auto& [k, t] : sigma)
            if (k != f->name && body_free.count(k)) inner.emplace(k, t);
        if (inner.empty()) return f;
        bool capture = false;
        for (const auto& [k, t] : inner)
            if (t.is_var() && t.name == f->name) capture = true;
        std::string v = f->name;
        if (capture) {
            std::set<std::string> avoid = body_free;
            for (const auto& [k, t] : inner) {
                avoid.insert(k);
                if (t.is_var()) avoid.insert(t.name);
            }
            v = fresh_name(f->name, avoid);
            inner.emplace(f->name, Term::var(v));
        }
        n.name = v;
        n.l = substitute(f->l, inner);
        return make(std::move(n));
    }
    default:
        n.l = substitute(f->l, sigma);
        if (f->r) n.r = substitute(f->r, sigma);
        return make(std::move(n));
    }
}

Formula rename_var(const Formula& f, const std::string& from, const std::string& to) {
    return substitute(f, {{from, Term::var(to)}});
}

Formula fo_negate(const Formula& f) {
    switch (f->op) {
    case Op::FOAtom: return neg_rel_atom(f->name, f->terms);
    case Op::NegFOAtom: return rel_atom(f->name, f->terms);
    case Op::Eq: return neq(f->terms[0], f->terms[1]);
    case Op::NegEq: return eq(f->terms[0], f->terms[1]);
    case Op::Bot: return top();
    case Op::Top: return bot();
    case Op::And: return sor(fo_negate(f->l), fo_negate(f->r));
    case Op::SplitOr: return conj(fo_negate(f->l), fo_negate(f->r));
    case Op::Exists: return forall(f->name, fo_negate(f->l));
    case Op::Forall: return exists(f->name, fo_negate(f->l));
    case Op::SeqEq: return seq_neq(f->a, f->b);
    case Op::SeqNeq: return seq_eq(f->a, f->b);
    case Op::Impl:
        if (!is_first_order(f->l) || !is_first_order(f->r)) break;
        return conj(f->l, fo_negate(f->r));
    default:
        break;
    }
    throw LogicError("fo_negate applied to a formula outside first-order logic");
}

Formula expand_sugar(const Formula& f) {
    switch (f->op) {
    case Op::Impl:
        if (!is_first_order(f->l)) throw LogicError("implication with a non-first-order antecedent");
        return sor(fo_negate(expand_sugar(f->l)), expand_sugar(f->r));
    case Op::SeqEq: {
        std::vector<Formula> parts;
        for (size_t i = 0; i < f->a.size(); ++i) parts.push_back(eq(Term::var(f->a[i]), Term::var(f->b[i])));
        return conj_all(parts);
    }
    case Op::SeqNeq: {
        Formula acc = neq(Term::var(f->a[0]), Term::var(f->b[0]));
        for (size_t i = 1; i < f->a.size(); ++i) acc = sor(acc, neq(Term::var(f->a[i]), Term::var(f->b[i])));
        return acc;
    }
    default:
        break;
    }
    if (!f->l) return f;
    Node n = *f;
    n.l = expand_sugar(f->l);
    if (f->r) n.r = expand_sugar(f->r);
    if (equal(n.l, f->l) && (!f->r || equal(n.r, f->r))) return f;
    return make(std::move(n));
}

}  // namespace tl
