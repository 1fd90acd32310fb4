#include "teamlogic/semantics.hpp"

#include <algorithm>
#include <cmath>

#include "block_solver.hpp"
#include "native_atoms.hpp"
#include "teamlogic/genatom.hpp"

namespace tl {

namespace {

int term_value(const Model& m, const Assignment& s, const Term& t) {
    if (t.is_var()) {
        auto it = s.find(t.name);
        if (it == s.end()) throw LogicError("variable " + t.name + " is unassigned");
        return it->second;
    }
    auto it = m.constants.find(t.name);
    if (it == m.constants.end()) throw LogicError("constant " + t.name + " is not interpreted in the model");
    return it->second;
}

bool holds_rel(const Model& m, const Assignment& s, const Node& n) {
    auto it = m.relations.find(n.name);
    if (it == m.relations.end()) throw LogicError("relation " + n.name + " is not interpreted in the model");
    if (it->second.arity != static_cast<int>(n.terms.size()))
        throw LogicError("relation " + n.name + " used with the wrong arity");
    Tuple t;
    for (const auto& a : n.terms) t.push_back(term_value(m, s, a));
    return it->second.tuples.count(t) > 0;
}

bool seq_equal(const Assignment& s, const VarList& a, const VarList& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        auto ia = s.find(a[i]), ib = s.find(b[i]);
        if (ia == s.end() || ib == s.end()) throw LogicError("variable in a sequence equation is unassigned");
        if (ia->second != ib->second) return false;
    }
    return true;
}

void flatten_and(const Formula& f, std::vector<Formula>& out) {
    if (f->op == Op::And) {
        flatten_and(f->l, out);
        flatten_and(f->r, out);
    } else {
        out.push_back(f);
    }
}

}  // namespace

bool eval_single(const Model& m, const Assignment& s, const Formula& f) {
    const Node& n = *f;
    switch (n.op) {
    case Op::FOAtom: return holds_rel(m, s, n);
    case Op::NegFOAtom: return !holds_rel(m, s, n);
    case Op::Eq: return term_value(m, s, n.terms[0]) == term_value(m, s, n.terms[1]);
    case Op::NegEq: return term_value(m, s, n.terms[0]) != term_value(m, s, n.terms[1]);
    case Op::Bot: return false;
    case Op::Top: return true;
    case Op::And: return eval_single(m, s, n.l) && eval_single(m, s, n.r);
    case Op::SplitOr: return eval_single(m, s, n.l) || eval_single(m, s, n.r);
    case Op::Impl: return !eval_single(m, s, n.l) || eval_single(m, s, n.r);
    case Op::SeqEq: return seq_equal(s, n.a, n.b);
    case Op::SeqNeq: return !seq_equal(s, n.a, n.b);
    case Op::Exists:
    case Op::Forall: {
        Assignment t = s;
        for (int a = 0; a < m.size(); ++a) {
            t[n.name] = a;
            bool v = eval_single(m, t, n.l);
            if (n.op == Op::Exists && v) return true;
            if (n.op == Op::Forall && !v) return false;
        }
        return n.op == Op::Forall;
    }
    default: throw LogicError("row-wise evaluation needs a first-order formula");
    }
}

bool downward_closed_syntax(const Formula& f) {
    if (is_first_order(f)) return true;
    switch (f->op) {
    case Op::Dep: return true;
    case Op::And:
    case Op::SplitOr:
    case Op::BoolOr: return downward_closed_syntax(f->l) && downward_closed_syntax(f->r);
    case Op::Exists:
    case Op::Forall:
    case Op::Exists1:
    case Op::Forall1: return downward_closed_syntax(f->l);
    default: return false;
    }
}

Evaluator::Evaluator(const Model& m, const AtomRegistry* atoms, EvalBudget budget)
    : m_(m), atoms_(atoms), budget_(budget) {}

bool Evaluator::eval(const Team& x, const Formula& f) {
    for (const auto& v : free_vars(f))
        if (!x.has(v)) throw LogicError("free variable " + v + " is outside the team domain");
    keep_.push_back(f);
    if (memo_.size() > 4'000'000) memo_.clear();
    return eval_node(x, f);
}

bool Evaluator::eval_node(const Team& x, const Formula& f) {
    const Node& n = *f;
    if (fo_shortcut_ && is_first_order(f)) {
        for (std::size_t i = 0; i < x.size(); ++i)
            if (!eval_single(m_, x.assignment(i), f)) return false;
        return true;
    }
    switch (n.op) {
    case Op::FOAtom:
    case Op::NegFOAtom:
    case Op::Eq:
    case Op::NegEq:
        for (std::size_t i = 0; i < x.size(); ++i)
            if (!eval_single(m_, x.assignment(i), f)) return false;
        return true;
    case Op::Bot: return x.empty();
    case Op::Top: return true;
    case Op::Dep: return native::dep_holds(x.rows(), native::columns(x, n.a), native::columns(x, n.b));
    case Op::Inc: return native::inc_holds(x.rows(), native::columns(x, n.a), native::columns(x, n.b));
    case Op::Ind:
        return native::ind_holds(x.rows(), native::columns(x, n.a), native::columns(x, n.b), native::columns(x, n.c));
    case Op::And: return eval_node(x, n.l) && eval_node(x, n.r);
    case Op::Impl:
    case Op::SeqEq:
    case Op::SeqNeq: {
        auto it = expanded_.find(f.get());
        if (it == expanded_.end()) it = expanded_.emplace(f.get(), expand_sugar(f)).first;
        return eval_node(x, it->second);
    }
    default: break;
    }
    auto key = std::make_pair(f.get(), x);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    bool v = false;
    switch (n.op) {
    case Op::Gen: {
        if (!atoms_) throw LogicError("generalized atom @" + n.name + " needs an atom registry");
        v = x.empty() || eval_direct(m_, x, atoms_->get(n.name), n.a);
        break;
    }
    case Op::SplitOr: v = eval_split(x, f); break;
    case Op::BoolOr: v = eval_node(x, n.l) || eval_node(x, n.r); break;
    case Op::WNeg: v = x.empty() || !eval_node(x, n.l); break;
    case Op::Exists: v = eval_exists(x, f); break;
    case Op::Forall: v = eval_node(duplicate(x, m_, n.name), n.l); break;
    case Op::Exists1:
    case Op::Forall1: {
        v = n.op == Op::Forall1;
        for (int a = 0; a < m_.size(); ++a) {
            bool r = eval_node(duplicate_value(x, n.name, a), n.l);
            if (n.op == Op::Exists1 && r) v = true;
            if (n.op == Op::Forall1 && !r) v = false;
            if (v == (n.op == Op::Exists1)) break;
        }
        break;
    }
    default: throw LogicError("unhandled formula in team evaluation");
    }
    memo_.emplace(std::move(key), v);
    return v;
}

bool Evaluator::eval_split(const Team& x, const Formula& f) {
    if (eval_node(x, f->l) || eval_node(x, f->r)) return true;
    std::size_t n = x.size();
    if (n > budget_.maxSplitRows)
        throw BudgetExceeded("split disjunction over " + std::to_string(n) + " rows exceeds the budget of " +
                             std::to_string(budget_.maxSplitRows));
    std::uint64_t full = (1ULL << n) - 1;
    // covers_r[t]: the right disjunct holds on some subteam containing t
    std::vector<char> ok_l(full + 1), covers_r(full + 1);
    for (std::uint64_t s = 0; s <= full; ++s) {
        ok_l[s] = eval_node(x.subteam(s), f->l);
        covers_r[s] = eval_node(x.subteam(s), f->r);
    }
    for (std::size_t b = 0; b < n; ++b)
        for (std::uint64_t s = 0; s <= full; ++s)
            if ((s >> b & 1ULL) && covers_r[s]) covers_r[s & ~(1ULL << b)] = 1;
    for (std::uint64_t s = 0; s <= full; ++s)
        if (ok_l[s] && covers_r[full & ~s]) return true;
    return false;
}

bool Evaluator::eval_exists(const Team& x, const Formula& f) {
    if (x.empty()) return true;
    if (block_solver_) {
        std::set<std::string> used(x.vars().begin(), x.vars().end());
        for (const auto& v : all_vars(f)) used.insert(v);
        VarList w;
        std::vector<Formula> parts, pending{f};
        bool solvable = true;
        while (!pending.empty() && solvable) {
            Formula g = pending.back();
            pending.pop_back();
            if (g->op == Op::Exists) {
                std::string v = g->name;
                Formula body = g->l;
                if (x.has(v) || std::find(w.begin(), w.end(), v) != w.end()) {
                    std::string fresh = fresh_name(v, used);
                    used.insert(fresh);
                    body = rename_var(body, v, fresh);
                    v = fresh;
                }
                w.push_back(v);
                pending.push_back(body);
            } else if (g->op == Op::And) {
                pending.push_back(g->r);
                pending.push_back(g->l);
            } else if (is_first_order(g) || g->op == Op::Dep || g->op == Op::Ind || g->op == Op::Inc) {
                parts.push_back(g);
            } else {
                solvable = false;
            }
        }
        if (solvable) {
            std::vector<Formula> fo, atoms;
            for (const auto& p : parts) {
                if (p->op == Op::Top) continue;
                if (p->op == Op::Bot) return false;
                (is_first_order(p) ? fo : atoms).push_back(p);
            }
            return detail::solve_block(m_, x, w, fo, atoms, budget_);
        }
    }
    return eval_exists_rowwise(x, f);
}

bool Evaluator::eval_exists_rowwise(const Team& x, const Formula& f) {
    const std::string& v = f->name;
    std::set<std::string> keep(x.vars().begin(), x.vars().end());
    keep.erase(v);
    Team base = x.has(v) ? restrict(x, keep) : x;
    if (base.size() > budget_.maxSplitRows)
        throw BudgetExceeded("existential supplement search over " + std::to_string(base.size()) +
                             " rows exceeds the budget of " + std::to_string(budget_.maxSplitRows));

    std::vector<Formula> conj, fo;
    flatten_and(f->l, conj);
    for (const auto& c : conj) {
        auto fv = free_vars(c);
        bool local = std::all_of(fv.begin(), fv.end(), [&](const std::string& u) { return u == v || base.has(u); });
        if (local && is_first_order(c)) fo.push_back(c);
    }
    bool singletons = downward_closed_syntax(f->l);

    std::vector<std::vector<std::set<int>>> options(base.size());
    double combos = 1;
    for (std::size_t i = 0; i < base.size(); ++i) {
        Assignment s = base.assignment(i);
        std::vector<int> allowed;
        for (int a = 0; a < m_.size(); ++a) {
            s[v] = a;
            if (std::all_of(fo.begin(), fo.end(), [&](const Formula& c) { return eval_single(m_, s, c); }))
                allowed.push_back(a);
        }
        if (allowed.empty()) return false;
        if (singletons) {
            for (int a : allowed) options[i].push_back({a});
        } else {
            for (std::uint64_t mask = 1; mask < (1ULL << allowed.size()); ++mask) {
                std::set<int> pick;
                for (std::size_t b = 0; b < allowed.size(); ++b)
                    if (mask >> b & 1ULL) pick.insert(allowed[b]);
                options[i].push_back(std::move(pick));
            }
        }
        combos *= static_cast<double>(options[i].size());
    }
    if (combos > static_cast<double>(budget_.maxSupplementRows))
        throw BudgetExceeded("existential supplement search has " + std::to_string(static_cast<long long>(combos)) +
                             " candidate functions, budget is " + std::to_string(budget_.maxSupplementRows));

    std::vector<std::size_t> pos(base.size(), 0);
    for (;;) {
        SupplementFunction F;
        for (std::size_t i = 0; i < base.size(); ++i) F[base.rows()[i]] = options[i][pos[i]];
        if (eval_node(supplement(base, F, v), f->l)) return true;
        std::size_t i = base.size();
        while (i > 0 && ++pos[i - 1] == options[i - 1].size()) pos[--i] = 0;
        if (i == 0) return false;
    }
}

bool eval(const Model& m, const Team& x, const Formula& f, const AtomRegistry* atoms, EvalBudget budget) {
    Evaluator e(m, atoms, budget);
    return e.eval(x, f);
}

}  // namespace tl
