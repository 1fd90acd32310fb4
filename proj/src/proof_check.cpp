#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "proof_util.hpp"
#include "teamlogic/negation.hpp"
#include "teamlogic/parser.hpp"
#include "teamlogic/proofkernel.hpp"

namespace tl {

using detail::alpha_equal;
using detail::conjuncts;
using detail::match_instance;
using detail::strip_exists;

namespace {

struct Reject {
    std::string reason;
};

bool scope_prefix(const std::vector<int>& a, const std::vector<int>& b) {
    return a.size() <= b.size() && std::equal(a.begin(), a.end(), b.begin());
}

VarList concat(std::initializer_list<VarList> parts) {
    VarList out;
    for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    return out;
}

VarList slice(const VarList& v, std::size_t from, std::size_t n) {
    return VarList(v.begin() + static_cast<std::ptrdiff_t>(from), v.begin() + static_cast<std::ptrdiff_t>(from + n));
}

bool distinct(const VarList& v) { return std::set<std::string>(v.begin(), v.end()).size() == v.size(); }

class Checker {
public:
    Checker(const ProofScript& s, const AtomRegistry* reg) : s_(s), reg_(reg) {
        for (std::size_t i = 0; i < s.steps.size(); ++i) idx_[s.steps[i].number] = i;
    }

    const ProofStep& at(int number) const {
        auto it = idx_.find(number);
        if (it == idx_.end()) throw Reject{"no step " + std::to_string(number)};
        return s_.steps[it->second];
    }

    const ProofStep& line(const ProofStep& p, const Cite& c) const {
        if (c.block()) throw Reject{"expected a single line, got block " + std::to_string(c.from) + "-" + std::to_string(c.to)};
        const auto& l = at(c.from);
        if (l.number >= p.number) throw Reject{"cites a later step " + std::to_string(c.from)};
        if (!scope_prefix(l.scope, p.scope)) throw Reject{"step " + std::to_string(c.from) + " lies in a closed subproof"};
        return l;
    }

    const ProofStep& block(const ProofStep& p, const Cite& c) const {
        if (!c.block()) throw Reject{"expected a subproof, got line " + std::to_string(c.from)};
        const auto& a = at(c.from);
        if (a.rule != "assume") throw Reject{"step " + std::to_string(c.from) + " does not open a subproof"};
        if (a.closed_by != c.to) throw Reject{"subproof " + std::to_string(c.from) + " does not end at " + std::to_string(c.to)};
        if (c.to >= p.number) throw Reject{"subproof " + std::to_string(c.from) + " is not closed yet"};
        std::vector<int> parent(a.scope.begin(), a.scope.end() - 1);
        if (!scope_prefix(parent, p.scope) || parent.size() != p.scope.size())
            throw Reject{"subproof " + std::to_string(c.from) + " is not directly inside the current one"};
        return a;
    }

    // hypotheses before p and the assumptions open at p
    std::vector<Formula> context(const ProofStep& p) const {
        std::vector<Formula> out;
        for (const auto& st : s_.steps) {
            if (st.number >= p.number) break;
            if (st.rule == "hyp") out.push_back(st.formula);
        }
        for (int a : p.scope)
            if (a != p.number) out.push_back(at(a).formula);
        return out;
    }

    void arity(const ProofStep& p, std::size_t n) const {
        if (p.cites.size() != n)
            throw Reject{p.rule + " takes " + std::to_string(n) + " citation(s), got " + std::to_string(p.cites.size())};
    }

    void check(const ProofStep& p) const;

    ProofVerdict run() const {
        ProofVerdict v;
        for (const auto& st : s_.steps) {
            try {
                check(st);
            } catch (const Reject& r) {
                v.step = st.number;
                v.reason = r.reason;
                return v;
            } catch (const LogicError& e) {
                v.step = st.number;
                v.reason = e.what();
                return v;
            }
            if (st.rule == "hyp") v.hypotheses.push_back(st.formula);
        }
        const auto& last = s_.steps.back();
        if (last.depth != 0) {
            v.step = last.number;
            v.reason = "the script must end with a top-level line";
            return v;
        }
        v.conclusion = last.formula;
        v.accepted = true;
        return v;
    }

private:
    const ProofScript& s_;
    const AtomRegistry* reg_;
    std::map<int, std::size_t> idx_;

    void exists_intro(const ProofStep& p) const;
    void exists_elim(const ProofStep& p) const;
    void inc_compose(const ProofStep& p) const;
    void inc_extend(const ProofStep& p) const;
    void ind_elim(const ProofStep& p) const;
};

void Checker::exists_intro(const ProofStep& p) const {
    arity(p, 1);
    const auto& prem = line(p, p.cites[0]).formula;
    auto [all, body0] = strip_exists(p.formula);
    for (std::size_t k = 1; k <= all.size(); ++k) {
        auto [vs, body] = strip_exists(p.formula, k);
        if (match_instance(body, prem, {vs.begin(), vs.end()})) return;
    }
    throw Reject{"not an existential generalisation of step " + std::to_string(p.cites[0].from)};
}

void Checker::exists_elim(const ProofStep& p) const {
    arity(p, 2);
    const auto& major = line(p, p.cites[0]).formula;
    const auto& a = block(p, p.cites[1]);
    const auto& last = at(a.closed_by);
    if (!equal(last.formula, p.formula)) throw Reject{"conclusion differs from the last line of the subproof"};
    auto [all, body0] = strip_exists(major);
    if (all.empty()) throw Reject{"major premise is not existential"};
    std::set<std::string> side;
    for (const auto& f : context(p))
        for (const auto& v : free_vars(f)) side.insert(v);
    for (const auto& v : free_vars(p.formula)) side.insert(v);
    for (const auto& v : free_vars(major)) side.insert(v);
    std::string why = "assumption is not an instance of the major premise";
    for (std::size_t k = 1; k <= all.size(); ++k) {
        auto [xs, body] = strip_exists(major, k);
        auto sigma = match_instance(body, a.formula, {xs.begin(), xs.end()});
        if (!sigma) continue;
        VarList ys;
        bool ok = true;
        for (const auto& x : xs) {
            auto it = sigma->find(x);
            if (it == sigma->end()) ys.push_back(x);
            else if (it->second.is_var()) ys.push_back(it->second.name);
            else ok = false;
        }
        if (!ok || !distinct(ys)) {
            why = "eigenvariables must be distinct variables";
            continue;
        }
        auto bad = std::find_if(ys.begin(), ys.end(), [&](const std::string& y) { return side.count(y) > 0; });
        if (bad != ys.end()) {
            why = "eigenvariable " + *bad + " occurs free in the conclusion, the major premise or an open assumption";
            continue;
        }
        return;
    }
    throw Reject{why};
}

void Checker::inc_compose(const ProofStep& p) const {
    arity(p, 2);
    const auto& i = line(p, p.cites[0]).formula;
    const auto& alpha = line(p, p.cites[1]).formula;
    if (i->op != Op::Inc) throw Reject{"first citation must be an inclusion atom"};
    if (!is_first_order(alpha)) throw Reject{"second citation must be first-order"};
    std::map<std::string, std::set<std::string>> allowed;
    for (std::size_t k = 0; k < i->b.size(); ++k) allowed[i->b[k]].insert(i->a[k]);
    for (const auto& v : free_vars(alpha))
        if (!allowed.count(v)) throw Reject{"variable " + v + " of the compressed formula is not on the right of the inclusion"};

    std::multiset<std::string> bound;
    auto occ = [&](const std::string& av, const std::string& cv) {
        if (bound.count(av)) return av == cv;
        auto it = allowed.find(av);
        if (it == allowed.end()) return av == cv;
        return it->second.count(cv) > 0 && !bound.count(cv);
    };
    auto lists = [&](const VarList& x, const VarList& y) {
        if (x.size() != y.size()) return false;
        for (std::size_t k = 0; k < x.size(); ++k)
            if (!occ(x[k], y[k])) return false;
        return true;
    };
    std::function<bool(const Formula&, const Formula&)> walk = [&](const Formula& f, const Formula& g) -> bool {
        if (!f || !g) return !f && !g;
        if (f->op != g->op || f->name != g->name || f->terms.size() != g->terms.size()) return false;
        if (is_quantifier(f->op)) {
            auto it = bound.insert(f->name);
            bool ok = walk(f->l, g->l);
            bound.erase(it);
            return ok;
        }
        for (std::size_t k = 0; k < f->terms.size(); ++k) {
            const Term &s = f->terms[k], &t = g->terms[k];
            if (s.kind != t.kind) return false;
            if (s.is_var() ? !occ(s.name, t.name) : s.name != t.name) return false;
        }
        return lists(f->a, g->a) && lists(f->b, g->b) && lists(f->c, g->c) && walk(f->l, g->l) && walk(f->r, g->r);
    };
    if (!walk(alpha, p.formula)) throw Reject{"conclusion is not the compressed formula"};
}

void Checker::inc_extend(const ProofStep& p) const {
    arity(p, 1);
    const auto& i = line(p, p.cites[0]).formula;
    if (i->op != Op::Inc) throw Reject{"citation must be an inclusion atom"};
    auto [zs, body] = strip_exists(p.formula);
    if (zs.empty() || body->op != Op::Inc) throw Reject{"conclusion must be an existentially closed inclusion"};
    if (!distinct(zs)) throw Reject{"extension variables must be distinct"};
    const std::size_t n = i->a.size();
    if (body->a != concat({i->a, zs}) || body->b.size() != n + zs.size() || slice(body->b, 0, n) != i->b)
        throw Reject{"conclusion does not extend the cited inclusion"};
    VarList u = slice(body->b, n, zs.size());
    for (const auto& z : zs)
        if (std::count(i->a.begin(), i->a.end(), z) || std::count(i->b.begin(), i->b.end(), z) ||
            std::count(u.begin(), u.end(), z))
            throw Reject{"extension variable " + z + " is not fresh"};
}

void Checker::ind_elim(const ProofStep& p) const {
    arity(p, 3);
    const auto& ia = line(p, p.cites[0]).formula;
    const auto& p1 = line(p, p.cites[1]).formula;
    const auto& p2 = line(p, p.cites[2]).formula;
    VarList x, z, y;
    if (ia->op == Op::Ind) {
        x = ia->a, z = ia->b, y = ia->c;
    } else if (ia->op == Op::Dep) {
        x = ia->b, z = ia->a, y = ia->b;
    } else {
        throw Reject{"first citation must be an independence or dependence atom"};
    }
    if (x.empty() || y.empty()) throw Reject{"independence sides must be non-empty"};
    if (p1->op != Op::Inc || p2->op != Op::Inc) throw Reject{"second and third citations must be inclusion atoms"};
    const VarList& r = p1->b;
    VarList xyz = concat({x, y, z});
    if (p2->b != r || r.size() < xyz.size() || slice(r, 0, xyz.size()) != xyz)
        throw Reject{"inclusions must have the right-hand side x y z s"};
    const std::size_t nx = x.size(), ny = y.size(), nz = z.size();
    auto [bs, body] = strip_exists(p.formula, r.size());
    if (bs.size() != r.size()) throw Reject{"conclusion must bind one variable per column"};
    if (!distinct(bs)) throw Reject{"bound variables must be distinct"};
    std::set<std::string> used = all_vars(ia);
    for (const auto& v : all_vars(p1)) used.insert(v);
    for (const auto& v : all_vars(p2)) used.insert(v);
    for (const auto& b : bs)
        if (used.count(b)) throw Reject{"bound variable " + b + " clashes with a premise"};
    const VarList &l1 = p1->a, &l2 = p2->a;
    VarList w1 = slice(l1, 0, nx), u2 = slice(l2, nx, ny), v1 = slice(l1, nx + ny, nz), v2 = slice(l2, nx + ny, nz);
    VarList w3 = slice(bs, 0, nx), u3 = slice(bs, nx, ny), v3 = slice(bs, nx + ny, nz);
    Formula cons = nz == 0 ? seq_eq(concat({w3, u3}), concat({w1, u2}))
                           : impl(seq_eq(v1, v2), seq_eq(concat({w3, u3, v3}), concat({w1, u2, v2})));
    if (!equal(body, conj(inc(bs, r), cons))) throw Reject{"conclusion does not match the independence elimination"};
}

void Checker::check(const ProofStep& p) const {
    const auto& r = p.rule;
    if (r == "assume") return;
    if (r == "hyp") {
        arity(p, 0);
        if (p.depth != 0) throw Reject{"hypotheses must be top-level"};
        return;
    }
    if (r == "existsI") return exists_intro(p);
    if (r == "existsE") return exists_elim(p);
    if (r == "wnegE") {
        arity(p, 1);
        const auto& a = block(p, p.cites[0]);
        if (at(a.closed_by).formula->op != Op::Bot) throw Reject{"subproof must end in bot"};
        if (!alpha_equal(expand_sugar(a.formula), wneg_elim_target(p.formula, reg_)))
            throw Reject{"assumption is not the weak negation of the conclusion"};
        return;
    }
    if (r == "andI") {
        arity(p, 2);
        if (!equal(p.formula, conj(line(p, p.cites[0]).formula, line(p, p.cites[1]).formula)))
            throw Reject{"conclusion is not the conjunction of the cited lines"};
        return;
    }
    if (r == "andE") {
        arity(p, 1);
        std::vector<Formula> cs;
        conjuncts(line(p, p.cites[0]).formula, cs);
        if (std::none_of(cs.begin(), cs.end(), [&](const Formula& c) { return equal(c, p.formula); }))
            throw Reject{"conclusion is not a conjunct of the cited line"};
        return;
    }
    if (r == "orI") {
        arity(p, 1);
        const auto& f = line(p, p.cites[0]).formula;
        if ((p.formula->op != Op::SplitOr && p.formula->op != Op::BoolOr) ||
            !(equal(p.formula->l, f) || equal(p.formula->r, f)))
            throw Reject{"conclusion is not a disjunction with the cited line as a disjunct"};
        return;
    }
    if (r == "eqRefl") {
        arity(p, 0);
        const auto& f = p.formula;
        bool ok = (f->op == Op::Eq && f->terms[0] == f->terms[1]) || (f->op == Op::SeqEq && f->a == f->b);
        if (!ok) throw Reject{"not an identity"};
        return;
    }
    if (r == "fo") {
        std::vector<Formula> prem;
        for (const auto& c : p.cites) prem.push_back(line(p, c).formula);
        if (!bounded_fo_step(prem, p.formula)) throw Reject{"not a first-order consequence of the cited lines"};
        return;
    }
    if (r == "incId") {
        arity(p, 0);
        if (p.formula->op != Op::Inc || p.formula->a.empty() || p.formula->a != p.formula->b)
            throw Reject{"not an identity inclusion"};
        return;
    }
    if (r == "incPro") {
        arity(p, 1);
        const auto& f = line(p, p.cites[0]).formula;
        const auto& g = p.formula;
        if (f->op != Op::Inc || g->op != Op::Inc || g->a.empty()) throw Reject{"projection relates inclusion atoms"};
        for (std::size_t k = 0; k < g->a.size(); ++k) {
            bool found = false;
            for (std::size_t i = 0; i < f->a.size() && !found; ++i) found = f->a[i] == g->a[k] && f->b[i] == g->b[k];
            if (!found) throw Reject{"column " + g->a[k] + " / " + g->b[k] + " is not a column of the cited inclusion"};
        }
        return;
    }
    if (r == "incTrs") {
        arity(p, 2);
        const auto& f = line(p, p.cites[0]).formula;
        const auto& g = line(p, p.cites[1]).formula;
        const auto& h = p.formula;
        if (f->op != Op::Inc || g->op != Op::Inc || h->op != Op::Inc || f->b != g->a || h->a != f->a || h->b != g->b)
            throw Reject{"not a transitive composition of the cited inclusions"};
        return;
    }
    if (r == "incCmp") return inc_compose(p);
    if (r == "incExt") return inc_extend(p);
    if (r == "indE") return ind_elim(p);
    throw Reject{"unknown rule '" + r + "'"};
}

}  // namespace

ProofVerdict check_proof(const ProofScript& s, const AtomRegistry* reg) { return Checker(s, reg).run(); }

Formula wneg_elim_target(const Formula& goal, const AtomRegistry* reg) {
    return expand_sugar(wneg(expand_sugar(goal), reg));
}

ClosedFormula close_formula(const std::vector<Formula>& delta, const Formula& chi) {
    std::set<std::string> keep;
    for (const auto& d : delta)
        for (const auto& v : free_vars(d)) keep.insert(v);
    VarList xs = sorted_free_vars(chi);
    for (const auto& v : xs)
        if (keep.count(v)) throw LogicError("variable " + v + " is free in both the context and the closed formula");
    ClosedFormula out;
    out.closed = exists_block(xs, chi);
    std::ostringstream intro, elim;
    int n = 1;
    for (const auto& d : delta) {
        intro << n << ". " << print_formula(d) << " ; hyp\n";
        elim << n << ". " << print_formula(d) << " ; hyp\n";
        ++n;
    }
    intro << n << ". " << print_formula(chi) << " ; hyp\n";
    elim << n << ". " << print_formula(out.closed) << " ; hyp\n";
    if (!xs.empty()) {
        intro << n + 1 << ". " << print_formula(out.closed) << " ; existsI " << n << "\n";
        elim << "assume " << n + 1 << ". " << print_formula(chi) << "\n"
             << "  " << n + 2 << ". " << print_formula(out.closed) << " ; existsI " << n + 1 << "\n"
             << "qed " << n + 1 << "\n"
             << n + 3 << ". " << print_formula(out.closed) << " ; existsE " << n << " " << n + 1 << "-" << n + 2 << "\n";
    }
    out.intro_schema = intro.str();
    out.elim_schema = elim.str();
    return out;
}

std::vector<RuleInstance> rule_instances(const ProofScript& s, const AtomRegistry* reg) {
    Checker c(s, reg);
    std::vector<RuleInstance> out;
    for (const auto& p : s.steps) {
        if (p.rule == "assume" || p.rule == "hyp") continue;
        RuleInstance ri;
        ri.rule = p.rule;
        ri.conclusion = p.formula;
        for (const auto& ct : p.cites) {
            if (!ct.block()) {
                ri.premises.push_back(c.at(ct.from).formula);
                continue;
            }
            for (const auto& f : c.context(p)) ri.premises.push_back(f);
            ri.assumption = c.at(ct.from).formula;
            ri.minor = c.at(ct.to).formula;
        }
        out.push_back(std::move(ri));
    }
    return out;
}

std::vector<ProofScript> citation_mutants(const ProofScript& s) {
    std::vector<ProofScript> out;
    for (std::size_t i = 0; i < s.steps.size(); ++i) {
        const auto& p = s.steps[i];
        for (std::size_t j = 0; j < p.cites.size(); ++j) {
            const auto& ct = p.cites[j];
            if (ct.block()) continue;
            auto orig = std::find_if(s.steps.begin(), s.steps.end(), [&](const ProofStep& q) { return q.number == ct.from; });
            if (orig == s.steps.end()) continue;
            const ProofStep* best = nullptr;
            long best_d = 0;
            for (std::size_t k = 0; k < i; ++k) {
                const auto& q = s.steps[k];
                if (!scope_prefix(q.scope, p.scope) || equal(q.formula, orig->formula)) continue;
                long d = std::labs(static_cast<long>(k) - static_cast<long>(orig - s.steps.begin()));
                if (!best || d < best_d) best = &q, best_d = d;
            }
            if (!best) continue;
            ProofScript m = s;
            m.steps[i].cites[j].from = best->number;
            out.push_back(std::move(m));
        }
    }
    return out;
}

}  // namespace tl
