#include "teamlogic/negation.hpp"

#include "teamlogic/parser.hpp"

namespace tl {

NotNegatable::NotNegatable(NegatableReport r)
    : LogicError("formula is outside the negatable fragment: " + (r.reason.empty() ? std::string() : r.reason.back())),
      report(std::move(r)) {}

namespace {

bool check(const Formula& f, std::vector<std::string>& trace) {
    if (is_first_order(f)) {
        trace.push_back("first-order: " + print_formula(f));
        return true;
    }
    switch (f->op) {
    case Op::Dep:
    case Op::Ind:
    case Op::Inc:
    case Op::Gen: trace.push_back("atom: " + print_formula(f)); return true;
    case Op::And:
    case Op::BoolOr:
        trace.push_back(std::string(f->op == Op::And ? "conjunction" : "boolean disjunction") + ": " + print_formula(f));
        return check(f->l, trace) && check(f->r, trace);
    case Op::Exists1:
    case Op::Forall1:
    case Op::WNeg: trace.push_back("closure: " + print_formula(f)); return check(f->l, trace);
    default: trace.push_back("offending: " + print_formula(f)); return false;
    }
}

Formula strip_wneg(const Formula& f, const AtomRegistry* reg);

Formula synth(const Formula& f, const AtomRegistry* reg) {
    if (is_first_order(f)) {
        Formula body = fo_negate(expand_sugar(f));
        VarList xs = sorted_free_vars(f);
        if (xs.empty()) return body;
        std::set<std::string> avoid = all_vars(f);
        VarList ws;
        std::map<std::string, Term> sigma;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            std::string w = "w" + std::to_string(i + 1);
            if (avoid.count(w)) w = fresh_name(w, avoid);
            avoid.insert(w);
            ws.push_back(w);
            sigma.emplace(xs[i], Term::var(w));
        }
        return exists_block(ws, conj(inc(ws, xs), substitute(body, sigma)));
    }
    switch (f->op) {
    case Op::Dep:
    case Op::Ind:
    case Op::Inc:
    case Op::Gen: {
        GenInstance g = as_gen(f, reg);
        return sigma_pi_translate(complement(g.def), g.args);
    }
    case Op::And: return bor(synth(f->l, reg), synth(f->r, reg));
    case Op::BoolOr: return conj(synth(f->l, reg), synth(f->r, reg));
    case Op::Exists1: return forall1(f->name, synth(f->l, reg));
    case Op::Forall1: return exists1(f->name, synth(f->l, reg));
    case Op::WNeg: return strip_wneg(f->l, reg);
    default: throw LogicError("formula is outside the negatable fragment");
    }
}

Formula strip_wneg(const Formula& f, const AtomRegistry* reg) {
    switch (f->op) {
    case Op::WNeg: return synth(f->l, reg);
    case Op::And: return conj(strip_wneg(f->l, reg), strip_wneg(f->r, reg));
    case Op::BoolOr: return bor(strip_wneg(f->l, reg), strip_wneg(f->r, reg));
    case Op::Exists1: return exists1(f->name, strip_wneg(f->l, reg));
    case Op::Forall1: return forall1(f->name, strip_wneg(f->l, reg));
    default: return f;
    }
}

}  // namespace

NegatableReport is_negatable_fragment(const Formula& f) {
    NegatableReport r;
    r.inFragment = check(f, r.reason);
    return r;
}

Formula wneg(const Formula& f, const AtomRegistry* reg) {
    NegatableReport r = is_negatable_fragment(f);
    if (!r.inFragment) throw NotNegatable(std::move(r));
    return synth(f, reg);
}

}  // namespace tl
