#pragma once

#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace tl {

struct LogicError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Term {
    enum class Kind { Var, Const };
    Kind kind = Kind::Var;
    std::string name;

    static Term var(std::string n) { return {Kind::Var, std::move(n)}; }
    static Term cst(std::string n) { return {Kind::Const, std::move(n)}; }
    bool is_var() const { return kind == Kind::Var; }

    friend bool operator==(const Term&, const Term&) = default;
    friend auto operator<=>(const Term&, const Term&) = default;
};

enum class Op {
    FOAtom, NegFOAtom, Eq, NegEq, Bot, Top,
    Dep, Ind, Inc, Gen,
    And, SplitOr, BoolOr,
    Exists, Forall, Exists1, Forall1,
    WNeg,
    // sugar, removed by expand_sugar
    Impl, SeqEq, SeqNeq,
};

struct Node;
using Formula = std::shared_ptr<const Node>;
using VarList = std::vector<std::string>;

// Field use by op:
//   FOAtom/NegFOAtom: name = relation, terms = args
//   Eq/NegEq:         terms = {lhs, rhs}
//   Dep:              a = determiners, b = dependent
//   Ind:              a = xs, b = zs (conditioning), c = ys
//   Inc:              a = xs, b = ys
//   Gen:              name = atom, a = args
//   SeqEq/SeqNeq:     a = lhs, b = rhs
//   quantifiers:      name = bound variable, l = body
//   binary:           l, r ; WNeg: l
struct Node {
    Op op;
    std::string name;
    std::vector<Term> terms;
    VarList a, b, c;
    Formula l, r;
};

bool operator==(const Node& x, const Node& y);
bool equal(const Formula& x, const Formula& y);

// constructors
Formula rel_atom(std::string rel, std::vector<Term> args);
Formula neg_rel_atom(std::string rel, std::vector<Term> args);
Formula eq(Term lhs, Term rhs);
Formula neq(Term lhs, Term rhs);
Formula bot();
Formula top();
Formula dep(VarList determiners, VarList dependent);
Formula ind(VarList xs, VarList zs, VarList ys);
Formula inc(VarList xs, VarList ys);
Formula gen(std::string atom, VarList args);
Formula conj(Formula l, Formula r);
Formula sor(Formula l, Formula r);
Formula bor(Formula l, Formula r);
Formula exists(std::string v, Formula body);
Formula forall(std::string v, Formula body);
Formula exists1(std::string v, Formula body);
Formula forall1(std::string v, Formula body);
Formula weak_neg(Formula body);
Formula impl(Formula l, Formula r);
// length-1 sequences collapse to Eq/NegEq
Formula seq_eq(VarList lhs, VarList rhs);
Formula seq_neq(VarList lhs, VarList rhs);

Formula conj_all(const std::vector<Formula>& fs);  // empty -> top
Formula exists_block(const VarList& vs, Formula body);

bool is_quantifier(Op op);
bool is_first_order(const Formula& f);
bool is_literal(const Formula& f);
// quantifier-free FO, sugar allowed
bool is_quantifier_free_fo(const Formula& f);

std::set<std::string> free_vars(const Formula& f);
std::vector<std::string> sorted_free_vars(const Formula& f);
std::set<std::string> all_vars(const Formula& f);
std::set<std::string> constants_of(const Formula& f);
// relation symbol -> arity; throws on inconsistent arity
std::map<std::string, int> relations_of(const Formula& f);
int depth(const Formula& f);

Formula substitute(const Formula& f, const std::map<std::string, Term>& sigma);
Formula rename_var(const Formula& f, const std::string& from, const std::string& to);

Formula fo_negate(const Formula& f);
Formula expand_sugar(const Formula& f);

std::string fresh_name(const std::string& base, const std::set<std::string>& avoid);

}  // namespace tl
