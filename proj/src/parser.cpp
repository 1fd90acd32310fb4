#include "teamlogic/parser.hpp"

#include <cctype>
#include <vector>

namespace tl {

ParseError::ParseError(const std::string& msg, SourceSpan s)
    : LogicError(msg + " at " + std::to_string(s.start) + ".." + std::to_string(s.end)), span(s) {}

namespace {

enum class Tok { Ident, Const, LParen, RParen, Comma, Semi, Dot, Eq, Neq, And, Or, BOr, Bang, Arrow, At, End };

struct Token {
    Tok kind;
    std::string text;
    SourceSpan span;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$' || c == '\''; }

std::vector<Token> lex(const std::string& s) {
    std::vector<Token> out;
    size_t i = 0;
    auto push = [&](Tok k, size_t len) {
        out.push_back({k, s.substr(i, len), {i, i + len}});
        i += len;
    };
    while (i < s.size()) {
        char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) { ++i; continue; }
        if (ident_start(c)) {
            size_t j = i;
            while (j < s.size() && ident_char(s[j])) ++j;
            push(Tok::Ident, j - i);
            continue;
        }
        if (c == '\'' && i + 1 < s.size() && ident_start(s[i + 1])) {
            size_t j = i + 1;
            while (j < s.size() && ident_char(s[j])) ++j;
            out.push_back({Tok::Const, s.substr(i + 1, j - i - 1), {i, j}});
            i = j;
            continue;
        }
        auto starts = [&](const char* p) { return s.compare(i, std::char_traits<char>::length(p), p) == 0; };
        if (starts("/\\")) { push(Tok::And, 2); continue; }
        if (starts("\\/")) { push(Tok::Or, 2); continue; }
        if (starts("||")) { push(Tok::BOr, 2); continue; }
        if (starts("!=")) { push(Tok::Neq, 2); continue; }
        if (starts("->")) { push(Tok::Arrow, 2); continue; }
        switch (c) {
        case '(': push(Tok::LParen, 1); continue;
        case ')': push(Tok::RParen, 1); continue;
        case ',': push(Tok::Comma, 1); continue;
        case ';': push(Tok::Semi, 1); continue;
        case '.': push(Tok::Dot, 1); continue;
        case '=': push(Tok::Eq, 1); continue;
        case '!': push(Tok::Bang, 1); continue;
        case '@': push(Tok::At, 1); continue;
        default:
            throw ParseError(std::string("unexpected character '") + c + "'", {i, i + 1});
        }
    }
    out.push_back({Tok::End, "", {s.size(), s.size()}});
    return out;
}

const std::set<std::string> kKeywords = {"E", "A", "E1", "A1", "wneg", "bot", "top", "inc", "ind"};

class Parser {
public:
    Parser(const std::string& text, const ParseOptions& o) : toks_(lex(text)), opts_(o) {}

    Formula run() {
        Formula f = formula();
        if (peek().kind != Tok::End) fail("trailing input");
        return f;
    }

private:
    std::vector<Token> toks_;
    size_t pos_ = 0;
    const ParseOptions& opts_;

    const Token& peek(size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
    Token take() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
    bool accept(Tok k) {
        if (peek().kind != k) return false;
        ++pos_;
        return true;
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg + (peek().text.empty() ? "" : " near '" + peek().text + "'"), peek().span);
    }
    void expect(Tok k, const char* what) {
        if (!accept(k)) fail(std::string("expected ") + what);
    }

    Formula formula() {
        Formula l = bor_level();
        if (accept(Tok::Arrow)) {
            Formula r = formula();
            Formula f = impl(l, r);
            if (!is_first_order(l)) fail("'->' needs a first-order antecedent");
            return opts_.keep_sugar ? f : expand_sugar(f);
        }
        return l;
    }
    Formula bor_level() {
        Formula f = or_level();
        while (accept(Tok::BOr)) f = bor(f, or_level());
        return f;
    }
    Formula or_level() {
        Formula f = and_level();
        while (accept(Tok::Or)) f = sor(f, and_level());
        return f;
    }
    Formula and_level() {
        Formula f = pre();
        while (accept(Tok::And)) f = conj(f, pre());
        return f;
    }

    Formula pre() {
        const Token& t = peek();
        if (t.kind == Tok::Ident && (t.text == "E" || t.text == "A" || t.text == "E1" || t.text == "A1") &&
            peek(1).kind == Tok::Ident && peek(2).kind == Tok::Dot) {
            std::string q = take().text;
            std::string v = variable();
            expect(Tok::Dot, "'.'");
            Formula body = pre();
            if (q == "E") return exists(v, body);
            if (q == "A") return forall(v, body);
            if (q == "E1") return exists1(v, body);
            return forall1(v, body);
        }
        if (t.kind == Tok::Ident && t.text == "wneg") {
            take();
            return weak_neg(pre());
        }
        if (t.kind == Tok::Bang) {
            SourceSpan sp = take().span;
            Formula body = pre();
            if (!is_first_order(body)) throw ParseError("'!' applied to a non-first-order formula", sp);
            Formula n = fo_negate(body);
            return opts_.keep_sugar ? n : expand_sugar(n);
        }
        return prim();
    }

    std::string variable() {
        const Token& t = peek();
        if (t.kind != Tok::Ident) fail("expected a variable");
        if (kKeywords.count(t.text)) fail("keyword used as a variable");
        if (!opts_.allow_reserved && t.text.find('$') != std::string::npos)
            fail("variables containing '$' are reserved");
        if (opts_.constants.count(t.text)) fail("constant used where a variable is required");
        return take().text;
    }

    bool at_variable() const {
        return peek().kind == Tok::Ident && !kKeywords.count(peek().text) && !opts_.constants.count(peek().text);
    }

    Term term() {
        if (peek().kind == Tok::Const) return Term::cst(take().text);
        if (peek().kind == Tok::Ident && opts_.constants.count(peek().text)) return Term::cst(take().text);
        return Term::var(variable());
    }

    // variables separated by commas or blanks, stopping at ';' or ')'
    VarList var_list() {
        VarList out;
        while (peek().kind != Tok::Semi && peek().kind != Tok::RParen) {
            out.push_back(variable());
            accept(Tok::Comma);
        }
        return out;
    }

    Formula prim() {
        const Token& t = peek();
        if (t.kind == Tok::LParen) {
            take();
            Formula f = formula();
            expect(Tok::RParen, "')'");
            return f;
        }
        if (t.kind == Tok::Eq && peek(1).kind == Tok::LParen) {
            take();
            take();
            VarList first = var_list();
            if (accept(Tok::Semi)) {
                VarList dependent = var_list();
                expect(Tok::RParen, "')'");
                if (dependent.empty()) fail("dependence atom needs a dependent variable");
                return dep(first, dependent);
            }
            expect(Tok::RParen, "')'");
            if (first.empty()) fail("empty dependence atom");
            std::string last = first.back();
            first.pop_back();
            return dep(first, {last});
        }
        if (t.kind == Tok::At) {
            take();
            if (peek().kind != Tok::Ident) fail("expected an atom name");
            return gen_atom(take());
        }
        if (t.kind == Tok::Ident && t.text == "bot") { take(); return bot(); }
        if (t.kind == Tok::Ident && t.text == "top") { take(); return top(); }
        if (t.kind == Tok::Ident && (t.text == "inc" || t.text == "ind") && peek(1).kind == Tok::LParen) {
            Token kw = take();
            take();
            VarList g1 = var_list();
            expect(Tok::Semi, "';'");
            VarList g2 = var_list();
            if (kw.text == "inc") {
                expect(Tok::RParen, "')'");
                if (g1.size() != g2.size()) throw ParseError("inclusion atom sides differ in length", kw.span);
                return inc(g1, g2);
            }
            expect(Tok::Semi, "';'");
            VarList g3 = var_list();
            expect(Tok::RParen, "')'");
            return ind(g1, g2, g3);
        }
        if (t.kind == Tok::Ident && peek(1).kind == Tok::LParen && !kKeywords.count(t.text)) {
            if (opts_.atoms && opts_.atoms->count(t.text)) return gen_atom(take());
            std::string rel = take().text;
            take();
            std::vector<Term> args;
            while (peek().kind != Tok::RParen) {
                args.push_back(term());
                if (!accept(Tok::Comma)) break;
            }
            expect(Tok::RParen, "')'");
            return rel_atom(rel, args);
        }
        return equation();
    }

    Formula gen_atom(const Token& name) {
        expect(Tok::LParen, "'('");
        VarList args = var_list();
        expect(Tok::RParen, "')'");
        if (opts_.atoms) {
            auto it = opts_.atoms->find(name.text);
            if (it == opts_.atoms->end()) throw ParseError("unknown atom '" + name.text + "'", name.span);
            if (it->second != static_cast<int>(args.size()))
                throw ParseError("atom '" + name.text + "' expects " + std::to_string(it->second) + " arguments",
                                 name.span);
        }
        return gen(name.text, args);
    }

    Formula equation() {
        SourceSpan start = peek().span;
        std::vector<Term> lhs;
        lhs.push_back(term());
        while (peek().kind == Tok::Ident && at_variable()) lhs.push_back(term());
        bool negated = false;
        if (accept(Tok::Neq)) negated = true;
        else if (!accept(Tok::Eq)) fail("expected '=' or '!='");
        if (lhs.size() == 1) {
            Term rhs = term();
            return negated ? neq(lhs[0], rhs) : eq(lhs[0], rhs);
        }
        VarList l, r;
        for (const auto& x : lhs) {
            if (!x.is_var()) throw ParseError("sequence equations take variables only", start);
            l.push_back(x.name);
        }
        for (size_t i = 0; i < l.size(); ++i) r.push_back(variable());
        Formula f = negated ? seq_neq(l, r) : seq_eq(l, r);
        return opts_.keep_sugar ? f : expand_sugar(f);
    }
};

int level(const Formula& f) {
    switch (f->op) {
    case Op::Impl: return 0;
    case Op::BoolOr: return 1;
    case Op::SplitOr: return 2;
    case Op::And: return 3;
    default: return 4;
    }
}

std::string join(const VarList& vs) {
    std::string out;
    for (size_t i = 0; i < vs.size(); ++i) out += (i ? ", " : "") + vs[i];
    return out;
}

std::string join_blank(const VarList& vs) {
    std::string out;
    for (size_t i = 0; i < vs.size(); ++i) out += (i ? " " : "") + vs[i];
    return out;
}

std::string print_at(const Formula& f, int min_level);

std::string print_node(const Formula& f) {
    switch (f->op) {
    case Op::FOAtom: case Op::NegFOAtom: {
        std::string s = (f->op == Op::NegFOAtom ? "!" : "") + f->name + "(";
        for (size_t i = 0; i < f->terms.size(); ++i) s += (i ? ", " : "") + print_term(f->terms[i]);
        return s + ")";
    }
    case Op::Eq: return print_term(f->terms[0]) + " = " + print_term(f->terms[1]);
    case Op::NegEq: return print_term(f->terms[0]) + " != " + print_term(f->terms[1]);
    case Op::SeqEq: return join_blank(f->a) + " = " + join_blank(f->b);
    case Op::SeqNeq: return join_blank(f->a) + " != " + join_blank(f->b);
    case Op::Bot: return "bot";
    case Op::Top: return "top";
    case Op::Dep: return "=(" + join(f->a) + (f->a.empty() ? "; " : " ; ") + join(f->b) + ")";
    case Op::Ind: return "ind(" + join(f->a) + " ;" + (f->b.empty() ? "" : " " + join(f->b)) + " ; " + join(f->c) + ")";
    case Op::Inc: return "inc(" + join(f->a) + " ; " + join(f->b) + ")";
    case Op::Gen: return "@" + f->name + "(" + join(f->a) + ")";
    case Op::And: return print_at(f->l, 3) + " /\\ " + print_at(f->r, 4);
    case Op::SplitOr: return print_at(f->l, 2) + " \\/ " + print_at(f->r, 3);
    case Op::BoolOr: return print_at(f->l, 1) + " || " + print_at(f->r, 2);
    case Op::Impl: return print_at(f->l, 1) + " -> " + print_at(f->r, 0);
    case Op::Exists: return "E " + f->name + ". " + print_at(f->l, 4);
    case Op::Forall: return "A " + f->name + ". " + print_at(f->l, 4);
    case Op::Exists1: return "E1 " + f->name + ". " + print_at(f->l, 4);
    case Op::Forall1: return "A1 " + f->name + ". " + print_at(f->l, 4);
    case Op::WNeg: return "wneg " + print_at(f->l, 4);
    }
    return "?";
}

std::string print_at(const Formula& f, int min_level) {
    std::string s = print_node(f);
    return level(f) < min_level ? "(" + s + ")" : s;
}

}  // namespace

Formula parse_formula(const std::string& text, const ParseOptions& opts) { return Parser(text, opts).run(); }

std::string print_formula(const Formula& f) { return print_at(f, 0); }

std::string print_term(const Term& t) { return t.is_var() ? t.name : "'" + t.name; }

}  // namespace tl
