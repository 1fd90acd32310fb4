#include "teamlogic/genatom.hpp"

#include <numeric>
#include <regex>
#include <sstream>

#include "native_atoms.hpp"
#include "teamlogic/parser.hpp"
#include "teamlogic/semantics.hpp"
#include "text.hpp"

namespace tl {

int GenAtomDef::relation_arity() const { return std::accumulate(k.begin(), k.end(), 0) * m; }

bool GenAtomDef::round_is_universal(int i) const { return (polarity == Polarity::Pi) == (i % 2 == 1); }

std::string grid_var(int i, int j, int l) {
    return "w$" + std::to_string(i) + "$" + std::to_string(j) + "$" + std::to_string(l);
}

VarList grid_tuple(int i, int j, int m) {
    VarList out;
    for (int l = 1; l <= m; ++l) out.push_back(grid_var(i, j, l));
    return out;
}

std::vector<VarList> grid_group(const GenAtomDef& d, int i) {
    std::vector<VarList> out;
    for (int j = 1; j <= d.k.at(i - 1); ++j) out.push_back(grid_tuple(i, j, d.m));
    return out;
}

VarList grid_vars(const GenAtomDef& d) {
    VarList out;
    for (int i = 1; i <= d.n; ++i)
        for (const auto& t : grid_group(d, i)) out.insert(out.end(), t.begin(), t.end());
    return out;
}

bool is_grid_var(const std::string& v) { return v.rfind("w$", 0) == 0; }

void validate(const GenAtomDef& d) {
    if (d.n < 1) throw LogicError("atom " + d.name + ": n must be positive");
    if (static_cast<int>(d.k.size()) != d.n) throw LogicError("atom " + d.name + ": k must list n entries");
    for (int ki : d.k)
        if (ki < 1) throw LogicError("atom " + d.name + ": entries of k must be positive");
    if (d.m < 1) throw LogicError("atom " + d.name + ": m must be positive");
    if (!d.phi || !is_first_order(d.phi)) throw LogicError("atom " + d.name + ": phi must be first-order");
    VarList grid = grid_vars(d);
    std::set<std::string> allowed(grid.begin(), grid.end());
    for (const auto& v : free_vars(d.phi))
        if (!allowed.count(v)) throw LogicError("atom " + d.name + ": phi mentions " + v + " outside the grid");
}

void AtomRegistry::add(GenAtomDef d) {
    validate(d);
    std::string key = d.name;
    defs_.insert_or_assign(key, std::move(d));
}

const GenAtomDef* AtomRegistry::find(const std::string& name) const {
    auto it = defs_.find(name);
    return it == defs_.end() ? nullptr : &it->second;
}

const GenAtomDef& AtomRegistry::get(const std::string& name) const {
    const GenAtomDef* d = find(name);
    if (!d) throw LogicError("unknown generalized atom " + name);
    return *d;
}

std::map<std::string, int> AtomRegistry::arities() const {
    std::map<std::string, int> out;
    for (const auto& [k, d] : defs_) out[k] = d.m;
    return out;
}

namespace {

Formula grid_eq(int i1, int j1, int i2, int j2, int l1, int l2) {
    return eq(Term::var(grid_var(i1, j1, l1)), Term::var(grid_var(i2, j2, l2)));
}

Formula guarded(const std::vector<Formula>& antecedent, const std::vector<Formula>& consequent) {
    Formula c = conj_all(consequent);
    if (antecedent.empty()) return c;
    return sor(fo_negate(conj_all(antecedent)), c);
}

}  // namespace

GenAtomDef make_dep_def(int k, int p) {
    if (k < 0 || p < 1) throw LogicError("dependence atom needs k >= 0 determiners and p >= 1 dependents");
    GenAtomDef d;
    d.name = "dep" + std::to_string(k) + (p > 1 ? "_" + std::to_string(p) : "");
    d.polarity = Polarity::Pi;
    d.n = 1;
    d.k = {2};
    d.m = k + p;
    std::vector<Formula> ante, cons;
    for (int l = 1; l <= k; ++l) ante.push_back(grid_eq(1, 1, 1, 2, l, l));
    for (int l = k + 1; l <= k + p; ++l) cons.push_back(grid_eq(1, 1, 1, 2, l, l));
    d.phi = guarded(ante, cons);
    return d;
}

GenAtomDef make_ind_def(int k, int m, int n) {
    if (k < 1 || m < 1 || n < 0) throw LogicError("independence atom needs k, m >= 1 and n >= 0");
    GenAtomDef d;
    d.name = "ind" + std::to_string(k) + "_" + std::to_string(m) + "_" + std::to_string(n);
    d.polarity = Polarity::Pi;
    d.n = 2;
    d.k = {2, 1};
    d.m = k + m + n;
    std::vector<Formula> ante, cons;
    for (int l = k + m + 1; l <= d.m; ++l) {
        ante.push_back(grid_eq(1, 1, 1, 2, l, l));
        cons.push_back(grid_eq(2, 1, 1, 1, l, l));
    }
    for (int l = 1; l <= k; ++l) cons.push_back(grid_eq(2, 1, 1, 1, l, l));
    for (int l = k + 1; l <= k + m; ++l) cons.push_back(grid_eq(2, 1, 1, 2, l, l));
    d.phi = guarded(ante, cons);
    return d;
}

GenAtomDef make_inc_def(int k) {
    if (k < 1) throw LogicError("inclusion atom needs k >= 1");
    GenAtomDef d;
    d.name = "inc" + std::to_string(k);
    d.polarity = Polarity::Pi;
    d.n = 2;
    d.k = {1, 1};
    d.m = 2 * k;
    std::vector<Formula> parts;
    for (int l = 1; l <= k; ++l) parts.push_back(grid_eq(1, 1, 2, 1, l, k + l));
    d.phi = conj_all(parts);
    return d;
}

GenAtomDef make_fo_def(const std::string& name, const Formula& phi) {
    if (!is_first_order(phi)) throw LogicError("fo atom needs a first-order formula");
    VarList vs = sorted_free_vars(phi);
    if (vs.empty()) throw LogicError("fo atom needs a formula with free variables");
    std::map<std::string, Term> sigma;
    for (std::size_t l = 0; l < vs.size(); ++l) sigma.emplace(vs[l], Term::var(grid_var(1, 1, static_cast<int>(l) + 1)));
    GenAtomDef d;
    d.name = name;
    d.polarity = Polarity::Pi;
    d.n = 1;
    d.k = {1};
    d.m = static_cast<int>(vs.size());
    d.phi = substitute(expand_sugar(phi), sigma);
    return d;
}

AtomRegistry register_builtin_atoms() {
    AtomRegistry r;
    for (int k = 0; k <= 3; ++k) r.add(make_dep_def(k));
    for (int k = 0; k <= 2; ++k) r.add(make_dep_def(k, 2));
    for (int k = 1; k <= 3; ++k) r.add(make_inc_def(k));
    for (int k = 1; k <= 2; ++k)
        for (int m = 1; m <= 2; ++m)
            for (int n = 0; n <= 1; ++n) r.add(make_ind_def(k, m, n));
    return r;
}

GenInstance as_gen(const Formula& atom, const AtomRegistry* reg) {
    auto cat = [](VarList a, const VarList& b) {
        a.insert(a.end(), b.begin(), b.end());
        return a;
    };
    switch (atom->op) {
    case Op::Dep:
        return {make_dep_def(static_cast<int>(atom->a.size()), static_cast<int>(atom->b.size())), cat(atom->a, atom->b)};
    case Op::Ind:
        return {make_ind_def(static_cast<int>(atom->a.size()), static_cast<int>(atom->c.size()),
                             static_cast<int>(atom->b.size())),
                cat(cat(atom->a, atom->c), atom->b)};
    case Op::Inc: return {make_inc_def(static_cast<int>(atom->a.size())), cat(atom->a, atom->b)};
    case Op::Gen:
        if (!reg) throw LogicError("generalized atom @" + atom->name + " needs an atom registry");
        return {reg->get(atom->name), atom->a};
    default: throw LogicError("not an atom with a generalized-atom form");
    }
}

namespace {

bool direct_round(const Model& m, const GenAtomDef& d, const std::vector<Tuple>& rel_tuples, int i, Assignment& s) {
    if (i > d.n) return eval_single(m, s, d.phi);
    bool universal = d.round_is_universal(i);
    int k = d.k[i - 1];
    std::vector<std::size_t> pick(k, 0);
    for (;;) {
        for (int j = 0; j < k; ++j)
            for (int l = 0; l < d.m; ++l) s[grid_var(i, j + 1, l + 1)] = rel_tuples[pick[j]][l];
        bool v = direct_round(m, d, rel_tuples, i + 1, s);
        if (universal && !v) return false;
        if (!universal && v) return true;
        int j = k;
        while (j > 0 && ++pick[j - 1] == rel_tuples.size()) pick[--j] = 0;
        if (j == 0) return universal;
    }
}

}  // namespace

bool eval_direct(const Model& m, const Team& x, const GenAtomDef& d, const VarList& args) {
    if (static_cast<int>(args.size()) != d.m)
        throw LogicError("atom " + d.name + " takes " + std::to_string(d.m) + " arguments, got " +
                         std::to_string(args.size()));
    if (x.empty()) return true;
    auto r = rel(x, args);
    std::vector<Tuple> tuples(r.begin(), r.end());
    Assignment s;
    return direct_round(m, d, tuples, 1, s);
}

GenAtomDef complement(const GenAtomDef& d) {
    GenAtomDef c = d;
    c.name = d.name.rfind("not_", 0) == 0 ? d.name.substr(4) : "not_" + d.name;
    c.polarity = d.polarity == Polarity::Pi ? Polarity::Sigma : Polarity::Pi;
    c.phi = fo_negate(d.phi);
    return c;
}

Formula build_inc(const std::vector<VarList>& group, const VarList& x) {
    std::vector<Formula> parts;
    for (const auto& w : group) {
        if (w.size() != x.size()) throw LogicError("grid tuple length differs from the argument list");
        parts.push_back(inc(w, x));
    }
    return conj_all(parts);
}

Formula build_pro(const VarList& prefix, const VarList& x, const std::vector<VarList>& group) {
    std::vector<Formula> covers, mutual;
    VarList flat;
    for (std::size_t j = 0; j < group.size(); ++j) {
        if (group[j].size() != x.size()) throw LogicError("grid tuple length differs from the argument list");
        covers.push_back(inc(x, group[j]));
        flat.insert(flat.end(), group[j].begin(), group[j].end());
        VarList others;
        for (std::size_t o = 0; o < group.size(); ++o)
            if (o != j) others.insert(others.end(), group[o].begin(), group[o].end());
        if (!others.empty()) mutual.push_back(ind(others, {}, group[j]));
    }
    Formula last = prefix.empty() ? top() : ind(prefix, {}, flat);
    Formula middle = mutual.empty() ? top() : conj_all(mutual);
    return conj(conj(conj_all(covers), middle), last);
}

Formula sigma_pi_translate(const GenAtomDef& d, const VarList& args) {
    validate(d);
    if (static_cast<int>(args.size()) != d.m)
        throw LogicError("atom " + d.name + " takes " + std::to_string(d.m) + " arguments, got " +
                         std::to_string(args.size()));
    for (const auto& a : args)
        if (is_grid_var(a)) throw LogicError("argument " + a + " clashes with the reserved grid");
    Formula inner = d.phi;
    for (int g = d.n; g >= 1; --g) {
        auto group = grid_group(d, g);
        VarList prefix, flat;
        for (int h = 1; h < g; ++h)
            for (const auto& t : grid_group(d, h)) prefix.insert(prefix.end(), t.begin(), t.end());
        for (const auto& t : group) flat.insert(flat.end(), t.begin(), t.end());
        Formula constraint = d.round_is_universal(g) ? build_pro(prefix, args, group) : build_inc(group, args);
        inner = exists_block(flat, conj(constraint, inner));
    }
    return inner;
}

namespace {

void check_extension(const Team& x, const VarList& args, const std::vector<VarList>& ws) {
    if (x.empty()) throw LogicError("team construction needs a nonempty team");
    for (const auto& a : args)
        if (!x.has(a)) throw LogicError("argument " + a + " is not in the team domain");
    for (const auto& w : ws) {
        if (w.size() != args.size()) throw LogicError("w-vector length differs from the argument list");
        for (const auto& v : w)
            if (x.has(v)) throw LogicError("w-variable " + v + " is already in the team domain");
    }
}

}  // namespace

Team simulating_team(const Model&, const Team& x, const std::vector<std::vector<std::size_t>>& gammas,
                     const VarList& args, const std::vector<VarList>& ws) {
    check_extension(x, args, ws);
    if (gammas.size() != ws.size()) throw LogicError("one choice function per w-vector is required");
    for (const auto& g : gammas) {
        if (g.size() != x.size()) throw LogicError("choice function must be defined on every row");
        for (auto r : g)
            if (r >= x.size()) throw LogicError("choice function picks a row outside the team");
    }
    auto cols = native::columns(x, args);
    VarList vars = x.vars();
    for (const auto& w : ws) vars.insert(vars.end(), w.begin(), w.end());
    std::vector<Row> rows;
    for (std::size_t r = 0; r < x.size(); ++r) {
        Row row = x.rows()[r];
        for (const auto& g : gammas) {
            Tuple t = native::project(x.rows()[g[r]], cols);
            row.insert(row.end(), t.begin(), t.end());
        }
        rows.push_back(std::move(row));
    }
    return Team(vars, std::move(rows));
}

Team duplicating_team(const Model&, const Team& x, const VarList& args, const std::vector<VarList>& ws) {
    check_extension(x, args, ws);
    auto r = rel(x, args);
    std::vector<Tuple> tuples(r.begin(), r.end());
    VarList vars = x.vars();
    std::vector<Row> rows = x.rows();
    for (const auto& w : ws) {
        vars.insert(vars.end(), w.begin(), w.end());
        std::vector<Row> next;
        for (const auto& row : rows)
            for (const auto& t : tuples) {
                Row n = row;
                n.insert(n.end(), t.begin(), t.end());
                next.push_back(std::move(n));
            }
        rows = std::move(next);
    }
    return Team(vars, std::move(rows));
}

std::vector<GenAtomDef> parse_genatoms(const std::string& text) {
    static const std::regex header(
        R"(^genatom\s+([A-Za-z_][A-Za-z0-9_]*)\s+(Sigma|Pi)\s+n=(\d+)\s+k=\[([0-9,\s]*)\]\s+m=(\d+)\s*$)");
    std::vector<GenAtomDef> out;
    bool want_phi = false;
    int lineno = 0;
    for (const auto& raw : split_lines(text)) {
        ++lineno;
        std::string line = trim(strip_comment(raw));
        if (line.empty()) continue;
        auto err = [&](const std::string& msg) { return LogicError("genatom line " + std::to_string(lineno) + ": " + msg); };
        std::smatch mt;
        if (std::regex_match(line, mt, header)) {
            if (want_phi) throw err("previous definition has no phi line");
            GenAtomDef d;
            d.name = mt[1];
            d.polarity = mt[2] == "Sigma" ? Polarity::Sigma : Polarity::Pi;
            d.n = parse_int(mt[3], "n");
            d.k.clear();
            std::string ks = mt[4];
            for (char& c : ks)
                if (c == ',') c = ' ';
            for (const auto& w : split_words(ks)) d.k.push_back(parse_int(w, "k entry"));
            d.m = parse_int(mt[5], "m");
            out.push_back(std::move(d));
            want_phi = true;
        } else if (line.rfind("phi:", 0) == 0) {
            if (!want_phi) throw err("phi line without a genatom header");
            ParseOptions opts;
            opts.allow_reserved = true;
            try {
                out.back().phi = expand_sugar(parse_formula(line.substr(4), opts));
                validate(out.back());
            } catch (const LogicError& e) {
                throw err(e.what());
            }
            want_phi = false;
        } else {
            throw err("expected a genatom header or a phi line");
        }
    }
    if (want_phi) throw LogicError("last genatom definition has no phi line");
    return out;
}

std::string print_genatom(const GenAtomDef& d) {
    std::ostringstream out;
    out << "genatom " << d.name << ' ' << (d.polarity == Polarity::Sigma ? "Sigma" : "Pi") << " n=" << d.n << " k=[";
    for (std::size_t i = 0; i < d.k.size(); ++i) out << (i ? "," : "") << d.k[i];
    out << "] m=" << d.m << "\nphi: " << print_formula(d.phi) << '\n';
    return out.str();
}

}  // namespace tl
