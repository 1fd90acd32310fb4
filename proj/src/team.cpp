#include "teamlogic/team.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "text.hpp"

namespace tl {

Team::Team(VarList vars, std::vector<Row> rows) {
    std::vector<size_t> perm(vars.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::sort(perm.begin(), perm.end(), [&](size_t i, size_t j) { return vars[i] < vars[j]; });
    for (size_t i = 0; i < perm.size(); ++i) {
        vars_.push_back(vars[perm[i]]);
        if (i && vars_[i] == vars_[i - 1]) throw LogicError("duplicate team variable " + vars_[i]);
    }
    rows_.reserve(rows.size());
    for (auto& r : rows) {
        if (r.size() != vars.size()) throw LogicError("row length differs from the variable domain");
        Row out(r.size());
        for (size_t i = 0; i < perm.size(); ++i) out[i] = r[perm[i]];
        rows_.push_back(std::move(out));
    }
    std::sort(rows_.begin(), rows_.end());
    rows_.erase(std::unique(rows_.begin(), rows_.end()), rows_.end());
}

int Team::col(const std::string& v) const {
    auto it = std::lower_bound(vars_.begin(), vars_.end(), v);
    return it != vars_.end() && *it == v ? static_cast<int>(it - vars_.begin()) : -1;
}

Assignment Team::assignment(std::size_t i) const {
    Assignment s;
    for (size_t c = 0; c < vars_.size(); ++c) s[vars_[c]] = rows_[i][c];
    return s;
}

Team Team::subteam(std::uint64_t mask) const {
    Team t;
    t.vars_ = vars_;
    for (size_t i = 0; i < rows_.size(); ++i)
        if (mask >> i & 1ULL) t.rows_.push_back(rows_[i]);
    return t;
}

Team Team::with_rows(std::vector<Row> rows) const { return Team(vars_, std::move(rows)); }

Team duplicate_value(const Team& x, const std::string& v, int value) {
    int c = x.col(v);
    VarList vars = x.vars();
    if (c < 0) vars.push_back(v);
    std::vector<Row> rows;
    for (const auto& r : x.rows()) {
        Row n = r;
        if (c < 0) n.push_back(value);
        else n[c] = value;
        rows.push_back(std::move(n));
    }
    return Team(vars, std::move(rows));
}

Team duplicate(const Team& x, const Model& m, const std::string& v) {
    SupplementFunction f;
    std::set<int> all;
    for (int a = 0; a < m.size(); ++a) all.insert(a);
    for (const auto& r : x.rows()) f[r] = all;
    return supplement(x, f, v);
}

Team supplement(const Team& x, const SupplementFunction& f, const std::string& v) {
    int c = x.col(v);
    VarList vars = x.vars();
    if (c < 0) vars.push_back(v);
    std::vector<Row> rows;
    for (const auto& r : x.rows()) {
        auto it = f.find(r);
        if (it == f.end()) throw LogicError("supplement function undefined on a row of the team");
        if (it->second.empty()) throw LogicError("supplement function gives an empty value set");
        for (int a : it->second) {
            Row n = r;
            if (c < 0) n.push_back(a);
            else n[c] = a;
            rows.push_back(std::move(n));
        }
    }
    return Team(vars, std::move(rows));
}

std::set<Tuple> rel(const Team& x, const VarList& vs) {
    std::vector<int> cols;
    for (const auto& v : vs) {
        int c = x.col(v);
        if (c < 0) throw LogicError("variable " + v + " is not in the team domain");
        cols.push_back(c);
    }
    std::set<Tuple> out;
    for (const auto& r : x.rows()) {
        Tuple t;
        for (int c : cols) t.push_back(r[c]);
        out.insert(std::move(t));
    }
    return out;
}

Team team_of_relation(const std::set<Tuple>& r, const VarList& vs) {
    std::vector<Row> rows;
    for (const auto& t : r) {
        if (t.size() != vs.size()) throw LogicError("tuple length differs from the variable list");
        rows.push_back(t);
    }
    return Team(vs, std::move(rows));
}

Team restrict(const Team& x, const std::set<std::string>& vs) {
    VarList keep(vs.begin(), vs.end());
    std::vector<Row> rows;
    for (const auto& t : rel(x, keep)) rows.push_back(t);
    return Team(keep, std::move(rows));
}

std::vector<Row> all_assignments(const Model& m, std::size_t nvars) {
    std::vector<Row> out;
    Row r(nvars, 0);
    while (true) {
        out.push_back(r);
        int i = static_cast<int>(nvars) - 1;
        while (i >= 0 && ++r[i] == m.size()) r[i--] = 0;
        if (i < 0) break;
    }
    return out;
}

void all_teams(const Model& m, const VarList& vs, const std::function<bool(const Team&)>& visit, std::size_t cap) {
    double slots = std::pow(static_cast<double>(m.size()), static_cast<double>(vs.size()));
    if (slots > static_cast<double>(cap) || slots > 62)
        throw TeamCapExceeded("|M|^|V| = " + std::to_string(static_cast<long long>(slots)) +
                              " assignments exceeds the exhaustive cap of " + std::to_string(cap) +
                              "; use sample_teams instead");
    Team sorted = Team::empty_over(vs);
    auto rows = all_assignments(m, vs.size());
    std::uint64_t n = rows.size();
    for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
        std::vector<Row> pick;
        for (std::uint64_t i = 0; i < n; ++i)
            if (mask >> i & 1ULL) pick.push_back(rows[i]);
        if (!visit(sorted.with_rows(std::move(pick)))) return;
    }
}

void sample_teams(const Model& m, const VarList& vs, std::size_t count, std::uint64_t seed,
                  const std::function<bool(const Team&)>& visit) {
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution coin(0.5);
    Team sorted = Team::empty_over(vs);
    auto rows = all_assignments(m, vs.size());
    for (std::size_t k = 0; k < count; ++k) {
        std::vector<Row> pick;
        for (const auto& r : rows)
            if (coin(rng)) pick.push_back(r);
        if (!visit(sorted.with_rows(std::move(pick)))) return;
    }
}

Team parse_team(const std::string& text, const Model& m) {
    VarList vars;
    bool have_vars = false;
    std::vector<Row> rows;
    int lineno = 0;
    for (const auto& raw : split_lines(text)) {
        ++lineno;
        auto words = split_words(strip_comment(raw));
        if (words.empty()) continue;
        auto err = [&](const std::string& msg) { return LogicError("team line " + std::to_string(lineno) + ": " + msg); };
        if (words[0] == "vars") {
            if (have_vars) throw err("second vars line");
            vars.assign(words.begin() + 1, words.end());
            have_vars = true;
        } else if (words[0] == "row") {
            if (!have_vars) throw err("row before the vars line");
            if (words.size() - 1 != vars.size()) throw err("row length differs from the vars line");
            Row r;
            for (size_t i = 1; i < words.size(); ++i) {
                try {
                    r.push_back(m.element(words[i]));
                } catch (const LogicError& e) {
                    throw err(e.what());
                }
            }
            rows.push_back(std::move(r));
        } else {
            throw err("unknown directive '" + words[0] + "'");
        }
    }
    if (!have_vars) throw LogicError("team has no vars line");
    return Team(vars, std::move(rows));
}

std::string print_team(const Team& x, const Model& m) {
    std::ostringstream out;
    out << "vars";
    for (const auto& v : x.vars()) out << ' ' << v;
    out << '\n';
    for (const auto& r : x.rows()) {
        out << "row";
        for (int v : r) out << ' ' << m.domain[v];
        out << '\n';
    }
    return out.str();
}

}  // namespace tl
