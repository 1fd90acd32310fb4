#include "teamlogic/proofkernel.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <regex>
#include <set>
#include <sstream>

#include "teamlogic/negation.hpp"
#include "teamlogic/parser.hpp"

namespace tl {

ProofScriptError::ProofScriptError(const std::string& msg, int line)
    : LogicError("line " + std::to_string(line) + ": " + msg), source_line(line) {}

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::size_t last_top_level_semicolon(const std::string& s) {
    int depth = 0;
    std::size_t pos = std::string::npos;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '(') ++depth;
        else if (s[i] == ')') --depth;
        else if (s[i] == ';' && depth == 0) pos = i;
    }
    return pos;
}

Cite parse_cite(const std::string& tok, int line) {
    static const std::regex single(R"(\d+)"), range(R"((\d+)-(\d+))");
    std::smatch m;
    if (std::regex_match(tok, single)) return {std::stoi(tok), -1};
    if (std::regex_match(tok, m, range)) return {std::stoi(m[1]), std::stoi(m[2])};
    throw ProofScriptError("bad citation '" + tok + "'", line);
}

}  // namespace

ProofScript parse_proof_script(const std::string& text, const AtomRegistry* reg) {
    ParseOptions po;
    po.keep_sugar = true;
    po.allow_reserved = true;
    std::map<std::string, int> arities;
    if (reg) {
        arities = reg->arities();
        po.atoms = &arities;
    }
    static const std::regex assume_re(R"(assume\s+(\d+)\.\s*(.+))"), qed_re(R"(qed\s+(\d+))"),
        step_re(R"((\d+)\.\s*(.+))");

    ProofScript out;
    std::vector<int> open;  // assumption numbers
    std::map<int, std::size_t> index;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    auto parse = [&](const std::string& src) {
        try {
            return parse_formula(src, po);
        } catch (const LogicError& e) {
            throw ProofScriptError(e.what(), line);
        }
    };
    auto add = [&](ProofStep st) {
        if (!out.steps.empty() && st.number <= out.steps.back().number)
            throw ProofScriptError("step numbers must increase", line);
        index[st.number] = out.steps.size();
        out.steps.push_back(std::move(st));
    };
    while (std::getline(in, raw)) {
        ++line;
        std::string s = raw.substr(0, raw.find('#'));
        s = trim(s);
        if (s.empty()) continue;
        std::smatch m;
        if (std::regex_match(s, m, assume_re)) {
            ProofStep st;
            st.number = std::stoi(m[1]);
            st.formula = parse(m[2]);
            st.rule = "assume";
            st.source_line = line;
            open.push_back(st.number);
            st.scope = open;
            st.depth = static_cast<int>(open.size());
            add(std::move(st));
        } else if (std::regex_match(s, m, qed_re)) {
            int k = std::stoi(m[1]);
            if (open.empty() || open.back() != k) throw ProofScriptError("qed " + std::to_string(k) + " does not close the innermost subproof", line);
            out.steps[index[k]].closed_by = out.steps.back().number;
            open.pop_back();
        } else if (std::regex_match(s, m, step_re)) {
            std::string body = m[2];
            auto semi = last_top_level_semicolon(body);
            if (semi == std::string::npos) throw ProofScriptError("missing '; RULE'", line);
            ProofStep st;
            st.number = std::stoi(m[1]);
            st.formula = parse(trim(body.substr(0, semi)));
            std::string just = body.substr(semi + 1);
            std::replace(just.begin(), just.end(), ',', ' ');
            std::istringstream js(just);
            if (!(js >> st.rule)) throw ProofScriptError("missing rule name", line);
            for (std::string tok; js >> tok;) st.cites.push_back(parse_cite(tok, line));
            st.source_line = line;
            st.scope = open;
            st.depth = static_cast<int>(open.size());
            add(std::move(st));
        } else {
            throw ProofScriptError("unrecognised line '" + s + "'", line);
        }
    }
    if (!open.empty()) throw ProofScriptError("subproof " + std::to_string(open.back()) + " is never closed", line);
    if (out.steps.empty()) throw ProofScriptError("empty script", line);
    return out;
}

std::string print_proof_script(const ProofScript& s) {
    std::ostringstream o;
    std::vector<const ProofStep*> open;
    for (const auto& st : s.steps) {
        std::string pad(2 * static_cast<std::size_t>(std::max(0, st.depth - (st.rule == "assume" ? 1 : 0))), ' ');
        if (st.rule == "assume") {
            o << pad << "assume " << st.number << ". " << print_formula(st.formula) << "\n";
            open.push_back(&st);
        } else {
            o << pad << st.number << ". " << print_formula(st.formula) << " ; " << st.rule;
            for (const auto& c : st.cites) {
                o << " " << c.from;
                if (c.block()) o << "-" << c.to;
            }
            o << "\n";
        }
        while (!open.empty() && open.back()->closed_by == st.number) {
            o << std::string(2 * (open.size() - 1), ' ') << "qed " << open.back()->number << "\n";
            open.pop_back();
        }
    }
    return o.str();
}

const std::vector<std::string>& kernel_rules() {
    static const std::vector<std::string> r = {"hyp",    "assume", "existsI", "existsE", "wnegE",  "andI",
                                               "andE",   "orI",    "eqRefl",  "fo",      "incId",  "incPro",
                                               "incTrs", "incCmp", "incExt",  "indE"};
    return r;
}

}  // namespace tl
