#include "teamlogic/model.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "text.hpp"

namespace tl {

int Model::element(const std::string& name) const {
    auto it = std::lower_bound(domain.begin(), domain.end(), name);
    if (it == domain.end() || *it != name) throw LogicError("element '" + name + "' is not in the domain");
    return static_cast<int>(it - domain.begin());
}

Signature Model::signature() const {
    Signature s;
    for (const auto& [k, r] : relations) s.relations[k] = r.arity;
    for (const auto& [k, v] : constants) s.constants.insert(k);
    return s;
}

Model make_model(std::vector<std::string> domain) {
    std::sort(domain.begin(), domain.end());
    if (domain.empty()) throw LogicError("a model needs a nonempty domain");
    if (std::adjacent_find(domain.begin(), domain.end()) != domain.end()) throw LogicError("duplicate domain element");
    Model m;
    m.domain = std::move(domain);
    return m;
}

void require_min_size(const Model& m, int min_size) {
    if (m.size() < min_size)
        throw LogicError("model has " + std::to_string(m.size()) + " elements, at least " + std::to_string(min_size) +
                         " required");
}

Model parse_model(const std::string& text) {
    Model m;
    bool have_domain = false;
    std::string current_rel;
    int lineno = 0;
    for (const auto& raw : split_lines(text)) {
        ++lineno;
        std::string line = strip_comment(raw);
        auto words = split_words(line);
        if (words.empty()) continue;
        auto err = [&](const std::string& msg) { return LogicError("model line " + std::to_string(lineno) + ": " + msg); };
        bool indented = !line.empty() && std::isspace(static_cast<unsigned char>(line[0]));
        if (indented) {
            if (current_rel.empty()) throw err("tuple outside a relation block");
            Relation& r = m.relations[current_rel];
            if (static_cast<int>(words.size()) != r.arity)
                throw err("tuple of length " + std::to_string(words.size()) + " under arity " + std::to_string(r.arity));
            Tuple t;
            for (const auto& w : words) {
                try {
                    t.push_back(m.element(w));
                } catch (const LogicError& e) {
                    throw err(e.what());
                }
            }
            r.tuples.insert(t);
            continue;
        }
        current_rel.clear();
        if (words[0] == "domain") {
            if (have_domain) throw err("second domain line");
            try {
                m = make_model({words.begin() + 1, words.end()});
            } catch (const LogicError& e) {
                throw err(e.what());
            }
            have_domain = true;
        } else if (!have_domain) {
            throw err("the domain line must come first");
        } else if (words[0] == "rel") {
            if (words.size() != 3) throw err("expected 'rel NAME ARITY'");
            if (m.relations.count(words[1]) || m.constants.count(words[1])) throw err("symbol declared twice");
            int arity = parse_int(words[2], "arity");
            if (arity < 0) throw err("negative arity");
            m.relations[words[1]] = Relation{arity, {}};
            current_rel = words[1];
        } else if (words[0] == "const") {
            if (words.size() != 3) throw err("expected 'const NAME ELEMENT'");
            if (m.relations.count(words[1]) || m.constants.count(words[1])) throw err("symbol declared twice");
            try {
                m.constants[words[1]] = m.element(words[2]);
            } catch (const LogicError& e) {
                throw err(e.what());
            }
        } else if (words[0] == "true" && words.size() == 2) {
            auto it = m.relations.find(words[1]);
            if (it == m.relations.end() || it->second.arity != 0) throw err("'true' needs a declared 0-ary relation");
            it->second.tuples.insert(Tuple{});
        } else {
            throw err("unknown directive '" + words[0] + "'");
        }
    }
    if (!have_domain) throw LogicError("model has no domain line");
    return m;
}

std::string print_model(const Model& m) {
    std::ostringstream out;
    out << "domain";
    for (const auto& e : m.domain) out << ' ' << e;
    out << '\n';
    for (const auto& [name, r] : m.relations) {
        out << "rel " << name << ' ' << r.arity << '\n';
        for (const auto& t : r.tuples) {
            if (t.empty()) {
                out << "true " << name << '\n';
                continue;
            }
            out << ' ';
            for (int v : t) out << ' ' << m.domain[v];
            out << '\n';
        }
    }
    for (const auto& [name, v] : m.constants) out << "const " << name << ' ' << m.domain[v] << '\n';
    return out.str();
}

namespace {

std::vector<Tuple> all_tuples(int d, int arity) {
    std::vector<Tuple> out;
    Tuple t(arity, 0);
    while (true) {
        out.push_back(t);
        int i = arity - 1;
        while (i >= 0 && ++t[i] == d) t[i--] = 0;
        if (i < 0) break;
    }
    return out;
}

}  // namespace

void enumerate_models(const Signature& sig, int max_size, const std::function<bool(const Model&)>& visit,
                      int max_tuple_slots) {
    if (max_size < 1) throw LogicError("max model size must be at least 1");
    for (int d = 1; d <= max_size; ++d) {
        std::vector<std::string> names;
        for (int i = 1; i <= d; ++i) names.push_back("e" + std::to_string(i));
        Model base = make_model(names);
        std::vector<std::pair<std::string, std::vector<Tuple>>> rels;
        for (const auto& [name, arity] : sig.relations) {
            auto ts = all_tuples(d, arity);
            if (static_cast<int>(ts.size()) > max_tuple_slots)
                throw LogicError("relation " + name + " has too many tuple slots to enumerate");
            rels.emplace_back(name, std::move(ts));
            base.relations[name] = Relation{arity, {}};
        }
        std::vector<std::string> consts(sig.constants.begin(), sig.constants.end());
        std::vector<unsigned long long> masks(rels.size(), 0);
        std::vector<int> cvals(consts.size(), 0);
        while (true) {
            Model m = base;
            for (size_t i = 0; i < rels.size(); ++i) {
                auto& r = m.relations[rels[i].first];
                for (size_t b = 0; b < rels[i].second.size(); ++b)
                    if (masks[i] >> b & 1ULL) r.tuples.insert(rels[i].second[b]);
            }
            for (size_t i = 0; i < consts.size(); ++i) m.constants[consts[i]] = cvals[i];
            if (!visit(m)) return;
            // odometer: constants vary fastest, then relations from the last one
            int i = static_cast<int>(consts.size()) - 1;
            while (i >= 0 && ++cvals[i] == d) cvals[i--] = 0;
            if (i >= 0) continue;
            int j = static_cast<int>(rels.size()) - 1;
            while (j >= 0 && ++masks[j] == (1ULL << rels[j].second.size())) masks[j--] = 0;
            if (j < 0) break;
        }
    }
}

std::size_t count_models(const Signature& sig, int max_size) {
    std::size_t n = 0;
    enumerate_models(sig, max_size, [&](const Model&) {
        ++n;
        return true;
    });
    return n;
}

Model expand_with_relation(const Model& m, const std::string& sym, int arity, const std::set<Tuple>& interp) {
    if (m.relations.count(sym) || m.constants.count(sym)) throw LogicError("symbol '" + sym + "' already interpreted");
    for (const auto& t : interp) {
        if (static_cast<int>(t.size()) != arity) throw LogicError("tuple length differs from the declared arity");
        for (int v : t)
            if (v < 0 || v >= m.size()) throw LogicError("tuple element outside the domain");
    }
    Model out = m;
    out.relations[sym] = Relation{arity, interp};
    return out;
}

}  // namespace tl
