#pragma once

#include <map>
#include <set>
#include <vector>

#include "teamlogic/team.hpp"

namespace tl::native {

inline Tuple project(const Row& r, const std::vector<int>& cols) {
    Tuple t;
    t.reserve(cols.size());
    for (int c : cols) t.push_back(r[c]);
    return t;
}

inline std::vector<int> columns(const Team& x, const VarList& vs) {
    std::vector<int> out;
    for (const auto& v : vs) {
        int c = x.col(v);
        if (c < 0) throw LogicError("variable " + v + " is not in the team domain");
        out.push_back(c);
    }
    return out;
}

inline bool dep_holds(const std::vector<Row>& rows, const std::vector<int>& a, const std::vector<int>& b) {
    std::map<Tuple, Tuple> seen;
    for (const auto& r : rows) {
        auto [it, fresh] = seen.emplace(project(r, a), project(r, b));
        if (!fresh && it->second != project(r, b)) return false;
    }
    return true;
}

inline bool inc_holds(const std::vector<Row>& rows, const std::vector<int>& a, const std::vector<int>& b) {
    std::set<Tuple> targets;
    for (const auto& r : rows) targets.insert(project(r, b));
    for (const auto& r : rows)
        if (!targets.count(project(r, a))) return false;
    return true;
}

// a independent of c given z
inline bool ind_holds(const std::vector<Row>& rows, const std::vector<int>& a, const std::vector<int>& z,
                      const std::vector<int>& c) {
    std::map<Tuple, std::set<Tuple>> as, cs;
    std::set<std::vector<Tuple>> present;
    for (const auto& r : rows) {
        Tuple kz = project(r, z), ka = project(r, a), kc = project(r, c);
        as[kz].insert(ka);
        cs[kz].insert(kc);
        present.insert({kz, ka, kc});
    }
    for (const auto& [kz, avals] : as)
        for (const auto& ka : avals)
            for (const auto& kc : cs[kz])
                if (!present.count({kz, ka, kc})) return false;
    return true;
}

}  // namespace tl::native
