#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "teamlogic/model.hpp"

namespace tl {

using Row = std::vector<int>;
using Assignment = std::map<std::string, int>;

// Columns are kept sorted by variable name and rows sorted and unique, so equal teams compare equal.
class Team {
public:
    Team() = default;
    Team(VarList vars, std::vector<Row> rows);

    static Team empty_over(VarList vars) { return Team(std::move(vars), {}); }
    static Team unit() { return Team({}, {Row{}}); }

    const VarList& vars() const { return vars_; }
    const std::vector<Row>& rows() const { return rows_; }
    std::size_t size() const { return rows_.size(); }
    bool empty() const { return rows_.empty(); }
    int col(const std::string& v) const;  // -1 when absent
    bool has(const std::string& v) const { return col(v) >= 0; }
    Assignment assignment(std::size_t i) const;
    Team subteam(std::uint64_t mask) const;
    Team with_rows(std::vector<Row> rows) const;

    friend bool operator==(const Team&, const Team&) = default;
    friend auto operator<=>(const Team&, const Team&) = default;

private:
    VarList vars_;
    std::vector<Row> rows_;
};

using SupplementFunction = std::map<Row, std::set<int>>;

Team duplicate(const Team& x, const Model& m, const std::string& v);
Team duplicate_value(const Team& x, const std::string& v, int value);  // X(a/x)
Team supplement(const Team& x, const SupplementFunction& f, const std::string& v);
std::set<Tuple> rel(const Team& x, const VarList& vs);
Team team_of_relation(const std::set<Tuple>& r, const VarList& vs);
Team restrict(const Team& x, const std::set<std::string>& vs);

struct TeamCapExceeded : LogicError {
    using LogicError::LogicError;
};

constexpr std::size_t kDefaultTeamCap = 16;

std::vector<Row> all_assignments(const Model& m, std::size_t nvars);
// Every team over vs in a fixed order; refuses when |M|^|vs| exceeds cap. Stops when visit returns false.
void all_teams(const Model& m, const VarList& vs, const std::function<bool(const Team&)>& visit,
               std::size_t cap = kDefaultTeamCap);
// Seeded teams, each assignment included independently with probability 1/2.
void sample_teams(const Model& m, const VarList& vs, std::size_t count, std::uint64_t seed,
                  const std::function<bool(const Team&)>& visit);

Team parse_team(const std::string& text, const Model& m);
std::string print_team(const Team& x, const Model& m);

}  // namespace tl
