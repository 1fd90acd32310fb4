#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "teamlogic/formula.hpp"
#include "teamlogic/model.hpp"
#include "teamlogic/team.hpp"

namespace tl {

enum class Fragment {
    FirstOrder,    // literals, conjunction, split disjunction, quantifiers
    Dependence,    // plus dependence atoms and the unique quantifiers
    Independence,  // plus independence and inclusion atoms and the Boolean disjunction
    Full,          // plus weak negation
};

struct RandomFormulaOptions {
    Fragment fragment = Fragment::FirstOrder;
    VarList free = {"x", "y"};
    VarList bound = {"x", "y", "z"};
    int depth = 3;
};

Formula random_formula(std::mt19937_64& rng, const RandomFormulaOptions& opts);

// {a, b} with the unary relation P = {a}
Model grid_model();
std::vector<Team> grid_teams(const Model& m, const VarList& vs, std::size_t max_rows);
Team random_team(std::mt19937_64& rng, const Model& m, const VarList& vs, std::size_t rows);

struct SuiteOptions {
    std::uint64_t seed = 20240601;
    // number of random instances; 0 keeps the suite default
    std::size_t count = 0;
};

struct SuiteResult {
    std::string name;
    std::size_t checks = 0;
    std::size_t failures = 0;
    std::vector<std::string> notes;  // first failures
    double seconds = 0;
    bool passed() const { return checks > 0 && failures == 0; }
};

// flatness, downward, locality, empty-team, lem, thm52, fact52, lem54, prop44, thm24, footnotes
const std::vector<std::string>& suite_names();
SuiteResult run_suite(const std::string& name, const SuiteOptions& opts = {});

}  // namespace tl
