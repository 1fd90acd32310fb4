#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "teamlogic/formula.hpp"
#include "teamlogic/genatom.hpp"
#include "teamlogic/model.hpp"
#include "teamlogic/semantics.hpp"
#include "teamlogic/team.hpp"

namespace tl {

enum class EntailmentStatus { ValidUpToBound, Counterexample };

struct EntailmentVerdict {
    EntailmentStatus status = EntailmentStatus::ValidUpToBound;
    std::optional<std::pair<Model, Team>> witness;
    std::size_t models = 0;
    std::size_t teams = 0;
    // teams skipped because evaluation exceeded its budget
    std::size_t skipped = 0;
    bool sampled = false;
};

struct EntailOptions {
    int maxDomain = 2;
    // used whenever |M|^|V| exceeds teamCap; a fixed seed is used when absent
    std::optional<std::uint64_t> sampleSeed;
    std::size_t samples = 2000;
    std::size_t teamCap = kDefaultTeamCap;
    const AtomRegistry* atoms = nullptr;
    EvalBudget budget;
};

EntailmentVerdict entails_bounded(const std::vector<Formula>& gamma, const Formula& phi, const EntailOptions& opts = {});

struct RuleInstance {
    std::string rule;
    std::vector<Formula> premises;
    Formula conclusion;
    // hypothetical subproof of the existential and weak-negation eliminations
    Formula assumption;
    Formula minor;
};

EntailmentVerdict rule_soundness_check(const RuleInstance& r, const EntailOptions& opts = {});

std::string status_name(EntailmentStatus s);

}  // namespace tl
