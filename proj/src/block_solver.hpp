#pragma once

#include <vector>

#include "teamlogic/formula.hpp"
#include "teamlogic/model.hpp"
#include "teamlogic/semantics.hpp"
#include "teamlogic/team.hpp"

namespace tl::detail {

// Decides whether some Y over dom(X) + w, with Y restricted to dom(X) equal to X, satisfies every first-order
// conjunct row-wise and every Dep/Ind/Inc/Top/Bot conjunct in atoms. The w variables must be disjoint from dom(X).
bool solve_block(const Model& m, const Team& x, const VarList& w, const std::vector<Formula>& fo,
                 const std::vector<Formula>& atoms, const EvalBudget& budget);

}  // namespace tl::detail
