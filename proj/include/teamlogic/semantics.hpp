#pragma once

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "teamlogic/formula.hpp"
#include "teamlogic/model.hpp"
#include "teamlogic/team.hpp"

namespace tl {

class AtomRegistry;

struct EvalBudget {
    // split disjunction and per-row supplement search refuse teams larger than this
    std::size_t maxSplitRows = 12;
    // candidate rows an existential block may range over
    std::size_t maxSupplementRows = 1u << 16;
};

struct BudgetExceeded : LogicError {
    using LogicError::LogicError;
};

class Evaluator {
public:
    explicit Evaluator(const Model& m, const AtomRegistry* atoms = nullptr, EvalBudget budget = {});

    bool eval(const Team& x, const Formula& f);

    // When false, first-order subformulas go through the team clauses instead of row-wise Tarskian truth.
    void set_fo_shortcut(bool on) { fo_shortcut_ = on; }
    // When false, existential quantifiers always use the per-row supplement search.
    void set_block_solver(bool on) { block_solver_ = on; }

    const Model& model() const { return m_; }
    const AtomRegistry* atoms() const { return atoms_; }
    const EvalBudget& budget() const { return budget_; }

private:
    const Model& m_;
    const AtomRegistry* atoms_;
    EvalBudget budget_;
    bool fo_shortcut_ = true;
    bool block_solver_ = true;
    std::map<std::pair<const Node*, Team>, bool> memo_;
    std::map<const Node*, Formula> expanded_;
    std::vector<Formula> keep_;

    bool eval_node(const Team& x, const Formula& f);
    bool eval_split(const Team& x, const Formula& f);
    bool eval_exists(const Team& x, const Formula& f);
    bool eval_exists_rowwise(const Team& x, const Formula& f);
};

bool eval(const Model& m, const Team& x, const Formula& f, const AtomRegistry* atoms = nullptr,
          EvalBudget budget = {});

// Tarskian truth of a first-order formula (sugar allowed) under one assignment.
bool eval_single(const Model& m, const Assignment& s, const Formula& f);

bool downward_closed_syntax(const Formula& f);

}  // namespace tl
