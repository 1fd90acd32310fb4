#pragma once

#include <string>
#include <vector>

#include "teamlogic/entailment.hpp"
#include "teamlogic/formula.hpp"
#include "teamlogic/genatom.hpp"

namespace tl {

struct Cite {
    int from = 0;
    int to = -1;  // last line of a cited subproof, -1 for a single line
    bool block() const { return to >= 0; }
};

struct ProofStep {
    int number = 0;
    Formula formula;
    std::string rule;  // "assume" for the opening line of a subproof
    std::vector<Cite> cites;
    int depth = 0;
    int source_line = 0;
    // open subproofs (assumption numbers, outermost first) around this step, including its own when it is an assumption
    std::vector<int> scope;
    int closed_by = -1;  // for assumptions: the last step number inside the subproof
};

struct ProofScript {
    std::vector<ProofStep> steps;
};

struct ProofScriptError : LogicError {
    int source_line;
    ProofScriptError(const std::string& msg, int line);
};

// Grammar in docs/proof-scripts.md. Formulas keep implication and sequence equations as sugar.
ProofScript parse_proof_script(const std::string& text, const AtomRegistry* reg = nullptr);
std::string print_proof_script(const ProofScript& s);

struct ProofVerdict {
    bool accepted = false;
    int step = 0;  // offending step number when rejected
    std::string reason;
    std::vector<Formula> hypotheses;
    Formula conclusion;
};

ProofVerdict check_proof(const ProofScript& s, const AtomRegistry* reg = nullptr);

const std::vector<std::string>& kernel_rules();

// premises entail conclusion, all quantifier-free first-order (sugar allowed)
bool bounded_fo_step(const std::vector<Formula>& premises, const Formula& conclusion);

// the assumption a weak-negation elimination subproof for goal must open with
Formula wneg_elim_target(const Formula& goal, const AtomRegistry* reg = nullptr);

struct ClosedFormula {
    Formula closed;
    // scripts deriving the closure from chi and, inside an elimination subproof, back
    std::string intro_schema;
    std::string elim_schema;
};
ClosedFormula close_formula(const std::vector<Formula>& delta, const Formula& chi);

// Each inference of an accepted script as a local sequent; block rules carry the hypotheses and open assumptions
// in scope as premises.
std::vector<RuleInstance> rule_instances(const ProofScript& s, const AtomRegistry* reg = nullptr);

// One variant per single-line citation, replacing it by the nearest other in-scope line with a different formula.
std::vector<ProofScript> citation_mutants(const ProofScript& s);

}  // namespace tl
