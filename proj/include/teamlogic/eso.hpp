#pragma once

#include <string>
#include <utility>
#include <vector>

#include "teamlogic/formula.hpp"
#include "teamlogic/genatom.hpp"
#include "teamlogic/model.hpp"
#include "teamlogic/team.hpp"

namespace tl {

struct ESOFormula {
    std::vector<std::pair<std::string, int>> soVars;
    Formula matrix;
};

// The relation symbol R ranges over the sorted free variables of f; sentences use a 0-ary R.
ESOFormula tau(const Formula& f, const std::string& R = "R", const AtomRegistry* reg = nullptr);

// First-order sentence over a free relation symbol S of arity m, true in (M, rel(X, args)) iff X satisfies the atom.
Formula eso_translate_atom(const GenAtomDef& d, const std::string& S = "S");

struct EsoCapExceeded : LogicError {
    using LogicError::LogicError;
};

constexpr std::size_t kDefaultEsoCellCap = 256;

// Searches interpretations of the second-order variables; |M|^arity above cap is refused.
bool eval_eso(const Model& m, const ESOFormula& psi, std::size_t cap = kDefaultEsoCellCap);

bool check_correspondence(const Model& m, const Team& x, const Formula& f, const AtomRegistry* reg = nullptr);

std::string print_eso(const ESOFormula& psi);

}  // namespace tl
