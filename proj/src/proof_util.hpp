#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "teamlogic/formula.hpp"

namespace tl::detail {

// equality up to renaming of bound variables
bool alpha_equal(const Formula& f, const Formula& g);

// leaves of a nested conjunction
void conjuncts(const Formula& f, std::vector<Formula>& out);

// sigma over holes (free occurrences only) with substitute(p, sigma) == t
std::optional<std::map<std::string, Term>> match_instance(const Formula& p, const Formula& t,
                                                          const std::set<std::string>& holes);

// leading existential variables and the body below them
std::pair<VarList, Formula> strip_exists(const Formula& f, std::size_t max = SIZE_MAX);

}  // namespace tl::detail
