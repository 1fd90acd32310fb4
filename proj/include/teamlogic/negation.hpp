#pragma once

#include <string>
#include <vector>

#include "teamlogic/formula.hpp"
#include "teamlogic/genatom.hpp"

namespace tl {

struct NegatableReport {
    bool inFragment = false;
    // closure rules applied, or the first offending subformula as the last entry
    std::vector<std::string> reason;
};

struct NotNegatable : LogicError {
    NegatableReport report;
    explicit NotNegatable(NegatableReport r);
};

NegatableReport is_negatable_fragment(const Formula& f);

// A formula without WNeg equivalent to WNeg(f); Gen atoms are resolved through reg.
Formula wneg(const Formula& f, const AtomRegistry* reg = nullptr);

}  // namespace tl
