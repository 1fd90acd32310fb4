#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>

#include "teamlogic/formula.hpp"

namespace tl {

struct SourceSpan {
    std::size_t start = 0;
    std::size_t end = 0;
};

struct ParseError : LogicError {
    SourceSpan span;
    ParseError(const std::string& msg, SourceSpan s);
};

struct ParseOptions {
    // bare identifiers in term position that denote constants ('a always does)
    std::set<std::string> constants;
    // generalized atom name -> argument count; nullptr accepts any @name(...)
    const std::map<std::string, int>* atoms = nullptr;
    // keep ->, sequence (in)equalities as sugar nodes
    bool keep_sugar = false;
    // accept variables containing '$' (the reserved fresh-name prefix)
    bool allow_reserved = false;
};

Formula parse_formula(const std::string& text, const ParseOptions& opts = {});
std::string print_formula(const Formula& f);
std::string print_term(const Term& t);

}  // namespace tl
