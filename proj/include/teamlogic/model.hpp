#pragma once

#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "teamlogic/formula.hpp"

namespace tl {

using Tuple = std::vector<int>;

struct Signature {
    std::map<std::string, int> relations;
    std::set<std::string> constants;
};

struct Relation {
    int arity = 0;
    std::set<Tuple> tuples;
    friend bool operator==(const Relation&, const Relation&) = default;
};

// Elements are indices into `domain`; `domain` holds their names in lexicographic order.
struct Model {
    std::vector<std::string> domain;
    std::map<std::string, Relation> relations;
    std::map<std::string, int> constants;

    int size() const { return static_cast<int>(domain.size()); }
    int element(const std::string& name) const;
    Signature signature() const;
    friend bool operator==(const Model&, const Model&) = default;
};

Model make_model(std::vector<std::string> domain);
void require_min_size(const Model& m, int min_size);

Model parse_model(const std::string& text);
std::string print_model(const Model& m);

// Calls `visit` for every model over {e1..ed}, 1 <= d <= max_size; stops early when visit returns false.
void enumerate_models(const Signature& sig, int max_size, const std::function<bool(const Model&)>& visit,
                      int max_tuple_slots = 20);
std::size_t count_models(const Signature& sig, int max_size);

Model expand_with_relation(const Model& m, const std::string& sym, int arity, const std::set<Tuple>& interp);

}  // namespace tl
