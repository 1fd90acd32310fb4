#pragma once

#include <map>
#include <string>
#include <vector>

#include "teamlogic/formula.hpp"
#include "teamlogic/model.hpp"
#include "teamlogic/team.hpp"

namespace tl {

enum class Polarity { Sigma, Pi };

// Round i (1-based) quantifies k[i-1] tuples of width m. Round 1 is existential for Sigma and universal for Pi,
// later rounds alternate. phi speaks about the grid variables w$i$j$l.
struct GenAtomDef {
    std::string name;
    Polarity polarity = Polarity::Pi;
    int n = 1;
    std::vector<int> k{1};
    int m = 1;
    Formula phi;

    int relation_arity() const;
    bool round_is_universal(int i) const;
};

std::string grid_var(int i, int j, int l);
VarList grid_tuple(int i, int j, int m);
std::vector<VarList> grid_group(const GenAtomDef& d, int i);
VarList grid_vars(const GenAtomDef& d);
bool is_grid_var(const std::string& v);

void validate(const GenAtomDef& d);

class AtomRegistry {
public:
    void add(GenAtomDef d);
    const GenAtomDef* find(const std::string& name) const;
    const GenAtomDef& get(const std::string& name) const;
    std::map<std::string, int> arities() const;
    const std::map<std::string, GenAtomDef>& all() const { return defs_; }

private:
    std::map<std::string, GenAtomDef> defs_;
};

// dep<k> for k <= 3 (dep<k>_<p> with p > 1 dependents), inc<k> for k <= 3, ind<k>_<m>_<n> for k, m <= 2, n <= 1
AtomRegistry register_builtin_atoms();

GenAtomDef make_dep_def(int k, int p = 1);
// arguments xs ys zs, meaning xs independent of ys given zs
GenAtomDef make_ind_def(int k, int m, int n);
GenAtomDef make_inc_def(int k);
// Pi_{1,<1>} atom whose arguments are the sorted free variables of phi
GenAtomDef make_fo_def(const std::string& name, const Formula& phi);

struct GenInstance {
    GenAtomDef def;
    VarList args;
};
// Dep, Ind and Inc nodes as builtin generalized atoms; Gen nodes looked up in the registry
GenInstance as_gen(const Formula& atom, const AtomRegistry* reg = nullptr);

bool eval_direct(const Model& m, const Team& x, const GenAtomDef& d, const VarList& args);

GenAtomDef complement(const GenAtomDef& d);

Formula build_inc(const std::vector<VarList>& group, const VarList& x);
Formula build_pro(const VarList& prefix, const VarList& x, const std::vector<VarList>& group);
Formula sigma_pi_translate(const GenAtomDef& d, const VarList& args);

// gammas[i][r] is the row of X chosen for row r of X when filling ws[i]
Team simulating_team(const Model& m, const Team& x, const std::vector<std::vector<std::size_t>>& gammas,
                     const VarList& args, const std::vector<VarList>& ws);
Team duplicating_team(const Model& m, const Team& x, const VarList& args, const std::vector<VarList>& ws);

// "genatom NAME POLARITY n=N k=[k1,...] m=M" followed by "phi: FORMULA"; several definitions per file allowed
std::vector<GenAtomDef> parse_genatoms(const std::string& text);
std::string print_genatom(const GenAtomDef& d);

}  // namespace tl
