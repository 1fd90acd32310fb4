#include "teamlogic/entailment.hpp"

#include <cmath>

namespace tl {

namespace {

constexpr std::uint64_t kFallbackSeed = 20240601;

}  // namespace

std::string status_name(EntailmentStatus s) {
    return s == EntailmentStatus::ValidUpToBound ? "ValidUpToBound" : "Counterexample";
}

EntailmentVerdict entails_bounded(const std::vector<Formula>& gamma, const Formula& phi, const EntailOptions& opts) {
    if (opts.maxDomain < 1) throw LogicError("maxDomain must be at least 1");
    std::vector<Formula> all = gamma;
    all.push_back(phi);
    Signature sig;
    std::set<std::string> vars;
    for (const auto& f : all) {
        for (const auto& [r, a] : relations_of(f)) {
            auto [it, fresh] = sig.relations.emplace(r, a);
            if (!fresh && it->second != a) throw LogicError("relation " + r + " used with two arities");
        }
        sig.constants.merge(constants_of(f));
        vars.merge(free_vars(f));
    }
    VarList vs(vars.begin(), vars.end());

    EntailmentVerdict v;
    enumerate_models(sig, opts.maxDomain, [&](const Model& m) {
        ++v.models;
        Evaluator ev(m, opts.atoms, opts.budget);
        auto visit = [&](const Team& x) {
            ++v.teams;
            try {
                for (const auto& g : gamma)
                    if (!ev.eval(x, g)) return true;
                if (ev.eval(x, phi)) return true;
            } catch (const BudgetExceeded&) {
                ++v.skipped;
                return true;
            }
            v.status = EntailmentStatus::Counterexample;
            v.witness.emplace(m, x);
            return false;
        };
        double slots = std::pow(static_cast<double>(m.size()), static_cast<double>(vs.size()));
        if (slots <= static_cast<double>(opts.teamCap)) {
            all_teams(m, vs, visit, opts.teamCap);
        } else {
            v.sampled = true;
            sample_teams(m, vs, opts.samples, opts.sampleSeed.value_or(kFallbackSeed), visit);
        }
        return v.status == EntailmentStatus::ValidUpToBound;
    });
    return v;
}

EntailmentVerdict rule_soundness_check(const RuleInstance& r, const EntailOptions& opts) {
    if (r.assumption) {
        if (!r.minor) throw LogicError("rule instance with an assumption needs the minor conclusion");
        std::vector<Formula> g = r.premises;
        g.push_back(r.assumption);
        return entails_bounded(g, r.minor, opts);
    }
    if (!r.conclusion) throw LogicError("rule instance has no conclusion");
    return entails_bounded(r.premises, r.conclusion, opts);
}

}  // namespace tl
