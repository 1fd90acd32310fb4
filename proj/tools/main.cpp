#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "teamlogic/entailment.hpp"
#include "teamlogic/eso.hpp"
#include "teamlogic/genatom.hpp"
#include "teamlogic/negation.hpp"
#include "teamlogic/parser.hpp"
#include "teamlogic/proofkernel.hpp"
#include "teamlogic/props.hpp"
#include "teamlogic/semantics.hpp"

namespace {

using namespace tl;

struct Config {
    std::string model, team, formula, concl, script, atoms, dump, target = "eso";
    std::vector<std::string> hyps, suites;
    int maxDomain = 2;
    std::size_t teamCap = kDefaultTeamCap, samples = 2000;
    std::optional<std::uint64_t> seed;
    bool machine = false;
};

struct Usage : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Usage("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

class Output {
public:
    explicit Output(bool machine) : machine_(machine) {}
    void headline(const std::string& key, const std::string& text) {
        if (machine_) std::cout << key << "=" << text << "\n";
        else std::cout << text << "\n";
    }
    void detail(const std::string& key, const std::string& value) {
        if (machine_) std::cout << key << "=" << value << "\n";
        else std::cout << "  " << key << ": " << value << "\n";
    }
    void block(const std::string& key, const std::string& text) {
        if (!machine_) {
            std::cout << text;
            return;
        }
        std::istringstream in(text);
        int i = 0;
        for (std::string line; std::getline(in, line);) std::cout << key << "." << i++ << "=" << line << "\n";
    }

private:
    bool machine_;
};

struct Context {
    AtomRegistry reg;
    std::map<std::string, int> arities;

    explicit Context(const Config& c) : reg(register_builtin_atoms()) {
        if (!c.atoms.empty())
            for (auto& d : parse_genatoms(slurp(c.atoms))) reg.add(std::move(d));
        arities = reg.arities();
    }
    Formula parse(const std::string& text, const std::set<std::string>& constants = {}) const {
        ParseOptions po;
        po.atoms = &arities;
        po.constants = constants;
        return parse_formula(text, po);
    }
};

int cmd_check(const Config& c, Output& out) {
    Context ctx(c);
    Model m = parse_model(slurp(c.model));
    Team x = parse_team(slurp(c.team), m);
    std::set<std::string> consts;
    for (const auto& [k, v] : m.constants) consts.insert(k);
    Formula f = ctx.parse(c.formula, consts);
    bool sat = eval(m, x, f, &ctx.reg);
    out.headline("verdict", sat ? "SAT" : "UNSAT");
    return sat ? 0 : 1;
}

int cmd_entail(const Config& c, Output& out) {
    Context ctx(c);
    std::vector<Formula> gamma;
    for (const auto& h : c.hyps) gamma.push_back(ctx.parse(h));
    Formula phi = ctx.parse(c.concl);
    EntailOptions o;
    o.maxDomain = c.maxDomain;
    o.teamCap = c.teamCap;
    o.samples = c.samples;
    o.sampleSeed = c.seed;
    o.atoms = &ctx.reg;
    auto v = entails_bounded(gamma, phi, o);
    bool valid = v.status == EntailmentStatus::ValidUpToBound;
    out.headline("verdict", valid ? "VALID-UP-TO " + std::to_string(c.maxDomain) : "COUNTEREXAMPLE");
    out.detail("models", std::to_string(v.models));
    out.detail("teams", std::to_string(v.teams));
    out.detail("skipped", std::to_string(v.skipped));
    out.detail("sampled", v.sampled ? "yes" : "no");
    if (!valid && v.witness) {
        std::string model = print_model(v.witness->first), team = print_team(v.witness->second, v.witness->first);
        if (!c.dump.empty()) {
            std::ofstream(c.dump + ".model") << model;
            std::ofstream(c.dump + ".team") << team;
            out.detail("model-file", c.dump + ".model");
            out.detail("team-file", c.dump + ".team");
        } else {
            out.block("model", model);
            out.block("team", team);
        }
    }
    return valid ? 0 : 1;
}

int cmd_negate(const Config& c, Output& out) {
    Context ctx(c);
    Formula f = ctx.parse(c.formula);
    auto report = is_negatable_fragment(f);
    if (!report.inFragment) {
        out.headline("verdict", "NOT-NEGATABLE");
        if (!report.reason.empty()) out.detail("reason", report.reason.back());
        return 1;
    }
    out.headline("formula", print_formula(wneg(f, &ctx.reg)));
    return 0;
}

int cmd_translate(const Config& c, Output& out) {
    Context ctx(c);
    Formula f = ctx.parse(c.formula);
    if (c.target == "eso") {
        out.headline("eso", print_eso(tau(f, "R", &ctx.reg)));
        return 0;
    }
    if (c.target == "sigma") {
        auto g = as_gen(f, &ctx.reg);
        out.headline("formula", print_formula(sigma_pi_translate(g.def, g.args)));
        return 0;
    }
    throw Usage("--to must be eso or sigma");
}

int cmd_prove(const Config& c, Output& out) {
    Context ctx(c);
    auto script = parse_proof_script(slurp(c.script), &ctx.reg);
    auto v = check_proof(script, &ctx.reg);
    if (!v.accepted) {
        out.headline("verdict", "REJECTED");
        out.detail("step", std::to_string(v.step));
        out.detail("reason", v.reason);
        return 1;
    }
    out.headline("verdict", "ACCEPTED");
    std::string seq;
    for (std::size_t i = 0; i < v.hypotheses.size(); ++i) seq += (i ? ", " : "") + print_formula(v.hypotheses[i]);
    out.detail("sequent", seq + (seq.empty() ? "|- " : " |- ") + print_formula(v.conclusion));
    return 0;
}

int cmd_props(const Config& c, Output& out) {
    auto names = c.suites.empty() ? suite_names() : c.suites;
    bool all = true;
    for (const auto& n : names) {
        SuiteOptions o;
        if (c.seed) o.seed = *c.seed;
        auto r = run_suite(n, o);
        all = all && r.passed();
        std::ostringstream line;
        line << (r.passed() ? "PASS " : "FAIL ") << n << " checks=" << r.checks << " failures=" << r.failures;
        out.headline("suite." + n, line.str());
        for (const auto& note : r.notes) out.detail(n + ".failure", note);
    }
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    Config c;
    CLI::App app{"Team semantics workbench for dependence and independence logic", "teamlogic"};
    app.require_subcommand(1);
    app.add_flag("--machine", c.machine, "print key=value lines");
    app.add_option("--atoms", c.atoms, "generalized atom definitions file");

    auto* check = app.add_subcommand("check", "evaluate a formula on a model and team");
    check->add_option("--model", c.model, "model file")->required();
    check->add_option("--team", c.team, "team file")->required();
    check->add_option("--formula", c.formula)->required();

    auto* entail = app.add_subcommand("entail", "bounded entailment search");
    entail->add_option("--hyp", c.hyps, "hypothesis (repeatable)");
    entail->add_option("--concl", c.concl)->required();
    entail->add_option("--max-domain", c.maxDomain)->check(CLI::Range(1, 6));
    entail->add_option("--team-cap", c.teamCap, "enumerate all teams while |M|^|V| stays within this cap");
    entail->add_option("--samples", c.samples, "sampled teams per model above the cap");
    entail->add_option("--seed", c.seed);
    entail->add_option("--dump", c.dump, "write a counterexample to PREFIX.model and PREFIX.team");

    auto* negate = app.add_subcommand("negate", "weak negation of a negatable formula");
    negate->add_option("--formula", c.formula)->required();

    auto* translate = app.add_subcommand("translate", "translate to ESO or to the sigma-pi normal form");
    translate->add_option("--formula", c.formula)->required();
    translate->add_option("--to", c.target, "eso or sigma")->check(CLI::IsMember({"eso", "sigma"}));

    auto* prove = app.add_subcommand("prove", "check a proof script");
    prove->add_option("--script", c.script)->required();

    auto* props = app.add_subcommand("props", "run property suites");
    props->add_option("--suite", c.suites, "suite name (repeatable; default all)")->check(CLI::IsMember(suite_names()));
    props->add_option("--seed", c.seed);

    for (auto* sub : {check, entail, negate, translate, prove}) {
        sub->add_flag("--machine", c.machine, "print key=value lines");
        sub->add_option("--atoms", c.atoms, "generalized atom definitions file");
    }
    props->add_flag("--machine", c.machine, "print key=value lines");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    Output out(c.machine);
    try {
        if (*check) return cmd_check(c, out);
        if (*entail) return cmd_entail(c, out);
        if (*negate) return cmd_negate(c, out);
        if (*translate) return cmd_translate(c, out);
        if (*prove) return cmd_prove(c, out);
        return cmd_props(c, out);
    } catch (const ProofScriptError& e) {
        std::cerr << "error: " << e.what() << "\n";
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
    }
    return 2;
}
