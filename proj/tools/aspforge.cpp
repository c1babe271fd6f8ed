#include "aspforge/claims.hpp"
#include "aspforge/corpus.hpp"
#include "aspforge/depgraph.hpp"
#include "aspforge/fol.hpp"
#include "aspforge/ground.hpp"
#include "aspforge/ndproof.hpp"
#include "aspforge/parser.hpp"
#include "aspforge/rewrite.hpp"
#include "aspforge/stablemodels.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace aspforge;
using json = nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitFalse = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCap = 3;

struct Config {
    int depth = ground::kDefaultDepth;
    int cap = ground::kDefaultExhaustiveCap;
    bool json_output = false;
    uint64_t seed = 20240;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot open file: " + path);
    }
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

Program load_program(const std::string& path) { return parser::parse_program(slurp(path)); }

json atoms_json(const std::set<Atom>& atoms) {
    json arr = json::array();
    for (const Atom& a : atoms) {
        arr.push_back(parser::format_atom(a));
    }
    return arr;
}

json models_json(const std::vector<stablemodels::Interpretation>& models) {
    json arr = json::array();
    for (const auto& m : models) {
        arr.push_back(atoms_json(m.true_atoms));
    }
    return arr;
}

json report_json(const rewrite::RewriteReport& report) {
    json j;
    j["pass"] = report.pass;
    j["applicable"] = report.applicable;
    json removed = json::array();
    for (const Rule& r : report.removed) {
        removed.push_back(parser::format_rule(r));
    }
    json added = json::array();
    for (const Rule& r : report.added) {
        added.push_back(parser::format_rule(r));
    }
    j["removed"] = removed;
    j["added"] = added;
    j["fresh_symbols"] = report.fresh_symbols;
    if (!report.detail.empty()) {
        j["detail"] = report.detail;
    }
    if (report.oracle) {
        j["oracle"] = {{"pass", report.oracle->pass},
                       {"mode", report.oracle->mode},
                       {"depth", report.oracle->depth},
                       {"detail", report.oracle->detail}};
    }
    return j;
}

std::string interpretation_text(const stablemodels::Interpretation& m) {
    std::string s = "{";
    bool first = true;
    for (const Atom& a : m.true_atoms) {
        if (!first) {
            s += ", ";
        }
        first = false;
        s += parser::format_atom(a);
    }
    return s + "}";
}

std::vector<std::vector<std::string>> parse_partition(const std::string& text) {
    std::vector<std::vector<std::string>> partition;
    std::istringstream groups(text);
    std::string group;
    while (std::getline(groups, group, '|')) {
        std::vector<std::string> member;
        std::istringstream items(group);
        std::string item;
        while (std::getline(items, item, ',')) {
            item.erase(0, item.find_first_not_of(" \t"));
            item.erase(item.find_last_not_of(" \t") + 1);
            if (!item.empty()) {
                member.push_back(item);
            }
        }
        if (!member.empty()) {
            partition.push_back(std::move(member));
        }
    }
    return partition;
}

int cmd_fmt(const std::string& file) {
    std::cout << parser::format_program(load_program(file));
    return kExitOk;
}

int cmd_ground(const std::string& file, const Config& cfg) {
    Program p = load_program(file);
    ground::GroundTheory theory =
        ground::ground_theory(p, cfg.depth, std::max(cfg.cap, ground::kDefaultStreamingCap));
    if (cfg.json_output) {
        json j;
        j["depth"] = cfg.depth;
        json atoms = json::array();
        for (const Atom& a : theory.atoms) {
            atoms.push_back(parser::format_atom(a));
        }
        j["atoms"] = atoms;
        json formulas = json::array();
        for (const auto& f : theory.formulas) {
            formulas.push_back(fol::to_string(f));
        }
        j["formulas"] = formulas;
        std::cout << j.dump(2) << "\n";
    } else {
        for (const auto& f : theory.formulas) {
            std::cout << fol::to_string(f) << "\n";
        }
    }
    return kExitOk;
}

int cmd_solve(const std::string& file, const Config& cfg) {
    Program p = load_program(file);
    auto models = stablemodels::answer_sets(ground::ground_theory(p, cfg.depth, 4096), cfg.cap);
    if (cfg.json_output) {
        json j;
        j["depth"] = cfg.depth;
        j["count"] = models.size();
        j["answer_sets"] = models_json(models);
        std::cout << j.dump(2) << "\n";
    } else {
        for (size_t i = 0; i < models.size(); ++i) {
            std::cout << "answer set " << i + 1 << ": " << interpretation_text(models[i]) << "\n";
        }
        std::cout << models.size() << " answer set(s)\n";
    }
    return kExitOk;
}

int cmd_eq(const std::string& mode, const std::string& file_a, const std::string& file_b,
           const Config& cfg) {
    Program a = load_program(file_a);
    Program b = load_program(file_b);
    json j;
    j["mode"] = mode;
    j["depth"] = cfg.depth;
    bool verdict = false;
    std::string detail;
    if (mode == "strong") {
        Signature sig = signature(a);
        sig.merge(signature(b));
        if (sig.object_constants.empty()) {
            sig.object_constants.insert("c0");
        }
        ground::HerbrandUniverse u = ground::herbrand_universe(sig, cfg.depth);
        fol::FormulaPtr fa = ground::instantiate(fol::fol_of_program(a), u);
        fol::FormulaPtr fb = ground::instantiate(fol::fol_of_program(b), u);
        auto res = stablemodels::strongly_equivalent_ground(fa, fb, cfg.cap);
        verdict = res.equivalent;
        if (res.witness) {
            j["witness"] = {{"here", atoms_json(res.witness->here.true_atoms)},
                            {"there", atoms_json(res.witness->there.true_atoms)}};
            detail = "HT countermodel: here=" + interpretation_text(res.witness->here) +
                     " there=" + interpretation_text(res.witness->there);
        }
    } else if (mode == "answersets") {
        auto res = stablemodels::same_answer_sets(a, b, cfg.depth, cfg.cap);
        verdict = res.same;
        if (res.witness) {
            j["witness"] = atoms_json(res.witness->true_atoms);
            detail = "answer set of one program only: " + interpretation_text(*res.witness);
        }
    } else if (mode == "conservative") {
        auto res = stablemodels::conservative_extension_check(a, b, cfg.depth, cfg.cap);
        verdict = res.conservative;
        json mapping = json::array();
        for (const auto& [ext, base] : res.mapping) {
            mapping.push_back({atoms_json(ext.true_atoms), atoms_json(base.true_atoms)});
        }
        j["mapping"] = mapping;
        detail = res.violation;
    } else {
        std::cerr << "unknown --mode " << mode << "\n";
        return kExitUsage;
    }
    j["verdict"] = verdict;
    if (cfg.json_output) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << mode << " equivalence (depth " << cfg.depth << "): "
                  << (verdict ? "holds" : "fails") << "\n";
        if (!detail.empty()) {
            std::cout << detail << "\n";
        }
    }
    return verdict ? kExitOk : kExitFalse;
}

int cmd_graph(const std::string& file, bool dot) {
    Program p = load_program(file);
    auto g = depgraph::dependency_graph(p);
    if (dot) {
        std::cout << depgraph::to_dot(g);
        return kExitOk;
    }
    std::cout << "vertices:";
    for (const std::string& v : g.vertices) {
        std::cout << " " << v;
    }
    std::cout << "\nedges:";
    for (const auto& [a, b] : g.edges) {
        std::cout << " " << a << "->" << b;
    }
    std::cout << "\ncomponents:";
    for (const auto& comp : depgraph::sccs(g)) {
        std::cout << " {";
        for (size_t i = 0; i < comp.size(); ++i) {
            std::cout << (i ? "," : "") << comp[i];
        }
        std::cout << "}";
    }
    std::cout << "\n";
    return kExitOk;
}

int cmd_rewrite(const std::string& pass, const std::string& file, const Config& cfg,
                bool verify, const std::string& partition_text, size_t rule_index,
                const std::string& p_pred, const std::string& q_pred,
                const std::string& vars_text, const std::string& alpha_text,
                const std::string& alpha_prime_text, const std::string& fresh,
                const std::string& def_text) {
    Program program = load_program(file);
    rewrite::RewriteResult result;
    rewrite::VerifyMode verify_mode;

    auto parse_indices = [](const std::string& text) {
        std::vector<size_t> out;
        std::istringstream in(text);
        std::string item;
        while (std::getline(in, item, ',')) {
            if (!item.empty()) {
                out.push_back(static_cast<size_t>(std::stoul(item)));
            }
        }
        return out;
    };
    auto parse_names = [](const std::string& text) {
        std::vector<std::string> out;
        std::istringstream in(text);
        std::string item;
        while (std::getline(in, item, ',')) {
            if (!item.empty()) {
                out.push_back(item);
            }
        }
        return out;
    };

    if (pass == "subsumption") {
        result = rewrite::subsumption_simplify(program);
    } else if (pass == "eliminate-aggregate") {
        if (rule_index >= program.rules.size()) {
            throw PreconditionViolation("--rule index out of range");
        }
        Rule rewritten = rewrite::eliminate_aggregate(program.rules[rule_index]);
        result.report.pass = pass;
        result.report.removed.push_back(program.rules[rule_index]);
        result.report.added.push_back(rewritten);
        result.program = program;
        result.program.rules[rule_index] = std::move(rewritten);
    } else if (pass == "unwrap-count" || pass == "wrap-count") {
        if (rule_index >= program.rules.size()) {
            throw PreconditionViolation("--rule index out of range");
        }
        Rule rewritten = pass == "unwrap-count"
                             ? rewrite::unwrap_singleton_count(program.rules[rule_index])
                             : rewrite::wrap_singleton_count(program.rules[rule_index]);
        result.report.pass = pass;
        result.report.removed.push_back(program.rules[rule_index]);
        result.report.added.push_back(rewritten);
        result.program = program;
        result.program.rules[rule_index] = std::move(rewritten);
    } else if (pass == "choice-to-defining") {
        result = rewrite::choice_to_defining(program, p_pred, q_pred);
    } else if (pass == "defining-to-choice") {
        result = rewrite::defining_to_choice(program, p_pred, q_pred);
    } else if (pass == "shift") {
        rewrite::ShiftTarget target;
        target.rule_index = rule_index;
        target.partition = parse_partition(partition_text);
        if (target.partition.empty()) {
            throw PreconditionViolation("--partition is required, e.g. \"a,b|c,d\"");
        }
        result = rewrite::shift_rules(program, {target});
    } else if (pass == "project") {
        if (rule_index >= program.rules.size()) {
            throw PreconditionViolation("--rule index out of range");
        }
        auto projected = rewrite::project_rule(
            program.rules[rule_index], parse_names(vars_text), parse_indices(alpha_text),
            parse_indices(alpha_prime_text), fresh.empty() ? "__aux1" : fresh, signature(program));
        result.report.pass = pass;
        result.report.removed.push_back(program.rules[rule_index]);
        result.report.added = {projected.main_rule, projected.definition_rule};
        result.report.fresh_symbols.push_back(fresh.empty() ? "__aux1" : fresh);
        result.program = program;
        result.program.rules[rule_index] = projected.main_rule;
        result.program.rules.insert(result.program.rules.begin() + static_cast<long>(rule_index) + 1,
                                    projected.definition_rule);
        verify_mode.kind = rewrite::VerifyMode::Kind::Conservative;
        verify_mode.fresh_preds = {fresh.empty() ? "__aux1" : fresh};
    } else if (pass == "introduce-definition") {
        Rule def_rule = parser::parse_rule(def_text);
        if (classify_rule(def_rule) != RuleClass::Defining) {
            throw PreconditionViolation("--def must be a defining rule `q(Y) :- def.`");
        }
        result = rewrite::introduce_definition(program, def_rule.head.atoms[0], def_rule.body);
        verify_mode.kind = rewrite::VerifyMode::Kind::Conservative;
        verify_mode.fresh_preds = {def_rule.head.atoms[0].pred};
    } else {
        std::cerr << "unknown --pass " << pass << "\n";
        return kExitUsage;
    }

    if (verify) {
        result.report.oracle =
            rewrite::verify_rewrite(program, result.program, verify_mode, cfg.depth, cfg.cap);
    }
    if (cfg.json_output) {
        json j = report_json(result.report);
        j["program"] = parser::format_program(result.program);
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << parser::format_program(result.program);
        if (result.report.oracle) {
            std::cerr << "oracle (" << result.report.oracle->mode
                      << "): " << (result.report.oracle->pass ? "pass" : "FAIL") << "\n";
        }
    }
    if (result.report.oracle && !result.report.oracle->pass) {
        return kExitFalse;
    }
    return kExitOk;
}

int cmd_c_trans(const std::string& file, const Config& cfg) {
    auto d = actionlang::parse_action_description(slurp(file));
    auto ts = actionlang::transition_system(d);
    auto literal_names = [&](const std::vector<actionlang::CLiteral>& lits) {
        json arr = json::array();
        for (const auto& l : lits) {
            arr.push_back((l.positive ? "" : "-") + l.name);
        }
        return arr;
    };
    if (cfg.json_output) {
        json j;
        json states = json::array();
        for (const auto& s : ts.states) {
            states.push_back(literal_names(actionlang::state_literals(d, s)));
        }
        json edges = json::array();
        for (const auto& t : ts.transitions) {
            edges.push_back({literal_names(actionlang::state_literals(d, t.from)),
                             literal_names(actionlang::action_literals(d, t.action)),
                             literal_names(actionlang::state_literals(d, t.to))});
        }
        j["states"] = states;
        j["transitions"] = edges;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << ts.states.size() << " state(s), " << ts.transitions.size()
                  << " causally explained transition(s)\n";
        for (const auto& t : ts.transitions) {
            auto text = [&](const std::vector<actionlang::CLiteral>& lits) {
                std::string s;
                for (size_t i = 0; i < lits.size(); ++i) {
                    s += (i ? " " : "") + std::string(lits[i].positive ? "" : "-") + lits[i].name;
                }
                return s;
            };
            std::cout << "<" << text(actionlang::state_literals(d, t.from)) << ", "
                      << text(actionlang::action_literals(d, t.action)) << ", "
                      << text(actionlang::state_literals(d, t.to)) << ">\n";
        }
    }
    return kExitOk;
}

int cmd_c_translate(const std::string& file, const std::string& mode, int horizon) {
    auto d = actionlang::parse_action_description(slurp(file));
    Program p = mode == "lp" ? actionlang::translate_lp(d, horizon)
                             : actionlang::translate_simp(d, horizon);
    std::cout << parser::format_program(p);
    return kExitOk;
}

int cmd_nd_check(const std::string& file, const std::string& admit) {
    ndproof::CheckOptions options;
    if (admit == "demorgan") {
        options.admit_demorgan = true;
    } else if (!admit.empty()) {
        std::cerr << "unknown --admit value " << admit << "\n";
        return kExitUsage;
    }
    auto proof = ndproof::parse_proof(slurp(file));
    auto res = ndproof::check_proof(proof, options);
    if (res.valid) {
        std::cout << "valid (" << proof.lines.size() << " lines)\n";
        return kExitOk;
    }
    std::cout << "invalid at line " << res.line << ": " << res.reason << "\n";
    return kExitFalse;
}

int cmd_corpus(const std::string& which, const std::string& out_path, int actions, int horizon) {
    corpus::InstanceParams params;
    params.actions.clear();
    for (int i = 1; i <= actions; ++i) {
        params.actions.push_back("a" + std::to_string(i));
    }
    params.horizon = horizon;
    std::string text;
    if (which == "plan-choice") {
        text = parser::format_program(corpus::build_plan_choice(params));
    } else if (which == "plan-disj") {
        text = parser::format_program(corpus::build_plan_disj(params));
    } else if (which == "instance") {
        text = parser::format_program(corpus::build_plan_instance(params));
    } else if (which == "pisamp") {
        text = parser::format_program(corpus::build_pisamp());
    } else if (which == "water") {
        text = corpus::water_act_text();
    } else {
        std::cerr << "unknown corpus name " << which << "\n";
        return kExitUsage;
    }
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
    } else {
        std::ofstream out(out_path);
        out << text;
    }
    return kExitOk;
}

int cmd_verify_claims(const Config& cfg) {
    claims::SuiteOptions options;
    options.cap = std::max(cfg.cap, options.cap);
    options.seed = cfg.seed;
    auto results = claims::run_claim_suite(options);
    for (const auto& r : results) {
        std::cout << (r.pass ? "pass" : "FAIL") << "  " << r.name;
        if (!r.pass && !r.detail.empty()) {
            std::cout << "  (" << r.detail << ")";
        }
        std::cout << "\n";
    }
    return claims::all_passed(results) ? kExitOk : kExitFalse;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"verified rewriting toolkit for RASPL-1 programs"};
    app.require_subcommand(1);
    app.fallthrough();

    Config cfg;
    app.add_option("--depth", cfg.depth, "Herbrand universe nesting depth")
        ->envname("ASPFORGE_DEPTH");
    app.add_option("--cap", cfg.cap, "candidate-atom cap for the oracles")->envname("ASPFORGE_CAP");
    app.add_flag("--json", cfg.json_output, "machine-readable output")->envname("ASPFORGE_JSON");
    app.add_option("--seed", cfg.seed, "seed for randomized spot checks")->envname("ASPFORGE_SEED");

    std::string file, file_b, mode = "strong", pass, partition, p_pred, q_pred;
    std::string vars_text, alpha_text, alpha_prime_text, fresh, def_text, admit, out_path;
    std::string corpus_name;
    size_t rule_index = 0;
    int horizon = 1;
    int actions = 2;
    bool dot = false;
    bool verify = false;

    auto* fmt = app.add_subcommand("fmt", "parse and pretty-print a program");
    fmt->add_option("file", file)->required();

    auto* groundc = app.add_subcommand("ground", "print the grounded theory");
    groundc->add_option("file", file)->required();

    auto* solve = app.add_subcommand("solve", "enumerate answer sets");
    solve->add_option("file", file)->required();

    auto* eq = app.add_subcommand("eq", "compare two programs");
    eq->add_option("--mode", mode, "strong | answersets | conservative");
    eq->add_option("a", file)->required();
    eq->add_option("b", file_b)->required();

    auto* graph = app.add_subcommand("graph", "predicate dependency graph");
    graph->add_option("file", file)->required();
    graph->add_flag("--dot", dot, "emit graphviz");

    auto* rewritec = app.add_subcommand("rewrite", "apply a rewriting pass");
    rewritec->add_option("--pass", pass,
                         "subsumption | eliminate-aggregate | unwrap-count | wrap-count | "
                         "choice-to-defining | defining-to-choice | shift | project | "
                         "introduce-definition")
        ->required();
    rewritec->add_option("file", file)->required();
    rewritec->add_option("--rule", rule_index, "0-based rule index");
    rewritec->add_option("--partition", partition, "e.g. \"a,b|c,d,e\"");
    rewritec->add_option("--p", p_pred);
    rewritec->add_option("--q", q_pred);
    rewritec->add_option("--x", vars_text, "projected variables, comma separated");
    rewritec->add_option("--alpha", alpha_text, "body literal indices");
    rewritec->add_option("--alpha-prime", alpha_prime_text, "subset of --alpha");
    rewritec->add_option("--u", fresh, "fresh predicate name");
    rewritec->add_option("--def", def_text, "definition as a rule `q(Y) :- body.`");
    rewritec->add_flag("--verify", verify, "run the answer-set oracle on the result");

    auto* c = app.add_subcommand("c", "action language front end");
    c->require_subcommand(1);
    auto* trans = c->add_subcommand("trans", "states and causally explained transitions");
    trans->add_option("file", file)->required();
    auto* translate = c->add_subcommand("translate", "emit the lp or simp program");
    translate->add_option("file", file)->required();
    translate->add_option("--mode", mode, "lp | simp")->required();
    translate->add_option("--horizon", horizon, "time horizon T >= 1")->required();

    auto* nd = app.add_subcommand("nd", "natural deduction proofs");
    nd->require_subcommand(1);
    auto* check = nd->add_subcommand("check", "check a proof script");
    check->add_option("file", file)->required();
    check->add_option("--admit", admit, "demorgan");

    auto* corp = app.add_subcommand("corpus", "write bundled example programs");
    corp->add_option("which", corpus_name, "plan-choice | plan-disj | instance | pisamp | water")
        ->required();
    corp->add_option("--out", out_path, "output file (default stdout)");
    corp->add_option("--actions", actions, "number of actions");
    corp->add_option("--horizon", horizon, "plan length bound n");

    auto* vc = app.add_subcommand("verify-claims", "run the rewriting claim suite");
    (void)vc;

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*fmt) {
            return cmd_fmt(file);
        }
        if (*groundc) {
            return cmd_ground(file, cfg);
        }
        if (*solve) {
            return cmd_solve(file, cfg);
        }
        if (*eq) {
            return cmd_eq(mode, file, file_b, cfg);
        }
        if (*graph) {
            return cmd_graph(file, dot);
        }
        if (*rewritec) {
            return cmd_rewrite(pass, file, cfg, verify, partition, rule_index, p_pred, q_pred,
                               vars_text, alpha_text, alpha_prime_text, fresh, def_text);
        }
        if (*trans) {
            return cmd_c_trans(file, cfg);
        }
        if (*translate) {
            if (mode != "lp" && mode != "simp") {
                std::cerr << "--mode must be lp or simp\n";
                return kExitUsage;
            }
            return cmd_c_translate(file, mode, horizon);
        }
        if (*check) {
            return cmd_nd_check(file, admit);
        }
        if (*corp) {
            return cmd_corpus(corpus_name, out_path, actions, horizon);
        }
        if (*vc) {
            return cmd_verify_claims(cfg);
        }
    } catch (const CapExceeded& e) {
        std::cerr << "cap exceeded: " << e.what() << "\n";
        return kExitCap;
    } catch (const parser::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
