// ioconf — conformance checking for labelled transition systems with
// inputs, outputs and quiescence.

#include "ioconf/conformance.hpp"
#include "ioconf/decomposition.hpp"
#include "ioconf/enumerate.hpp"
#include "ioconf/fragment.hpp"
#include "ioconf/gsos.hpp"
#include "ioconf/logic.hpp"
#include "ioconf/lts.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace ioconf;
using nlohmann::json;

namespace {

constexpr int exit_holds = 0;
constexpr int exit_fails = 1;
constexpr int exit_error = 2;

struct Output {
    bool as_json = false;
    json doc;

    void field(const std::string& key, const json& value, const std::string& line) {
        doc[key] = value;
        if (!as_json) std::cout << line << "\n";
    }
    void flush() {
        if (as_json) std::cout << doc.dump(2) << "\n";
    }
};

std::string yesno(bool b) { return b ? "yes" : "no"; }

Lts load(const std::string& path, bool close_quiescence, bool strict) {
    LtsParseOptions options;
    options.close_quiescence = close_quiescence;
    options.strict = strict;
    return load_lts(path, options);
}

int cmd_validate(const std::string& path, bool close_quiescence, Output& out) {
    Lts lts = load(path, close_quiescence, false);
    auto report = validate_quiescence(lts);
    json violations = json::array();
    for (const auto& v : report.violations) {
        violations.push_back({{"state", v.state}, {"kind", violation_text(v.kind)}});
        if (!out.as_json) std::cout << v.state << ": " << violation_text(v.kind) << "\n";
    }
    out.doc["violations"] = violations;
    out.field("coherent", report.ok(), report.ok() ? "quiescence-coherent" : "not quiescence-coherent");
    return report.ok() ? exit_holds : exit_fails;
}

int cmd_iocos(const Lts& lts, const std::string& i, const std::string& s, bool equivalence, Output& out) {
    auto verdict = iocos_holds(lts, lts.state(i), lts.state(s),
                               equivalence ? ConformanceMode::equivalence : ConformanceMode::preorder);
    out.field("holds", verdict.holds,
              (equivalence ? "iocos-equivalence: " : "iocos: ") + yesno(verdict.holds));
    if (verdict.witness) {
        std::string holds_at = lts.name_of(verdict.witness_holds_at);
        std::string fails_at = lts.name_of(verdict.witness_fails_at);
        out.doc["witness_holds_at"] = holds_at;
        out.doc["witness_fails_at"] = fails_at;
        out.field("witness", print_formula(*verdict.witness),
                  "witness (holds at " + holds_at + ", fails at " + fails_at +
                      "): " + print_formula(*verdict.witness));
    }
    if (verdict.rank) out.field("rank", *verdict.rank, "removal rank: " + std::to_string(*verdict.rank));
    return verdict.holds ? exit_holds : exit_fails;
}

int cmd_ioco(const Lts& lts, const std::string& i, const std::string& s, Output& out) {
    bool holds = ioco_holds(lts, lts.state(i), lts.state(s));
    out.field("holds", holds, "ioco: " + yesno(holds));
    return holds ? exit_holds : exit_fails;
}

int cmd_bridge(const Lts& lts, const std::string& i, const std::string& s, int depth, Output& out) {
    auto report = ioco_iocos_bridge(lts, lts.state(i), lts.state(s));
    bool bounded = bm_ioco_bounded(lts, lts.state(i), lts.state(s), depth);
    out.field("ioco", report.ioco, "ioco: " + yesno(report.ioco));
    out.field("trace_check_bounded", bounded,
              "bounded trace comparison (depth " + std::to_string(depth) + "): " + yesno(bounded));
    out.field("iocos", report.iocos, "iocos: " + yesno(report.iocos));
    out.field("input_enabled_i", report.input_enabled_i,
              "implementation input-enabled: " + yesno(report.input_enabled_i));
    out.field("deterministic_s", report.deterministic_s,
              "specification deterministic: " + yesno(report.deterministic_s));
    out.field("coincidence_applicable", report.coincidence_applicable,
              "coincidence proposition applicable: " + yesno(report.coincidence_applicable));
    out.field("i_sat_char_s", report.i_sat_char_s,
              "implementation satisfies the characteristic formula of the specification: " +
                  yesno(report.i_sat_char_s));
    out.field("consistent", report.consistent, report.consistent ? "cross-checks consistent" : "INTERNAL INCONSISTENCY");
    if (!out.as_json)
        std::cout << "note: satisfying the characteristic formula certifies conformance; failing it only\n"
                     "refutes the simulation relation, never trace conformance by itself.\n";
    return report.iocos ? exit_holds : exit_fails;
}

int cmd_mc(const Lts& lts, const std::string& state, const std::string& formula_text,
           const std::string& decl_path, const std::string& root, Output& out) {
    StateId p = lts.state(state);
    bool sat;
    if (!decl_path.empty()) {
        std::ifstream in(decl_path);
        if (!in) throw std::runtime_error("cannot open '" + decl_path + "'");
        std::ostringstream buf;
        buf << in.rdbuf();
        Declaration decl = parse_declaration(buf.str());
        std::string var = root.empty() ? decl.equations.front().first : root;
        sat = satisfies_declared(lts, p, decl, var);
        out.field("variable", var, "variable: " + var);
    } else {
        FormulaPtr phi = parse_formula(formula_text);
        sat = satisfies(lts, p, phi);
        out.field("formula", print_formula(phi), "formula: " + print_formula(phi));
    }
    out.field("satisfied", sat, state + (sat ? " satisfies" : " does not satisfy") + " the property");
    return sat ? exit_holds : exit_fails;
}

int cmd_charform(const Lts& lts, const std::string& state, Output& out) {
    auto char_formula = characteristic_formula(lts, lts.state(state));
    out.field("root", char_formula.root, "root: " + char_formula.root);
    out.field("declaration", print_declaration(char_formula.declaration),
              print_declaration(char_formula.declaration));
    return exit_holds;
}

int cmd_distinguish(const Lts& lts, const std::string& i, const std::string& s,
                    const std::string& logic_name, Output& out) {
    WitnessLogic logic = WitnessLogic::l_iocos;
    if (logic_name == "tliocos")
        logic = WitnessLogic::l_tiocos;
    else if (logic_name != "liocos")
        throw std::invalid_argument("unknown logic '" + logic_name + "' (use liocos or tliocos)");
    auto phi = distinguishing_formula(lts, lts.state(i), lts.state(s), logic);
    if (!phi) {
        out.field("distinguishable", false, "none (conformance holds)");
        return exit_holds;
    }
    out.field("distinguishable", true, "distinguishable");
    std::string side = logic == WitnessLogic::l_iocos
                           ? "satisfied by " + i + ", refuted by " + s
                           : "satisfied by " + s + ", refuted by " + i;
    out.field("formula", print_formula(*phi), print_formula(*phi) + "   (" + side + ")");
    return exit_fails;
}

std::string rule_list(const GsosLanguage& lang, std::initializer_list<std::size_t> indices) {
    std::string out;
    for (auto i : indices) {
        if (!out.empty()) out += "  |  ";
        out += print_rule(lang.rules[i]);
    }
    return out;
}

int cmd_gsos_check(const GsosLanguage& lang, bool quiescence, Output& out) {
    if (!quiescence) {
        auto report = check_iocos_format(lang);
        json items = json::array();
        for (const auto& v : report.clause1) {
            items.push_back({{"clause", "1"}, {"rule", print_rule(lang.rules[v.rule])}, {"reason", v.reason}});
            if (!out.as_json)
                std::cout << "clause 1 violated: " << v.reason << "\n  " << rule_list(lang, {v.rule}) << "\n";
        }
        for (const auto& v : report.clause2) {
            std::string clause = std::string("2") + v.blocked_at;
            items.push_back({{"clause", clause},
                             {"rule_r", print_rule(lang.rules[v.rule_r])},
                             {"rule_rprime", print_rule(lang.rules[v.rule_rprime])}});
            if (!out.as_json)
                std::cout << "clause 2 violated (blocked at 2" << v.blocked_at << ") by the rule pair:\n  "
                          << rule_list(lang, {v.rule_r, v.rule_rprime}) << "\n";
        }
        for (const auto& v : report.clause3) {
            items.push_back({{"clause", "3"}, {"rule", print_rule(lang.rules[v.rule])}, {"reason", v.reason}});
            if (!out.as_json)
                std::cout << "clause 3 violated: " << v.reason << "\n  " << rule_list(lang, {v.rule}) << "\n";
        }
        out.doc["violations"] = items;
        out.field("pass", report.pass(),
                  report.pass() ? "iocos-format: pass" : "iocos-format: fail");
        return report.pass() ? exit_holds : exit_fails;
    }

    auto report = check_quiescent_consistent(lang);
    json items = json::array();
    for (const auto& v : report.delta1) {
        json item{{"clause", "delta1"}, {"delta_rule", print_rule(lang.rules[v.delta_rule])}, {"reason", v.reason}};
        if (v.output_rule) item["output_rule"] = print_rule(lang.rules[*v.output_rule]);
        items.push_back(item);
        if (!out.as_json) {
            std::cout << "[delta1] violated: " << v.reason << "\n  " << rule_list(lang, {v.delta_rule});
            if (v.output_rule) std::cout << "  |  " << print_rule(lang.rules[*v.output_rule]);
            std::cout << "\n";
        }
    }
    for (const auto& v : report.delta2) {
        items.push_back({{"clause", "delta2"}, {"op", v.op}, {"missing_rule", v.required_rule}});
        if (!out.as_json) std::cout << "[delta2] violated: missing rule  " << v.required_rule << "\n";
    }
    out.doc["violations"] = items;
    out.doc["inconclusive"] = report.inconclusive;
    if (report.inconclusive && !out.as_json)
        std::cout << "selection space over the cap; verdict inconclusive\n";
    out.field("pass", report.pass(),
              std::string("quiescent-consistency (rule containment up to renaming): ") +
                  (report.pass() ? "pass" : "fail"));
    return report.pass() ? exit_holds : exit_fails;
}

int cmd_gsos_lts(const GsosLanguage& lang, const Lts& base, const std::string& term_text,
                 std::size_t cap, Output& out) {
    Term root = parse_term(term_text, lang.signature);
    Lts derived = derive_lts(lang, base, root, cap);
    out.doc["lts"] = print_lts(derived);
    out.doc["root"] = print_term(root);
    if (!out.as_json) std::cout << print_lts(derived);
    out.flush();
    return exit_holds;
}

int cmd_decompose(const GsosLanguage& lang, const std::string& term_text, const std::string& formula_text,
                  const std::string& base_path, const std::string& sub_text, std::size_t cap,
                  Output& out) {
    Term t = parse_term(term_text, lang.signature);
    FormulaPtr phi = parse_formula(formula_text);
    auto maps = decompose(lang, t, phi, cap);
    json items = json::array();
    for (const auto& map : maps) {
        json obj = json::object();
        for (const auto& [var, f] : map) obj[var] = print_formula(f);
        items.push_back(obj);
        if (!out.as_json) std::cout << print_decomposition_map(map) << "\n";
    }
    out.doc["maps"] = items;
    out.field("count", maps.size(), std::to_string(maps.size()) + " decomposition map(s)");

    if (!base_path.empty()) {
        Lts base = load(base_path, false, false);
        std::map<std::string, StateId> sub;
        std::istringstream ss(sub_text);
        std::string assign;
        while (std::getline(ss, assign, ',')) {
            auto eq = assign.find('=');
            if (eq == std::string::npos)
                throw std::invalid_argument("substitution entries look like var=state");
            sub[assign.substr(0, eq)] = base.state(assign.substr(eq + 1));
        }
        auto check = verify_decomposition(lang, base, t, phi, sub, cap);
        out.field("direct", check.direct, "direct satisfaction: " + yesno(check.direct));
        out.field("decomposed", check.decomposed, "decomposed satisfaction: " + yesno(check.decomposed));
        out.field("format_ok", check.format_ok,
                  check.format_ok ? "rules pass the iocos-format; agreement is guaranteed"
                                  : "rules violate the iocos-format; agreement is not guaranteed");
        return check.direct == check.decomposed ? exit_holds : exit_fails;
    }
    return exit_holds;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"conformance toolkit for LTSs with inputs, outputs and quiescence"};
    app.require_subcommand(1);

    std::string format = "text";
    bool close_quiescence = false;
    bool strict = false;
    app.add_option("--format", format, "report format: text (default) or json")
        ->check(CLI::IsMember({"text", "json"}));
    app.add_flag_callback("--json", [&format] { format = "json"; }, "shorthand for --format json");

    std::string lts_path, gsos_path, base_path, state_i, state_s, state_p;
    std::string formula_text, decl_path, root_var, logic_name = "liocos", term_text, sub_text;
    bool equivalence = false, quiescence = false;
    std::size_t cap = 10000;
    int depth = 3;

    auto add_lts_flags = [&](CLI::App* cmd) {
        cmd->add_flag("--close-quiescence", close_quiescence,
                      "add delta! self-loops to output-less states before validation");
        cmd->add_flag("--strict", strict, "reject systems violating quiescence coherence");
    };

    auto* validate = app.add_subcommand("validate", "check quiescence coherence");
    validate->add_option("lts", lts_path)->required();
    validate->add_flag("--close-quiescence", close_quiescence);

    auto* iocos = app.add_subcommand("iocos", "decide the conformance simulation preorder");
    iocos->add_option("lts", lts_path)->required();
    iocos->add_option("implementation", state_i)->required();
    iocos->add_option("specification", state_s)->required();
    iocos->add_flag("--equivalence", equivalence, "check both directions");
    add_lts_flags(iocos);

    auto* ioco = app.add_subcommand("ioco", "decide trace conformance");
    ioco->add_option("lts", lts_path)->required();
    ioco->add_option("implementation", state_i)->required();
    ioco->add_option("specification", state_s)->required();
    add_lts_flags(ioco);

    auto* bridge = app.add_subcommand("bridge", "run both relations and the classifiers");
    bridge->add_option("lts", lts_path)->required();
    bridge->add_option("implementation", state_i)->required();
    bridge->add_option("specification", state_s)->required();
    bridge->add_option("--depth", depth, "bound for the trace-comparison cross-check");
    add_lts_flags(bridge);

    auto* mc = app.add_subcommand("mc", "model-check a formula or declaration");
    mc->add_option("lts", lts_path)->required();
    mc->add_option("state", state_p)->required();
    mc->add_option("formula", formula_text, "formula text (omit when using --decl)");
    mc->add_option("--decl", decl_path, "declaration file");
    mc->add_option("--root", root_var, "root variable of the declaration");
    add_lts_flags(mc);

    auto* charform = app.add_subcommand("charform", "print the characteristic equation system");
    charform->add_option("lts", lts_path)->required();
    charform->add_option("state", state_p)->required();
    add_lts_flags(charform);

    auto* distinguish = app.add_subcommand("distinguish", "construct a distinguishing formula");
    distinguish->add_option("lts", lts_path)->required();
    distinguish->add_option("implementation", state_i)->required();
    distinguish->add_option("specification", state_s)->required();
    distinguish->add_option("--fragment", logic_name, "liocos (default) or tliocos");
    add_lts_flags(distinguish);

    auto* gsos_check = app.add_subcommand("gsos-check", "check a rule system against the rule formats");
    gsos_check->add_option("rules", gsos_path)->required();
    gsos_check->add_flag("--quiescence", quiescence, "check quiescent consistency instead of the iocos-format");

    auto* gsos_lts = app.add_subcommand("gsos-lts", "derive the transition system of a closed term");
    gsos_lts->add_option("rules", gsos_path)->required();
    gsos_lts->add_option("base", base_path)->required();
    gsos_lts->add_option("term", term_text)->required();
    gsos_lts->add_option("--cap", cap, "closed-term cap");

    auto* decomp = app.add_subcommand("decompose", "modally decompose a formula over a term");
    decomp->add_option("rules", gsos_path)->required();
    decomp->add_option("term", term_text)->required();
    decomp->add_option("formula", formula_text)->required();
    decomp->add_option("--base", base_path, "base LTS for --sub verification");
    decomp->add_option("--sub", sub_text, "substitution var=state,var=state");
    decomp->add_option("--cap", cap, "choice/product cap");

    CLI11_PARSE(app, argc, argv);

    Output out;
    out.as_json = format == "json";
    int rc = exit_error;
    try {
        if (validate->parsed()) rc = cmd_validate(lts_path, close_quiescence, out);
        else if (iocos->parsed()) {
            Lts lts = load(lts_path, close_quiescence, strict);
            rc = cmd_iocos(lts, state_i, state_s, equivalence, out);
        } else if (ioco->parsed()) {
            Lts lts = load(lts_path, close_quiescence, strict);
            rc = cmd_ioco(lts, state_i, state_s, out);
        } else if (bridge->parsed()) {
            Lts lts = load(lts_path, close_quiescence, strict);
            rc = cmd_bridge(lts, state_i, state_s, depth, out);
        } else if (mc->parsed()) {
            Lts lts = load(lts_path, close_quiescence, strict);
            rc = cmd_mc(lts, state_p, formula_text, decl_path, root_var, out);
        } else if (charform->parsed()) {
            Lts lts = load(lts_path, close_quiescence, strict);
            rc = cmd_charform(lts, state_p, out);
        } else if (distinguish->parsed()) {
            Lts lts = load(lts_path, close_quiescence, strict);
            rc = cmd_distinguish(lts, state_i, state_s, logic_name, out);
        } else if (gsos_check->parsed()) {
            rc = cmd_gsos_check(load_gsos(gsos_path), quiescence, out);
        } else if (gsos_lts->parsed()) {
            Lts base = load(base_path, false, false);
            return cmd_gsos_lts(load_gsos(gsos_path), base, term_text, cap, out);
        } else if (decomp->parsed()) {
            rc = cmd_decompose(load_gsos(gsos_path), term_text, formula_text, base_path, sub_text, cap, out);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_error;
    }
    out.flush();
    return rc;
}
