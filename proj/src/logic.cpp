#include "ioconf/logic.hpp"

#include <algorithm>
#include <sstream>

namespace ioconf {

bool Declaration::binds(const std::string& var) const {
    for (const auto& [name, body] : equations)
        if (name == var) return true;
    return false;
}

const FormulaPtr& Declaration::body(const std::string& var) const {
    for (const auto& [name, body] : equations)
        if (name == var) return body;
    throw std::invalid_argument("undeclared variable '" + var + "'");
}

void Declaration::check_closed() const {
    for (const auto& [name, body] : equations)
        for (const auto& v : free_vars(body))
            if (!binds(v))
                throw std::invalid_argument("unbound variable '" + v + "' in equation for '" + name + "'");
}

bool satisfies(const Lts& lts, StateId p, const FormulaPtr& phi, const Environment& env) {
    switch (phi->kind()) {
        case FormulaKind::truth: return true;
        case FormulaKind::falsity: return false;
        case FormulaKind::conj:
            for (const auto& c : phi->children())
                if (!satisfies(lts, p, c, env)) return false;
            return true;
        case FormulaKind::disj:
            for (const auto& c : phi->children())
                if (satisfies(lts, p, c, env)) return true;
            return false;
        case FormulaKind::dia:
            for (StateId q : lts.successors(p, phi->action()))
                if (satisfies(lts, q, phi->child(), env)) return true;
            return false;
        case FormulaKind::box:
            for (StateId q : lts.successors(p, phi->action()))
                if (!satisfies(lts, q, phi->child(), env)) return false;
            return true;
        case FormulaKind::nfdia: {
            const auto& succ = lts.successors(p, phi->action());
            if (succ.empty()) return true;
            for (StateId q : succ)
                if (satisfies(lts, q, phi->child(), env)) return true;
            return false;
        }
        case FormulaKind::fbox: {
            const auto& succ = lts.successors(p, phi->action());
            if (succ.empty()) return false;
            for (StateId q : succ)
                if (!satisfies(lts, q, phi->child(), env)) return false;
            return true;
        }
        case FormulaKind::force_trace: {
            StateSet derivatives = after(lts, p, phi->trace());
            if (derivatives.empty()) return false;
            for (StateId q : derivatives)
                if (!satisfies(lts, q, phi->child(), env)) return false;
            return true;
        }
        case FormulaKind::box_trace: {
            for (StateId q : after(lts, p, phi->trace()))
                if (!satisfies(lts, q, phi->child(), env)) return false;
            return true;
        }
        case FormulaKind::var: {
            auto it = env.find(phi->var());
            if (it == env.end()) throw std::invalid_argument("unbound variable '" + phi->var() + "'");
            return it->second.count(p) != 0;
        }
    }
    return false;
}

Environment eval_declaration(const Lts& lts, const Declaration& decl) {
    decl.check_closed();
    StateSet top;
    for (StateId s = 0; s < lts.state_count(); ++s) top.insert(s);

    Environment env;
    for (const auto& [name, body] : decl.equations)
        env[name] = decl.polarity == Polarity::greatest ? top : StateSet{};

    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& [name, body] : decl.equations) {
            StateSet next;
            for (StateId s = 0; s < lts.state_count(); ++s)
                if (satisfies(lts, s, body, env)) next.insert(s);
            if (next != env[name]) {
                env[name] = std::move(next);
                changed = true;
            }
        }
    }
    return env;
}

bool satisfies_declared(const Lts& lts, StateId p, const Declaration& decl, const std::string& root) {
    Environment env = eval_declaration(lts, decl);
    auto it = env.find(root);
    if (it == env.end()) throw std::invalid_argument("undeclared variable '" + root + "'");
    return it->second.count(p) != 0;
}

namespace {

std::string char_var(const Lts& lts, StateId q) { return "X_" + lts.name_of(q); }

} // namespace

CharacteristicFormula characteristic_formula(const Lts& lts, StateId q) {
    if (q >= lts.state_count()) throw std::invalid_argument("unknown state");
    CharacteristicFormula result;
    result.declaration.polarity = Polarity::greatest;
    result.root = char_var(lts, q);

    for (StateId s : lts.reachable(q)) {
        std::vector<FormulaPtr> conjuncts;
        for (const auto& a : lts.ins(s)) {
            std::vector<FormulaPtr> branches;
            for (StateId t : lts.successors(s, a)) branches.push_back(f_var(char_var(lts, t)));
            conjuncts.push_back(f_fbox(a, f_or(std::move(branches))));
        }
        for (const auto& a : lts.alphabet().outputs()) {
            std::vector<FormulaPtr> branches;
            for (StateId t : lts.successors(s, a)) branches.push_back(f_var(char_var(lts, t)));
            conjuncts.push_back(f_box(a, f_or(std::move(branches))));
        }
        result.declaration.equations.emplace_back(char_var(lts, s), f_and(std::move(conjuncts)));
    }
    std::sort(result.declaration.equations.begin(), result.declaration.equations.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return result;
}

Declaration parse_declaration(const std::string& text) {
    std::istringstream is(text);
    std::string head;
    is >> head;
    Declaration decl;
    if (head == "max")
        decl.polarity = Polarity::greatest;
    else if (head == "min")
        decl.polarity = Polarity::least;
    else
        throw ParseError("declaration must start with 'max' or 'min'");

    std::string rest;
    std::getline(is, rest, '\0');
    std::size_t pos = 0;
    while (true) {
        while (pos < rest.size() && std::isspace(static_cast<unsigned char>(rest[pos]))) ++pos;
        if (pos >= rest.size()) break;
        auto eq = rest.find('=', pos);
        if (eq == std::string::npos) throw ParseError("expected '=' in declaration equation");
        std::string name = rest.substr(pos, eq - pos);
        name.erase(std::remove_if(name.begin(), name.end(),
                                  [](unsigned char c) { return std::isspace(c); }),
                   name.end());
        if (name.empty()) throw ParseError("missing variable name in declaration");
        auto semi = rest.find(';', eq);
        if (semi == std::string::npos) throw ParseError("missing ';' after equation for '" + name + "'");
        decl.equations.emplace_back(name, parse_formula(rest.substr(eq + 1, semi - eq - 1)));
        pos = semi + 1;
    }
    if (decl.equations.empty()) throw ParseError("declaration has no equations");
    decl.check_closed();
    return decl;
}

std::string print_declaration(const Declaration& decl) {
    std::string out = decl.polarity == Polarity::greatest ? "max" : "min";
    for (const auto& [name, body] : decl.equations)
        out += " " + name + " = " + print_formula(body) + ";";
    return out;
}

} // namespace ioconf
