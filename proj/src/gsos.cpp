#include "ioconf/gsos.hpp"

#include "ioconf/conformance.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace ioconf {

// ---------------------------------------------------------------------------
// Terms
// ---------------------------------------------------------------------------

bool Term::is_closed() const {
    if (kind == Kind::variable) return false;
    for (const auto& c : children)
        if (!c.is_closed()) return false;
    return true;
}

std::vector<std::string> Term::vars() const {
    std::vector<std::string> out;
    auto walk = [&](const Term& t, auto&& self) -> void {
        if (t.kind == Kind::variable) {
            if (std::find(out.begin(), out.end(), t.name) == out.end()) out.push_back(t.name);
        }
        for (const auto& c : t.children) self(c, self);
    };
    walk(*this, walk);
    return out;
}

bool Term::mentions_var(const std::string& v) const {
    if (kind == Kind::variable && name == v) return true;
    for (const auto& c : children)
        if (c.mentions_var(v)) return true;
    return false;
}

bool operator==(const Term& a, const Term& b) {
    return a.kind == b.kind && a.name == b.name && a.children == b.children;
}

std::string print_term(const Term& t) {
    switch (t.kind) {
        case Term::Kind::variable: return t.name;
        case Term::Kind::state: return "@" + t.name;
        case Term::Kind::op: {
            if (t.children.empty()) return t.name;
            std::string out = t.name + "(";
            for (std::size_t i = 0; i < t.children.size(); ++i) {
                if (i > 0) out += ',';
                out += print_term(t.children[i]);
            }
            return out + ")";
        }
    }
    return "?";
}

int Signature::arity_of(const std::string& op) const {
    auto it = arity.find(op);
    if (it == arity.end()) throw std::invalid_argument("unknown operator '" + op + "'");
    return it->second;
}

void Signature::declare(const std::string& op, int n) {
    if (n < 0) throw std::invalid_argument("negative arity for '" + op + "'");
    auto [it, inserted] = arity.emplace(op, n);
    if (!inserted) throw std::invalid_argument("operator '" + op + "' declared twice");
}

namespace {

struct TermParser {
    const std::string& text;
    const Signature& sig;
    std::size_t pos = 0;

    static bool ident_char(char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' ||
               c == '\'';
    }

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    std::string ident() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() && ident_char(text[pos])) ++pos;
        if (pos == start) throw ParseError("expected a name in term at offset " + std::to_string(pos));
        return text.substr(start, pos - start);
    }

    Term parse() {
        skip_ws();
        if (pos < text.size() && text[pos] == '@') {
            ++pos;
            return Term::state(ident());
        }
        std::string name = ident();
        skip_ws();
        if (sig.has(name)) {
            std::vector<Term> children;
            if (pos < text.size() && text[pos] == '(') {
                ++pos;
                skip_ws();
                if (pos < text.size() && text[pos] == ')') {
                    ++pos;
                } else {
                    while (true) {
                        children.push_back(parse());
                        skip_ws();
                        if (pos < text.size() && text[pos] == ',') { ++pos; continue; }
                        if (pos < text.size() && text[pos] == ')') { ++pos; break; }
                        throw ParseError("expected ',' or ')' in term");
                    }
                }
            }
            if (static_cast<int>(children.size()) != sig.arity_of(name))
                throw ParseError("operator '" + name + "' expects " + std::to_string(sig.arity_of(name)) +
                                 " arguments, got " + std::to_string(children.size()));
            return Term::op(name, std::move(children));
        }
        return Term::variable(name);
    }
};

} // namespace

Term parse_term(const std::string& text, const Signature& sig) {
    TermParser parser{text, sig};
    Term t = parser.parse();
    parser.skip_ws();
    if (parser.pos != text.size()) throw ParseError("trailing input after term '" + text + "'");
    return t;
}

// ---------------------------------------------------------------------------
// Rules
// ---------------------------------------------------------------------------

std::set<Action> GsosRule::positive_trigger(const std::string& var) const {
    std::set<Action> out;
    for (const auto& p : premises)
        if (p.positive && p.source == var) out.insert(p.action);
    return out;
}

std::set<Action> GsosRule::negative_trigger(const std::string& var) const {
    std::set<Action> out;
    for (const auto& p : premises)
        if (!p.positive && p.source == var) out.insert(p.action);
    return out;
}

std::string print_rule(const GsosRule& rule) {
    std::string out;
    for (std::size_t i = 0; i < rule.premises.size(); ++i) {
        const auto& p = rule.premises[i];
        if (i > 0) out += ", ";
        out += p.source + (p.positive ? " -" + p.action.text() + "-> " + p.target
                                      : " -/" + p.action.text() + "->");
    }
    if (!out.empty()) out += ' ';
    Term source = Term::op(rule.op, {});
    for (const auto& v : rule.source_vars) source.children.push_back(Term::variable(v));
    out += "|- " + print_term(source) + " -" + rule.conclusion.text() + "-> " + print_term(rule.target);
    return out;
}

std::vector<std::size_t> GsosLanguage::rules_for(const std::string& op) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < rules.size(); ++i)
        if (rules[i].op == op) out.push_back(i);
    return out;
}

namespace {

std::string strip_spaces(const std::string& s) {
    std::string out;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) out += c;
    return out;
}

// Splits `lhs-act->rhs` (whitespace already stripped). rhs may be empty for
// negative premises written `x -/a?->`.
struct ArrowParts {
    std::string lhs;
    std::string action;
    bool negative = false;
    std::string rhs;
};

ArrowParts split_arrow(const std::string& s, int lineno) {
    auto dash = s.find('-');
    if (dash == std::string::npos) throw ParseError("expected '-act->' arrow in '" + s + "'", lineno);
    std::size_t act_start = dash + 1;
    bool negative = act_start < s.size() && s[act_start] == '/';
    if (negative) ++act_start;
    auto arrow_end = s.find("->", act_start);
    if (arrow_end == std::string::npos) throw ParseError("malformed arrow in '" + s + "'", lineno);
    ArrowParts parts;
    parts.lhs = s.substr(0, dash);
    parts.action = s.substr(act_start, arrow_end - act_start);
    parts.negative = negative;
    parts.rhs = s.substr(arrow_end + 2);
    if (parts.action.empty()) throw ParseError("missing action in '" + s + "'", lineno);
    return parts;
}

bool plain_ident(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!TermParser::ident_char(c)) return false;
    return true;
}

GsosRule parse_rule_line(const std::string& line, const Signature& sig, int lineno) {
    auto turnstile = line.find("|-");
    std::string left = line.substr(0, turnstile);
    std::string right = line.substr(turnstile + 2);

    GsosRule rule;

    std::string conclusion = strip_spaces(right);
    ArrowParts cparts = split_arrow(conclusion, lineno);
    Term source = parse_term(cparts.lhs, sig);
    if (source.kind != Term::Kind::op)
        throw ParseError("rule source must be an operator application", lineno);
    rule.op = source.name;
    std::set<std::string> source_set;
    for (const auto& c : source.children) {
        if (c.kind != Term::Kind::variable)
            throw ParseError("rule source arguments must be distinct variables", lineno);
        if (!source_set.insert(c.name).second)
            throw ParseError("repeated variable '" + c.name + "' in rule source", lineno);
        rule.source_vars.push_back(c.name);
    }
    rule.conclusion = parse_action(cparts.action);
    if (cparts.rhs.empty()) throw ParseError("missing rule target", lineno);
    rule.target = parse_term(cparts.rhs, sig);

    std::set<std::string> bound = source_set;
    std::istringstream premise_stream(left);
    std::string premise_text;
    while (std::getline(premise_stream, premise_text, ',')) {
        std::string stripped = strip_spaces(premise_text);
        if (stripped.empty()) continue;
        ArrowParts pparts = split_arrow(stripped, lineno);
        if (!plain_ident(pparts.lhs))
            throw ParseError("premise source must be a variable in '" + stripped + "'", lineno);
        if (!source_set.count(pparts.lhs))
            throw ParseError("premise source '" + pparts.lhs + "' is not a source variable", lineno);
        Premise premise;
        premise.source = pparts.lhs;
        premise.action = parse_action(pparts.action);
        premise.positive = !pparts.negative;
        if (premise.positive) {
            if (!plain_ident(pparts.rhs))
                throw ParseError("malformed premise target in '" + stripped + "'", lineno);
            if (!bound.insert(pparts.rhs).second)
                throw ParseError("repeated variable '" + pparts.rhs + "' in premises", lineno);
            premise.target = pparts.rhs;
        } else if (!pparts.rhs.empty()) {
            throw ParseError("negative premise cannot have a target in '" + stripped + "'", lineno);
        }
        rule.premises.push_back(premise);
    }

    for (const auto& v : rule.target.vars())
        if (!bound.count(v))
            throw ParseError("target variable '" + v + "' is not bound by the rule", lineno);
    return rule;
}

void infer_actions(const GsosLanguage& lang, Alphabet& alphabet) {
    auto note = [&](const Action& a) {
        if (alphabet.has(a)) return;
        if (a.is_input())
            alphabet.add_input(a.name);
        else
            alphabet.add_output(a.name);
    };
    for (const auto& r : lang.rules) {
        note(r.conclusion);
        for (const auto& p : r.premises) note(p.action);
    }
}

} // namespace

GsosLanguage parse_gsos(const std::string& text) {
    GsosLanguage lang;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    std::vector<std::pair<std::string, int>> rule_lines;
    while (std::getline(is, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;
        if (line.find("|-") != std::string::npos) {
            rule_lines.emplace_back(line, lineno);
        } else if (first == "sig") {
            std::string entry;
            while (ls >> entry) {
                auto slash = entry.find('/');
                if (slash == std::string::npos)
                    throw ParseError("sig entries look like name/arity, got '" + entry + "'", lineno);
                try {
                    lang.signature.declare(entry.substr(0, slash), std::stoi(entry.substr(slash + 1)));
                } catch (const std::invalid_argument& e) {
                    throw ParseError(e.what(), lineno);
                }
            }
        } else if (first == "inputs") {
            std::string name;
            while (ls >> name) lang.alphabet.add_input(name);
        } else if (first == "outputs") {
            std::string name;
            while (ls >> name) lang.alphabet.add_output(name);
        } else {
            throw ParseError("unknown directive '" + first + "'", lineno);
        }
    }
    for (const auto& [rl, ln] : rule_lines) lang.rules.push_back(parse_rule_line(rl, lang.signature, ln));

    // All rules for one operator must share the source tuple.
    std::map<std::string, std::vector<std::string>> sources;
    for (const auto& r : lang.rules) {
        auto [it, inserted] = sources.emplace(r.op, r.source_vars);
        if (!inserted && it->second != r.source_vars)
            throw ParseError("rules for '" + r.op + "' must share their source variables");
    }
    infer_actions(lang, lang.alphabet);
    return lang;
}

GsosLanguage load_gsos(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_gsos(buf.str());
}

// ---------------------------------------------------------------------------
// Derivation
// ---------------------------------------------------------------------------

namespace {

Term substitute(const Term& t, const std::map<std::string, Term>& binding) {
    switch (t.kind) {
        case Term::Kind::variable: {
            auto it = binding.find(t.name);
            if (it == binding.end()) throw std::logic_error("unbound variable '" + t.name + "'");
            return it->second;
        }
        case Term::Kind::state: return t;
        case Term::Kind::op: {
            Term out = Term::op(t.name);
            for (const auto& c : t.children) out.children.push_back(substitute(c, binding));
            return out;
        }
    }
    return t;
}

class Derivation {
public:
    Derivation(const GsosLanguage& lang, const Lts& base, std::size_t cap)
        : lang_(lang), base_(base), cap_(cap) {
        for (const auto& r : lang.rules) {
            check_action(r.conclusion);
            for (const auto& p : r.premises) check_action(p.action);
        }
    }

    const std::vector<std::pair<Action, std::string>>& transitions_of(const Term& term) {
        return transitions_of(print_term(term), term);
    }

    Lts explore(const std::vector<Term>& roots) {
        Lts::Builder builder;
        builder.alphabet(base_.alphabet());
        std::set<std::string> states;
        std::vector<std::pair<std::string, Term>> todo;
        for (const auto& root : roots) {
            if (!root.is_closed()) throw std::invalid_argument("open term '" + print_term(root) + "'");
            std::string name = print_term(root);
            if (states.insert(name).second) todo.push_back({name, root});
        }
        std::vector<std::tuple<std::string, Action, std::string>> edges;
        while (!todo.empty()) {
            auto [name, term] = std::move(todo.back());
            todo.pop_back();
            for (const auto& [act, dst] : transitions_of(name, term)) {
                edges.emplace_back(name, act, dst);
                if (states.insert(dst).second) {
                    if (states.size() > cap_)
                        throw std::length_error("state cap of " + std::to_string(cap_) +
                                                " exceeded while deriving");
                    todo.push_back({dst, terms_.at(dst)});
                }
            }
        }
        for (const auto& s : states) builder.state(s);
        for (const auto& [src, act, dst] : edges) builder.transition(src, act, dst);
        if (roots.size() == 1) builder.initial(print_term(roots[0]));
        return builder.build();
    }

private:
    void check_action(const Action& a) {
        if (!base_.alphabet().has(a))
            throw std::invalid_argument("rule action '" + a.text() + "' is not in the base alphabet");
    }

    const std::vector<std::pair<Action, std::string>>& transitions_of(const std::string& name,
                                                                      const Term& term) {
        auto it = memo_.find(name);
        if (it != memo_.end()) return it->second;
        terms_.emplace(name, term);
        if (memo_.size() >= cap_)
            throw std::length_error("state cap of " + std::to_string(cap_) + " exceeded while deriving");
        std::vector<std::pair<Action, std::string>> result;
        if (term.kind == Term::Kind::state) {
            StateId s = base_.state(term.name);
            for (const auto& t : base_.transitions())
                if (t.src == s) result.emplace_back(t.act, print_and_remember(Term::state(base_.name_of(t.dst))));
        } else if (term.kind == Term::Kind::op) {
            for (std::size_t ri : lang_.rules_for(term.name)) apply_rule(lang_.rules[ri], term, result);
        } else {
            throw std::invalid_argument("open term '" + name + "'");
        }
        std::sort(result.begin(), result.end());
        result.erase(std::unique(result.begin(), result.end()), result.end());
        auto [slot, inserted] = memo_.emplace(name, std::move(result));
        return slot->second;
    }

    void apply_rule(const GsosRule& rule, const Term& term,
                    std::vector<std::pair<Action, std::string>>& out) {
        // Premises talk about direct arguments only, so argument transition
        // sets are already well defined when we get here.
        std::map<std::string, Term> binding;
        for (std::size_t i = 0; i < rule.source_vars.size(); ++i)
            binding[rule.source_vars[i]] = term.children[i];

        for (const auto& p : rule.premises) {
            if (p.positive) continue;
            if (has_transition(binding.at(p.source), p.action)) return;
        }

        std::vector<const Premise*> positives;
        for (const auto& p : rule.premises)
            if (p.positive) positives.push_back(&p);

        std::vector<std::vector<Term>> choices(positives.size());
        for (std::size_t k = 0; k < positives.size(); ++k) {
            for (const auto& [act, dst] : transitions_of(binding.at(positives[k]->source)))
                if (act == positives[k]->action) choices[k].push_back(terms_.at(dst));
            if (choices[k].empty()) return;
        }

        std::vector<std::size_t> pick(positives.size(), 0);
        while (true) {
            for (std::size_t k = 0; k < positives.size(); ++k)
                binding[positives[k]->target] = choices[k][pick[k]];
            out.emplace_back(rule.conclusion, print_and_remember(substitute(rule.target, binding)));
            std::size_t k = 0;
            for (; k < positives.size(); ++k) {
                if (++pick[k] < choices[k].size()) break;
                pick[k] = 0;
            }
            if (k == positives.size()) break;
        }
    }

    bool has_transition(const Term& term, const Action& a) {
        for (const auto& [act, dst] : transitions_of(term))
            if (act == a) return true;
        return false;
    }

    std::string print_and_remember(const Term& t) {
        std::string name = print_term(t);
        terms_.emplace(name, t);
        return name;
    }

    const GsosLanguage& lang_;
    const Lts& base_;
    std::size_t cap_;
    std::map<std::string, std::vector<std::pair<Action, std::string>>> memo_;
    std::map<std::string, Term> terms_;
};

} // namespace

Lts derive_lts(const GsosLanguage& lang, const Lts& base, const std::vector<Term>& roots,
               std::size_t cap) {
    if (cap < 1) throw std::invalid_argument("cap must be at least 1");
    Derivation derivation(lang, base, cap);
    return derivation.explore(roots);
}

Lts derive_lts(const GsosLanguage& lang, const Lts& base, const Term& root, std::size_t cap) {
    return derive_lts(lang, base, std::vector<Term>{root}, cap);
}

// ---------------------------------------------------------------------------
// iocos-format check
// ---------------------------------------------------------------------------

namespace {

// Matches the target of `candidate` against `wanted` (the target of r'),
// mapping candidate-bound variables bijectively onto r'-bound variables.
// Source variables are shared across rules and must match themselves.
bool unify_targets(const Term& cand, const Term& wanted, const std::set<std::string>& source_vars,
                   std::map<std::string, std::string>& renaming, std::set<std::string>& used) {
    if (cand.kind == Term::Kind::variable) {
        if (source_vars.count(cand.name))
            return wanted.kind == Term::Kind::variable && wanted.name == cand.name;
        if (wanted.kind != Term::Kind::variable || source_vars.count(wanted.name) != 0) return false;
        auto it = renaming.find(cand.name);
        if (it != renaming.end()) return it->second == wanted.name;
        if (!used.insert(wanted.name).second) return false;   // keep the renaming injective
        renaming.emplace(cand.name, wanted.name);
        return true;
    }
    if (cand.kind != wanted.kind || cand.name != wanted.name ||
        cand.children.size() != wanted.children.size())
        return false;
    for (std::size_t i = 0; i < cand.children.size(); ++i)
        if (!unify_targets(cand.children[i], wanted.children[i], source_vars, renaming, used))
            return false;
    return true;
}

// Returns 'p' when the candidate satisfies 2(a)-2(c) against (r, r'),
// otherwise the first failing sub-clause.
char candidate_verdict(const GsosRule& r, const GsosRule& rp, const GsosRule& cand,
                       const std::map<std::string, std::string>& renaming) {
    for (const auto& x : r.source_vars) {
        auto cpos = cand.positive_trigger(x);
        auto rpos = r.positive_trigger(x);
        if (!std::includes(rpos.begin(), rpos.end(), cpos.begin(), cpos.end())) return 'a';
    }
    for (const auto& x : r.source_vars) {
        auto cneg = cand.negative_trigger(x);
        auto rneg = r.negative_trigger(x);
        if (!std::includes(rneg.begin(), rneg.end(), cneg.begin(), cneg.end())) return 'b';
    }
    for (const auto& p : cand.premises) {
        if (!p.positive || !p.action.is_input()) continue;
        if (!cand.target.mentions_var(p.target)) continue;
        std::string wanted_target = renaming.at(p.target);
        bool found = false;
        for (const auto& q : rp.premises)
            if (q.positive && q.source == p.source && q.action == p.action && q.target == wanted_target) {
                found = true;
                break;
            }
        if (!found) return 'c';
    }
    return 'p';
}

} // namespace

IocosFormatReport check_iocos_format(const GsosLanguage& lang) {
    IocosFormatReport report;
    for (std::size_t i = 0; i < lang.rules.size(); ++i) {
        const auto& r = lang.rules[i];
        for (const auto& p : r.premises) {
            if (r.emits_input()) {
                if (!p.positive && !p.action.is_output())
                    report.clause1.push_back(
                        {i, "input-emitting rule has negative premise on input '" + p.action.text() + "'"});
                if (p.positive && !p.action.is_input())
                    report.clause1.push_back(
                        {i, "input-emitting rule has positive premise on output '" + p.action.text() + "'"});
            } else {
                if (!p.positive && !p.action.is_input())
                    report.clause3.push_back(
                        {i, "output-emitting rule has negative premise on output '" + p.action.text() + "'"});
                if (p.positive && !p.action.is_output())
                    report.clause3.push_back(
                        {i, "output-emitting rule has positive premise on input '" + p.action.text() + "'"});
            }
        }
    }

    std::set<std::string> ops;
    for (const auto& r : lang.rules) ops.insert(r.op);
    for (const auto& op : ops) {
        auto indices = lang.rules_for(op);
        std::set<std::string> source_vars;
        if (!indices.empty())
            source_vars.insert(lang.rules[indices[0]].source_vars.begin(),
                               lang.rules[indices[0]].source_vars.end());
        std::set<Action> input_labels;
        for (auto ri : indices)
            if (lang.rules[ri].emits_input()) input_labels.insert(lang.rules[ri].conclusion);

        for (const auto& a : input_labels) {
            std::vector<std::size_t> emitting;
            for (auto ri : indices)
                if (lang.rules[ri].conclusion == a) emitting.push_back(ri);
            for (auto r_idx : emitting) {
                for (auto rp_idx : emitting) {
                    const auto& r = lang.rules[r_idx];
                    const auto& rp = lang.rules[rp_idx];
                    char best = 0;
                    bool ok = false;
                    for (auto cand_idx : emitting) {
                        std::map<std::string, std::string> renaming;
                        std::set<std::string> used;
                        if (!unify_targets(lang.rules[cand_idx].target, rp.target, source_vars, renaming,
                                           used))
                            continue;
                        char verdict = candidate_verdict(r, rp, lang.rules[cand_idx], renaming);
                        if (verdict == 'p') { ok = true; break; }
                        best = std::max(best, verdict);
                    }
                    if (!ok) report.clause2.push_back({r_idx, rp_idx, best == 0 ? 'a' : best});
                }
            }
        }
    }
    return report;
}

// ---------------------------------------------------------------------------
// Quiescent consistency
// ---------------------------------------------------------------------------

bool contradicts(const std::vector<Premise>& h1, const std::vector<Premise>& h2,
                 const Alphabet& alphabet) {
    auto one_way = [](const std::vector<Premise>& a, const std::vector<Premise>& b) {
        for (const auto& p : a) {
            for (const auto& q : b) {
                if (p.source != q.source) continue;
                // a premise and its negation
                if (p.positive != q.positive && p.action == q.action) return true;
                // an output transition against quiescence
                if (p.positive && q.positive && p.action.is_output() && !p.action.is_delta() &&
                    q.action.is_delta())
                    return true;
            }
        }
        return false;
    };
    if (one_way(h1, h2) || one_way(h2, h1)) return true;

    // jointly refusing every output
    std::set<std::string> vars;
    for (const auto& p : h1) vars.insert(p.source);
    const auto outputs = alphabet.outputs();
    for (const auto& x : vars) {
        std::set<Action> neg1, neg2;
        for (const auto& p : h1)
            if (!p.positive && p.source == x && p.action.is_output()) neg1.insert(p.action);
        for (const auto& p : h2)
            if (!p.positive && p.source == x && p.action.is_output()) neg2.insert(p.action);
        if (neg1.empty() || neg2.empty()) continue;
        std::set<Action> joint = neg1;
        joint.insert(neg2.begin(), neg2.end());
        if (joint.size() == outputs.size()) return true;
    }
    return false;
}

namespace {

// Premises normalized for containment-up-to-renaming: bound-variable names
// dropped, duplicates collapsed.
using PremiseShape = std::tuple<std::string, Action, bool>;

std::set<PremiseShape> premise_shapes(const std::vector<Premise>& premises) {
    std::set<PremiseShape> out;
    for (const auto& p : premises) out.insert({p.source, p.action, p.positive});
    return out;
}

bool target_is_source_tuple(const GsosRule& rule) {
    if (rule.target.kind != Term::Kind::op || rule.target.name != rule.op ||
        rule.target.children.size() != rule.source_vars.size())
        return false;
    for (std::size_t i = 0; i < rule.source_vars.size(); ++i) {
        const auto& c = rule.target.children[i];
        if (c.kind != Term::Kind::variable || c.name != rule.source_vars[i]) return false;
    }
    return true;
}

std::string shapes_text(const std::set<PremiseShape>& shapes, const std::string& op,
                        const std::vector<std::string>& source_vars) {
    std::string out;
    int fresh = 0;
    for (const auto& [src, act, pos] : shapes) {
        if (!out.empty()) out += ", ";
        out += pos ? src + " -" + act.text() + "-> y" + std::to_string(++fresh)
                   : src + " -/" + act.text() + "->";
    }
    if (!out.empty()) out += ' ';
    std::string tuple = op;
    if (!source_vars.empty()) {
        tuple += '(';
        for (std::size_t i = 0; i < source_vars.size(); ++i) {
            if (i > 0) tuple += ',';
            tuple += source_vars[i];
        }
        tuple += ')';
    }
    return out + "|- " + tuple + " -delta!-> " + tuple;
}

} // namespace

QuiescentConsistencyReport check_quiescent_consistent(const GsosLanguage& lang,
                                                      std::size_t selection_cap) {
    QuiescentConsistencyReport report;
    std::set<std::string> ops;
    for (const auto& r : lang.rules) ops.insert(r.op);

    for (const auto& op : ops) {
        auto indices = lang.rules_for(op);
        std::vector<std::size_t> delta_rules, output_rules;
        for (auto ri : indices) {
            const auto& r = lang.rules[ri];
            if (!r.emits_output()) continue;
            (r.conclusion.is_delta() ? delta_rules : output_rules).push_back(ri);
        }

        // [delta1]
        for (auto di : delta_rules) {
            const auto& d = lang.rules[di];
            for (auto oi : output_rules)
                if (!contradicts(d.premises, lang.rules[oi].premises, lang.alphabet))
                    report.delta1.push_back({di, oi, "delta rule is jointly satisfiable with this output rule"});
            bool shape_ok = d.target.kind == Term::Kind::op && d.target.name == op &&
                            d.target.children.size() == d.source_vars.size();
            if (shape_ok) {
                for (std::size_t i = 0; i < d.source_vars.size() && shape_ok; ++i) {
                    const auto& c = d.target.children[i];
                    if (c.kind != Term::Kind::variable) { shape_ok = false; break; }
                    if (c.name == d.source_vars[i]) continue;
                    bool via_delta = false;
                    for (const auto& p : d.premises)
                        if (p.positive && p.action.is_delta() && p.source == d.source_vars[i] &&
                            p.target == c.name)
                            via_delta = true;
                    if (!via_delta) shape_ok = false;
                }
            }
            if (!shape_ok)
                report.delta1.push_back(
                    {di, std::nullopt, "delta rule target is not the source tuple up to delta premises"});
        }

        // [delta2]: every non-contradictory selection of negated premises of
        // the non-delta output rules must have its delta rule present.
        std::size_t selections = 1;
        bool overflow = false;
        for (auto oi : output_rules) {
            std::size_t n = lang.rules[oi].premises.size();
            if (n == 0) { selections = 0; break; }   // nothing to negate, no rule required
            if (selections > selection_cap / n) { overflow = true; break; }
            selections *= n;
        }
        if (overflow) {
            report.inconclusive = true;
            continue;
        }
        if (selections == 0) continue;

        std::set<std::set<PremiseShape>> required;
        std::vector<std::size_t> pick(output_rules.size(), 0);
        while (true) {
            std::vector<Premise> negated;
            for (std::size_t k = 0; k < output_rules.size(); ++k) {
                const auto& premise = lang.rules[output_rules[k]].premises[pick[k]];
                Premise l;
                l.source = premise.source;
                l.action = premise.action;
                l.positive = !premise.positive;
                if (l.positive) l.target = "y" + std::to_string(k + 1);
                negated.push_back(l);
            }
            if (!contradicts(negated, negated, lang.alphabet)) {
                auto shapes = premise_shapes(negated);
                bool present = false;
                for (auto di : delta_rules) {
                    const auto& d = lang.rules[di];
                    if (target_is_source_tuple(d) && premise_shapes(d.premises) == shapes) {
                        present = true;
                        break;
                    }
                }
                if (!present) required.insert(shapes);
            }
            if (output_rules.empty()) break;
            std::size_t k = 0;
            for (; k < output_rules.size(); ++k) {
                if (++pick[k] < lang.rules[output_rules[k]].premises.size()) break;
                pick[k] = 0;
            }
            if (k == output_rules.size()) break;
        }
        const auto& source_vars = lang.rules[indices[0]].source_vars;
        for (const auto& shapes : required)
            report.delta2.push_back({op, shapes_text(shapes, op, source_vars)});
    }
    return report;
}

bool quiescence_property_probe(const GsosLanguage& lang, const Lts& base, const std::string& op,
                               const std::vector<Term>& args, std::size_t cap) {
    Term root = Term::op(op, args);
    if (static_cast<int>(args.size()) != lang.signature.arity_of(op))
        throw std::invalid_argument("operator '" + op + "' arity mismatch");
    Lts derived = derive_lts(lang, base, root, cap);
    StateId r = derived.state(print_term(root));

    bool has_other_output = false;
    for (const auto& a : derived.outs(r))
        if (!a.is_delta()) has_other_output = true;
    const auto& delta_succ = derived.successors(r, delta_action());
    for (StateId d : delta_succ)
        if (d != r) return false;
    bool has_delta_loop = !delta_succ.empty();
    return has_delta_loop == !has_other_output;
}

// ---------------------------------------------------------------------------
// Built-in operators
// ---------------------------------------------------------------------------

namespace {

GsosRule make_rule(std::string op, std::vector<std::string> sources, std::vector<Premise> premises,
                   Action conclusion, Term target) {
    GsosRule r;
    r.op = std::move(op);
    r.source_vars = std::move(sources);
    r.premises = std::move(premises);
    r.conclusion = conclusion;
    r.target = std::move(target);
    return r;
}

} // namespace

GsosLanguage builtin_merge(int n, const Alphabet& alphabet) {
    if (n < 1) throw std::invalid_argument("merge needs at least one argument");
    GsosLanguage lang;
    lang.alphabet = alphabet;
    std::string op = "and" + std::to_string(n);
    lang.signature.declare(op, n);
    std::vector<std::string> xs, ys;
    for (int i = 1; i <= n; ++i) {
        xs.push_back("x" + std::to_string(i));
        ys.push_back("y" + std::to_string(i));
    }
    for (const auto& a : alphabet.all()) {
        std::vector<Premise> premises;
        Term target = Term::op(op);
        for (int i = 0; i < n; ++i) {
            premises.push_back({xs[i], a, true, ys[i]});
            target.children.push_back(Term::variable(ys[i]));
        }
        lang.rules.push_back(make_rule(op, xs, std::move(premises), a, std::move(target)));
    }
    return lang;
}

GsosLanguage builtin_choice(const Alphabet& alphabet) {
    GsosLanguage lang;
    lang.alphabet = alphabet;
    lang.signature.declare("choice", 2);
    std::vector<std::string> xs{"x1", "x2"};
    for (const auto& a : alphabet.all()) {
        if (a.is_delta()) continue;
        lang.rules.push_back(make_rule("choice", xs, {{"x1", a, true, "y1"}}, a, Term::variable("y1")));
        lang.rules.push_back(make_rule("choice", xs, {{"x2", a, true, "y2"}}, a, Term::variable("y2")));
    }
    lang.rules.push_back(make_rule(
        "choice", xs, {{"x1", delta_action(), true, "y1"}, {"x2", delta_action(), true, "y2"}},
        delta_action(), Term::op("choice", {Term::variable("y1"), Term::variable("y2")})));
    return lang;
}

GsosLanguage builtin_interleave(const Alphabet& alphabet) {
    GsosLanguage lang;
    lang.alphabet = alphabet;
    lang.signature.declare("par", 2);
    std::vector<std::string> xs{"x1", "x2"};
    for (const auto& a : alphabet.all()) {
        if (a.is_delta()) continue;
        lang.rules.push_back(make_rule("par", xs, {{"x1", a, true, "y1"}}, a,
                                       Term::op("par", {Term::variable("y1"), Term::variable("x2")})));
        lang.rules.push_back(make_rule("par", xs, {{"x2", a, true, "y2"}}, a,
                                       Term::op("par", {Term::variable("x1"), Term::variable("y2")})));
    }
    return lang;
}

GsosLanguage builtin_relabel(const std::map<Action, Action>& map, const Alphabet& alphabet) {
    for (const auto& [from, to] : map) {
        if (from.kind != to.kind)
            throw std::invalid_argument("relabelling must preserve action kinds: '" + from.text() +
                                        "' -> '" + to.text() + "'");
        if (from.is_delta() && !to.is_delta())
            throw std::invalid_argument("relabelling must fix delta!");
        if (!alphabet.has(from) || !alphabet.has(to))
            throw std::invalid_argument("relabelling mentions unknown action");
    }
    GsosLanguage lang;
    lang.alphabet = alphabet;
    lang.signature.declare("relabel", 1);
    for (const auto& a : alphabet.all()) {
        auto it = map.find(a);
        Action to = it == map.end() ? a : it->second;
        lang.rules.push_back(make_rule("relabel", {"x"}, {{"x", a, true, "y"}}, to,
                                       Term::op("relabel", {Term::variable("y")})));
    }
    return lang;
}

GsosLanguage builtin_restrict(const std::set<Action>& forbidden, const Alphabet& alphabet) {
    for (const auto& a : forbidden) {
        if (a.is_delta()) throw std::invalid_argument("delta! cannot be restricted");
        if (!alphabet.has(a)) throw std::invalid_argument("restricting unknown action '" + a.text() + "'");
    }
    GsosLanguage lang;
    lang.alphabet = alphabet;
    lang.signature.declare("restrict", 1);
    for (const auto& a : alphabet.all()) {
        if (forbidden.count(a)) continue;
        lang.rules.push_back(make_rule("restrict", {"x"}, {{"x", a, true, "y"}}, a,
                                       Term::op("restrict", {Term::variable("y")})));
    }
    return lang;
}

PrecongruenceResult precongruence_probe(const GsosLanguage& lang, const Lts& base, const std::string& op,
                                        const std::vector<std::pair<StateId, StateId>>& pairs,
                                        std::size_t cap) {
    if (static_cast<int>(pairs.size()) != lang.signature.arity_of(op))
        throw std::invalid_argument("operator '" + op + "' arity mismatch");

    IocosResult base_fix = iocos_relation(base);
    for (const auto& [p, q] : pairs)
        if (!base_fix.holds(p, q))
            throw std::invalid_argument("precondition violated: '" + base.name_of(p) +
                                        "' does not conform to '" + base.name_of(q) + "'");

    Term left = Term::op(op), right = Term::op(op);
    for (const auto& [p, q] : pairs) {
        left.children.push_back(Term::state(base.name_of(p)));
        right.children.push_back(Term::state(base.name_of(q)));
    }
    Lts derived = derive_lts(lang, base, std::vector<Term>{left, right}, cap);
    StateId l = derived.state(print_term(left));
    StateId r = derived.state(print_term(right));

    IocosResult fix = iocos_relation(derived);
    PrecongruenceResult result;
    result.holds = fix.holds(l, r);
    if (!result.holds) result.counterexample = distinguishing_formula(derived, fix, l, r);
    return result;
}

} // namespace ioconf
