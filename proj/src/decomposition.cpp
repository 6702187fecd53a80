#include "ioconf/decomposition.hpp"

#include "ioconf/fragment.hpp"
#include "ioconf/logic.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace ioconf {

FormulaPtr map_entry(const DecompositionMap& map, const std::string& var) {
    auto it = map.find(var);
    return it == map.end() ? f_true() : it->second;
}

std::string print_decomposition_map(const DecompositionMap& map) {
    std::string out = "{";
    bool first = true;
    for (const auto& [var, phi] : map) {
        if (!first) out += ", ";
        first = false;
        out += var + ": " + print_formula(phi);
    }
    return out + "}";
}

namespace {

void require_flat(const Term& t, const char* what) {
    if (t.kind == Term::Kind::variable) return;
    if (t.kind != Term::Kind::op)
        throw std::invalid_argument(std::string(what) + " must be a variable or an operator term");
    std::set<std::string> seen;
    for (const auto& c : t.children) {
        if (c.kind != Term::Kind::variable)
            throw std::invalid_argument(std::string(what) + " '" + print_term(t) +
                                        "' is nested; only variables or flat operator terms are supported");
        if (!seen.insert(c.name).second)
            throw std::invalid_argument(std::string(what) + " '" + print_term(t) +
                                        "' repeats a variable");
    }
}

Term rename_term(const Term& t, const std::map<std::string, std::string>& renaming) {
    if (t.kind == Term::Kind::variable) {
        auto it = renaming.find(t.name);
        return Term::variable(it == renaming.end() ? t.name : it->second);
    }
    Term out = t;
    out.children.clear();
    for (const auto& c : t.children) out.children.push_back(rename_term(c, renaming));
    return out;
}

// Instantiates an operator rule at t = f(v1,...,vn): source variables are
// renamed to the vi, bound variables uniformly suffixed to stay distinct
// from them.
Ruloid instantiate(const GsosRule& rule, const Term& t, std::size_t rule_index) {
    std::map<std::string, std::string> renaming;
    std::set<std::string> taken;
    for (std::size_t i = 0; i < rule.source_vars.size(); ++i) {
        renaming[rule.source_vars[i]] = t.children[i].name;
        taken.insert(t.children[i].name);
    }
    std::string suffix = "_r" + std::to_string(rule_index);
    for (const auto& p : rule.premises)
        if (p.positive) {
            std::string fresh = p.target + suffix;
            while (taken.count(fresh)) fresh += "'";
            taken.insert(fresh);
            renaming[p.target] = fresh;
        }

    Ruloid ruloid;
    ruloid.action = rule.conclusion;
    for (const auto& p : rule.premises) {
        Premise q = p;
        q.source = renaming.at(p.source);
        if (p.positive) q.target = renaming.at(p.target);
        ruloid.premises.push_back(q);
    }
    ruloid.target = rename_term(rule.target, renaming);
    require_flat(ruloid.target, "ruloid target");
    return ruloid;
}

} // namespace

std::vector<Ruloid> rules_emitting(const GsosLanguage& lang, const Term& t, const Action& a) {
    require_flat(t, "decomposition source");
    std::vector<Ruloid> out;
    if (t.kind == Term::Kind::variable) {
        Ruloid var_ruloid;
        var_ruloid.for_variable = true;
        var_ruloid.action = a;
        var_ruloid.premises.push_back({t.name, a, true, t.name + "'"});
        var_ruloid.target = Term::variable(t.name + "'");
        out.push_back(std::move(var_ruloid));
        return out;
    }
    for (std::size_t ri : lang.rules_for(t.name))
        if (lang.rules[ri].conclusion == a) out.push_back(instantiate(lang.rules[ri], t, ri));
    return out;
}

FormulaPtr neg_premise(const Premise& gamma, const std::string& x) {
    if (gamma.source != x) return f_true();
    if (!gamma.positive) {
        if (!gamma.action.is_output())
            throw std::invalid_argument("negative premise on input '" + gamma.action.text() +
                                        "' has no failure formula in the diamond logic");
        return f_dia(gamma.action, f_true());
    }
    if (!gamma.action.is_input())
        throw std::invalid_argument("positive premise on output '" + gamma.action.text() +
                                    "' has no failure formula in the diamond logic");
    return f_nfdia(gamma.action, f_false());
}

std::vector<PremiseChoice> chi_functions(const std::vector<Ruloid>& ruloids, std::size_t cap) {
    std::size_t total = 1;
    for (const auto& r : ruloids) {
        if (r.premises.empty()) return {};
        if (total > cap / r.premises.size())
            throw std::length_error("premise-choice enumeration exceeds cap of " + std::to_string(cap));
        total *= r.premises.size();
    }
    std::vector<PremiseChoice> out;
    std::vector<std::size_t> pick(ruloids.size(), 0);
    while (true) {
        PremiseChoice eta;
        for (std::size_t k = 0; k < ruloids.size(); ++k) eta.picks.push_back(ruloids[k].premises[pick[k]]);
        out.push_back(std::move(eta));
        std::size_t k = 0;
        for (; k < ruloids.size(); ++k) {
            if (++pick[k] < ruloids[k].premises.size()) break;
            pick[k] = 0;
        }
        if (k == ruloids.size()) break;
    }
    return out;
}

DecompositionMap psi_of(const std::vector<Ruloid>& ruloids, const PremiseChoice& eta,
                        const std::vector<std::string>& vars) {
    DecompositionMap map;
    for (const auto& x : vars) {
        std::vector<FormulaPtr> parts;
        for (std::size_t k = 0; k < ruloids.size(); ++k) parts.push_back(neg_premise(eta.picks[k], x));
        FormulaPtr phi = f_and(std::move(parts));
        if (!phi->is_true()) map[x] = phi;
    }
    return map;
}

namespace {

void dedupe_maps(std::vector<DecompositionMap>& maps) {
    std::sort(maps.begin(), maps.end(), [](const DecompositionMap& a, const DecompositionMap& b) {
        return print_decomposition_map(a) < print_decomposition_map(b);
    });
    maps.erase(std::unique(maps.begin(), maps.end(),
                           [](const DecompositionMap& a, const DecompositionMap& b) {
                               return print_decomposition_map(a) == print_decomposition_map(b);
                           }),
               maps.end());
}

struct Decomposer {
    const GsosLanguage& lang;
    std::size_t cap;

    std::vector<DecompositionMap> run(const Term& t, const FormulaPtr& phi) {
        std::vector<DecompositionMap> out;
        switch (phi->kind()) {
            case FormulaKind::truth:
                out.push_back({});
                return out;
            case FormulaKind::falsity:
                return out;
            case FormulaKind::conj: {
                out.push_back({});
                for (const auto& part : phi->children()) {
                    auto partial = run(t, part);
                    std::vector<DecompositionMap> merged;
                    if (out.size() * std::max<std::size_t>(partial.size(), 1) > cap)
                        throw std::length_error("decomposition product exceeds cap");
                    for (const auto& left : out)
                        for (const auto& right : partial) {
                            DecompositionMap joined = left;
                            for (const auto& [var, f] : right)
                                joined[var] = f_and({map_entry(joined, var), f});
                            merged.push_back(std::move(joined));
                        }
                    out = std::move(merged);
                    if (out.empty()) return out;
                }
                dedupe_maps(out);
                return out;
            }
            case FormulaKind::disj: {
                for (const auto& part : phi->children())
                    for (auto& map : run(t, part)) out.push_back(std::move(map));
                dedupe_maps(out);
                return out;
            }
            case FormulaKind::nfdia: {
                auto ruloids = rules_emitting(lang, t, phi->action());
                auto vars = t.vars();
                // chi part: some premise of every rule fails, so no a?-move exists.
                for (const auto& eta : chi_functions(ruloids, cap))
                    out.push_back(psi_of(ruloids, eta, vars));
                // R part: a rule fires into a target satisfying the body.
                for (const auto& r : ruloids) rule_case(r, phi->child(), true, vars, out);
                dedupe_maps(out);
                return out;
            }
            case FormulaKind::dia: {
                if (!phi->action().is_output())
                    throw std::invalid_argument("formula '" + print_formula(phi) +
                                                "' is outside the non-forcing-diamond fragment");
                auto ruloids = rules_emitting(lang, t, phi->action());
                auto vars = t.vars();
                for (const auto& r : ruloids) rule_case(r, phi->child(), false, vars, out);
                dedupe_maps(out);
                return out;
            }
            default:
                throw std::invalid_argument("formula '" + print_formula(phi) +
                                            "' is outside the non-forcing-diamond fragment");
        }
    }

    // Builds the per-rule maps for a modal step through ruloid r. For the
    // input case only input premises into the target contribute; for the
    // output case every positive premise asserts its move and negative
    // input premises assert refusal.
    void rule_case(const Ruloid& r, const FormulaPtr& body, bool input_case,
                   const std::vector<std::string>& vars, std::vector<DecompositionMap>& out) {
        for (const auto& inner : run(r.target, body)) {
            DecompositionMap map;
            for (const auto& x : vars) {
                std::vector<FormulaPtr> parts;
                for (const auto& p : r.premises) {
                    if (p.source != x) continue;
                    if (input_case) {
                        // <<b?>>tt is a tautology, so premises into
                        // unconstrained target variables add nothing.
                        if (p.positive && p.action.is_input() && r.target.mentions_var(p.target) &&
                            !map_entry(inner, p.target)->is_true())
                            parts.push_back(f_nfdia(p.action, map_entry(inner, p.target)));
                    } else {
                        if (p.positive && p.action.is_output())
                            parts.push_back(f_dia(p.action, map_entry(inner, p.target)));
                        else if (!p.positive && p.action.is_input())
                            parts.push_back(f_nfdia(p.action, f_false()));
                    }
                }
                if (r.target.mentions_var(x)) parts.push_back(map_entry(inner, x));
                FormulaPtr phi = f_and(std::move(parts));
                if (!phi->is_true()) map[x] = phi;
            }
            out.push_back(std::move(map));
        }
    }
};

} // namespace

std::vector<DecompositionMap> decompose(const GsosLanguage& lang, const Term& t, const FormulaPtr& phi,
                                        std::size_t cap) {
    require_flat(t, "decomposition source");
    if (!in_fragment(phi, Fragment::l_iocos))
        throw std::invalid_argument("decomposition expects a non-forcing-diamond formula, got '" +
                                    print_formula(phi) + "'");
    Decomposer decomposer{lang, cap};
    return decomposer.run(t, phi);
}

DecompositionCheck verify_decomposition(const GsosLanguage& lang, const Lts& base, const Term& t,
                                        const FormulaPtr& phi,
                                        const std::map<std::string, StateId>& substitution,
                                        std::size_t cap) {
    DecompositionCheck check;
    check.format_ok = check_iocos_format(lang).pass();

    std::map<std::string, Term> binding;
    for (const auto& v : t.vars()) {
        auto it = substitution.find(v);
        if (it == substitution.end())
            throw std::invalid_argument("substitution does not close variable '" + v + "'");
        binding[v] = Term::state(base.name_of(it->second));
    }
    Term closed = t;
    {
        std::function<Term(const Term&)> subst = [&](const Term& u) -> Term {
            if (u.kind == Term::Kind::variable) return binding.at(u.name);
            Term out = u;
            out.children.clear();
            for (const auto& c : u.children) out.children.push_back(subst(c));
            return out;
        };
        closed = subst(t);
    }
    Lts derived = derive_lts(lang, base, closed);
    check.direct = satisfies(derived, derived.state(print_term(closed)), phi);

    for (const auto& map : decompose(lang, t, phi, cap)) {
        bool all = true;
        for (const auto& v : t.vars())
            if (!satisfies(base, substitution.at(v), map_entry(map, v))) {
                all = false;
                break;
            }
        if (all) {
            check.decomposed = true;
            break;
        }
    }
    return check;
}

} // namespace ioconf
