#include "support.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace ioconf::test {

std::string fixture_path(const std::string& name) { return std::string(IOCONF_FIXTURES) + "/" + name; }

Lts load_fixture(const std::string& name, bool close_quiescence) {
    LtsParseOptions options;
    options.close_quiescence = close_quiescence;
    return load_lts(fixture_path(name), options);
}

GsosLanguage load_gsos_fixture(const std::string& name) { return load_gsos(fixture_path(name)); }

StateRelation brute_iocos(const Lts& lts) {
    const std::size_t n = lts.state_count();
    if (n > 4) throw std::invalid_argument("brute_iocos is exponential; use <= 4 states");
    const std::size_t pairs = n * n;

    std::vector<std::set<Action>> ins(n), outs(n);
    for (StateId p = 0; p < n; ++p) {
        ins[p] = lts.ins(p);
        outs[p] = lts.outs(p);
    }

    auto is_simulation = [&](std::uint32_t mask) {
        auto in_r = [&](StateId p, StateId q) { return (mask >> (p * n + q)) & 1u; };
        for (StateId p = 0; p < n; ++p) {
            for (StateId q = 0; q < n; ++q) {
                if (!in_r(p, q)) continue;
                if (!std::includes(ins[p].begin(), ins[p].end(), ins[q].begin(), ins[q].end()))
                    return false;
                auto moves_matched = [&](const Action& a) {
                    for (StateId ps : lts.successors(p, a)) {
                        bool ok = false;
                        for (StateId qs : lts.successors(q, a))
                            if (in_r(ps, qs)) { ok = true; break; }
                        if (!ok) return false;
                    }
                    return true;
                };
                for (const auto& a : ins[q])
                    if (!moves_matched(a)) return false;
                for (const auto& a : outs[p])
                    if (!moves_matched(a)) return false;
            }
        }
        return true;
    };

    StateRelation result;
    for (std::uint32_t mask = 0; mask < (1u << pairs); ++mask) {
        if (!is_simulation(mask)) continue;
        for (std::size_t bit = 0; bit < pairs; ++bit)
            if ((mask >> bit) & 1u)
                result.pairs.insert({static_cast<StateId>(bit / n), static_cast<StateId>(bit % n)});
    }
    return result;
}

bool brute_ioco(const Lts& lts, StateId i, StateId s, int depth) {
    // Walk every specification trace up to the bound and compare output sets.
    std::function<bool(const StateSet&, const StateSet&, int)> walk =
        [&](const StateSet& after_i, const StateSet& after_s, int remaining) {
            auto out_i = out_of(lts, after_i);
            auto out_s = out_of(lts, after_s);
            if (!std::includes(out_s.begin(), out_s.end(), out_i.begin(), out_i.end())) return false;
            if (remaining == 0) return true;
            for (const auto& a : lts.alphabet().all()) {
                StateSet next_s = after(lts, after_s, {a});
                if (next_s.empty()) continue;
                if (!walk(after(lts, after_i, {a}), next_s, remaining - 1)) return false;
            }
            return true;
        };
    return walk(StateSet{i}, StateSet{s}, depth);
}

namespace {

StateSet nfdia_signature(const Lts& lts, const Action& a, const StateSet& child) {
    StateSet out;
    for (StateId p = 0; p < lts.state_count(); ++p) {
        const auto& succ = lts.successors(p, a);
        if (succ.empty()) { out.insert(p); continue; }
        for (StateId q : succ)
            if (child.count(q)) { out.insert(p); break; }
    }
    return out;
}

StateSet dia_signature(const Lts& lts, const Action& a, const StateSet& child) {
    StateSet out;
    for (StateId p = 0; p < lts.state_count(); ++p)
        for (StateId q : lts.successors(p, a))
            if (child.count(q)) { out.insert(p); break; }
    return out;
}

} // namespace

SignatureClosure diamond_signatures(const Lts& lts, int depth, int width) {
    SignatureClosure closure;
    std::map<StateSet, std::size_t> index;
    auto remember = [&](const StateSet& sig, const FormulaPtr& phi) {
        if (index.emplace(sig, closure.signatures.size()).second) {
            closure.signatures.push_back(sig);
            closure.representatives.push_back(phi);
        }
    };

    StateSet everything;
    for (StateId p = 0; p < lts.state_count(); ++p) everything.insert(p);
    remember(everything, f_true());
    remember({}, f_false());

    // Level by level: modal atoms over the previous level, then one layer
    // of conjunctions/disjunctions of up to `width` atoms.
    std::vector<std::pair<StateSet, FormulaPtr>> level = {{everything, f_true()}, {{}, f_false()}};
    for (int d = 1; d <= depth; ++d) {
        std::vector<std::pair<StateSet, FormulaPtr>> atoms;
        std::map<StateSet, bool> atom_seen;
        auto add_atom = [&](StateSet sig, FormulaPtr phi) {
            if (atom_seen.emplace(sig, true).second) atoms.emplace_back(std::move(sig), std::move(phi));
        };
        for (const auto& [sig, phi] : level) {
            for (const auto& a : lts.alphabet().inputs())
                add_atom(nfdia_signature(lts, a, sig), f_nfdia(a, phi));
            for (const auto& a : lts.alphabet().outputs())
                add_atom(dia_signature(lts, a, sig), f_dia(a, phi));
        }
        add_atom(everything, f_true());
        add_atom({}, f_false());

        std::map<StateSet, FormulaPtr> next;
        for (const auto& [sig, phi] : atoms) next.emplace(sig, phi);

        // width-bounded conjunctions and disjunctions of distinct atoms
        std::vector<std::size_t> idx;
        std::function<void(std::size_t, StateSet, std::vector<FormulaPtr>, bool)> combos =
            [&](std::size_t start, StateSet acc, std::vector<FormulaPtr> parts, bool conj) {
                if (idx.size() >= 2) {
                    FormulaPtr phi = conj ? f_and(parts) : f_or(parts);
                    next.emplace(acc, phi);
                }
                if (static_cast<int>(idx.size()) == width) return;
                for (std::size_t k = start; k < atoms.size(); ++k) {
                    StateSet merged;
                    if (conj)
                        std::set_intersection(acc.begin(), acc.end(), atoms[k].first.begin(),
                                              atoms[k].first.end(), std::inserter(merged, merged.end()));
                    else
                        std::set_union(acc.begin(), acc.end(), atoms[k].first.begin(),
                                       atoms[k].first.end(), std::inserter(merged, merged.end()));
                    idx.push_back(k);
                    auto extended = parts;
                    extended.push_back(atoms[k].second);
                    combos(k + 1, std::move(merged), std::move(extended), conj);
                    idx.pop_back();
                }
            };
        for (std::size_t k = 0; k < atoms.size(); ++k) {
            idx.assign(1, k);
            combos(k + 1, atoms[k].first, {atoms[k].second}, true);
            combos(k + 1, atoms[k].first, {atoms[k].second}, false);
        }

        level.assign(next.begin(), next.end());
        for (const auto& [sig, phi] : level) remember(sig, phi);
    }
    return closure;
}

std::optional<FormulaPtr> SignatureClosure::separator(StateId i, StateId s) const {
    for (std::size_t k = 0; k < signatures.size(); ++k)
        if (signatures[k].count(i) && !signatures[k].count(s)) return representatives[k];
    return std::nullopt;
}

Lts random_lts(Rng& rng, const RandomLtsParams& params) {
    Lts::Builder builder;
    std::vector<std::string> input_names = {"a", "b", "c"};
    std::vector<std::string> output_names = {"x", "y", "z"};
    std::vector<Action> inputs, outputs;
    for (int k = 0; k < params.inputs; ++k) {
        builder.input(input_names[k]);
        inputs.push_back(input_action(input_names[k]));
    }
    for (int k = 0; k < params.extra_outputs; ++k) {
        builder.output(output_names[k]);
        outputs.push_back(output_action(output_names[k]));
    }

    int n = params.min_states + rng.below(params.max_states - params.min_states + 1);
    std::vector<std::string> names;
    for (int k = 0; k < n; ++k) {
        names.push_back("s" + std::to_string(k));
        builder.state(names.back());
    }
    for (int src = 0; src < n; ++src) {
        for (const auto& a : inputs) {
            int fanout = 0;
            if (params.input_enabled)
                fanout = 1 + (params.deterministic ? 0 : rng.below(params.max_fanout));
            else if (rng.percent(params.percent_input_edge))
                fanout = params.deterministic ? 1 : 1 + rng.below(params.max_fanout);
            for (int e = 0; e < fanout; ++e) builder.transition(names[src], a, names[rng.below(n)]);
        }
        for (const auto& a : outputs) {
            if (!rng.percent(params.percent_output_edge)) continue;
            int fanout = params.deterministic ? 1 : 1 + rng.below(params.max_fanout);
            for (int e = 0; e < fanout; ++e) builder.transition(names[src], a, names[rng.below(n)]);
        }
    }
    builder.close_quiescence();
    return builder.build();
}

Lts disjoint_union(const Lts& a, const Lts& b, const std::string& prefix_a,
                   const std::string& prefix_b) {
    if (!(a.alphabet() == b.alphabet()))
        throw std::invalid_argument("disjoint_union expects one alphabet");
    Lts::Builder builder;
    builder.alphabet(a.alphabet());
    for (const auto& s : a.state_names()) builder.state(prefix_a + s);
    for (const auto& s : b.state_names()) builder.state(prefix_b + s);
    for (const auto& t : a.transitions())
        builder.transition(prefix_a + a.name_of(t.src), t.act, prefix_a + a.name_of(t.dst));
    for (const auto& t : b.transitions())
        builder.transition(prefix_b + b.name_of(t.src), t.act, prefix_b + b.name_of(t.dst));
    return builder.build();
}

} // namespace ioconf::test
