#include "ioconf/enumerate.hpp"

#include "ioconf/logic.hpp"

#include <algorithm>
#include <functional>

namespace ioconf {

namespace {

struct AtomMakers {
    // One entry per modal constructor the fragment admits: given a child,
    // build the atom.
    std::vector<std::function<FormulaPtr(const FormulaPtr&)>> unary;
    // Depth-1 constant atoms with a fixed child ([a]ff for ready simulation).
    std::vector<FormulaPtr> fixed;
};

AtomMakers atom_makers(const Alphabet& alphabet, Fragment fragment, const CcPartition* cc) {
    AtomMakers makers;
    auto add_dia = [&](const Action& a) {
        makers.unary.push_back([a](const FormulaPtr& c) { return f_dia(a, c); });
    };
    auto add_box = [&](const Action& a) {
        makers.unary.push_back([a](const FormulaPtr& c) { return f_box(a, c); });
    };
    switch (fragment) {
        case Fragment::l_iocos:
            for (const auto& a : alphabet.inputs())
                makers.unary.push_back([a](const FormulaPtr& c) { return f_nfdia(a, c); });
            for (const auto& a : alphabet.outputs()) add_dia(a);
            break;
        case Fragment::l_tiocos:
            for (const auto& a : alphabet.inputs())
                makers.unary.push_back([a](const FormulaPtr& c) { return f_fbox(a, c); });
            for (const auto& a : alphabet.outputs()) add_box(a);
            break;
        case Fragment::hml:
            for (const auto& a : alphabet.all()) { add_dia(a); add_box(a); }
            break;
        case Fragment::l_s:
            for (const auto& a : alphabet.all()) add_dia(a);
            break;
        case Fragment::l_rs:
            for (const auto& a : alphabet.all()) {
                add_dia(a);
                makers.fixed.push_back(f_box(a, f_false()));
            }
            break;
        case Fragment::l_cc: {
            CcPartition def = CcPartition::default_for(alphabet);
            const CcPartition& part = cc ? *cc : def;
            for (const auto& a : alphabet.all()) {
                if (part.allows_dia(a)) add_dia(a);
                if (part.allows_box(a)) add_box(a);
            }
            break;
        }
        default:
            throw std::invalid_argument("fragment '" + fragment_name(fragment) +
                                        "' has no level-wise enumeration");
    }
    return makers;
}

void check_cap(std::size_t n, std::size_t cap) {
    if (n > cap)
        throw std::length_error("formula enumeration exceeds cap of " + std::to_string(cap));
}

std::vector<FormulaPtr> enumerate_bm(const Alphabet& alphabet, Fragment fragment, int depth,
                                     std::size_t cap) {
    std::vector<Trace> traces{{}};
    std::size_t first_of_prev = 0;
    for (int d = 1; d <= depth; ++d) {
        std::size_t end = traces.size();
        for (std::size_t t = first_of_prev; t < end; ++t)
            for (const auto& a : alphabet.all()) {
                Trace extended = traces[t];
                extended.push_back(a);
                traces.push_back(std::move(extended));
            }
        first_of_prev = end;
    }
    std::vector<FormulaPtr> out;
    for (const auto& sigma : traces)
        for (const auto& b : alphabet.outputs()) {
            check_cap(out.size() + 1, cap);
            out.push_back(fragment == Fragment::bm_force ? f_force_trace(sigma, f_box(b, f_false()))
                                                         : f_box_trace(sigma, f_box(b, f_false())));
        }
    return out;
}

// All subsets of `atoms` with 2..width elements, combined by `combine`.
void add_combinations(const std::vector<FormulaPtr>& atoms, int width, std::size_t cap,
                      const std::function<FormulaPtr(std::vector<FormulaPtr>)>& combine,
                      std::vector<FormulaPtr>& out) {
    std::vector<std::size_t> idx;
    std::function<void(std::size_t)> rec = [&](std::size_t start) {
        if (idx.size() >= 2) {
            std::vector<FormulaPtr> parts;
            for (auto k : idx) parts.push_back(atoms[k]);
            check_cap(out.size() + 1, cap);
            out.push_back(combine(std::move(parts)));
        }
        if (static_cast<int>(idx.size()) == width) return;
        for (std::size_t k = start; k < atoms.size(); ++k) {
            idx.push_back(k);
            rec(k + 1);
            idx.pop_back();
        }
    };
    rec(0);
}

std::vector<FormulaPtr> enumerate_level(const Alphabet& alphabet, Fragment fragment, int depth,
                                        int width, std::size_t cap, const CcPartition* cc) {
    if (fragment == Fragment::l_equiv) {
        // Boolean closure over the union of the two dual fragments.
        auto left = enumerate_level(alphabet, Fragment::l_iocos, depth, width, cap, cc);
        auto right = enumerate_level(alphabet, Fragment::l_tiocos, depth, width, cap, cc);
        std::vector<FormulaPtr> atoms;
        for (auto& f : left)
            if (!f->is_true() && !f->is_false()) atoms.push_back(std::move(f));
        for (auto& f : right)
            if (!f->is_true() && !f->is_false()) atoms.push_back(std::move(f));
        std::vector<FormulaPtr> out{f_true(), f_false()};
        for (const auto& a : atoms) out.push_back(a);
        check_cap(out.size(), cap);
        add_combinations(atoms, width, cap, [](std::vector<FormulaPtr> p) { return f_and(std::move(p)); }, out);
        add_combinations(atoms, width, cap, [](std::vector<FormulaPtr> p) { return f_or(std::move(p)); }, out);
        return out;
    }

    AtomMakers makers = atom_makers(alphabet, fragment, cc);
    std::vector<FormulaPtr> level{f_true(), f_false()};
    for (int d = 1; d <= depth; ++d) {
        std::vector<FormulaPtr> atoms;
        for (const auto& make : makers.unary)
            for (const auto& child : level) {
                check_cap(atoms.size() + 1, cap);
                atoms.push_back(make(child));
            }
        for (const auto& fixed : makers.fixed) atoms.push_back(fixed);
        // Fixed atoms ([a]ff) coincide across levels; dedupe.
        std::sort(atoms.begin(), atoms.end(),
                  [](const FormulaPtr& a, const FormulaPtr& b) { return compare(*a, *b) < 0; });
        atoms.erase(std::unique(atoms.begin(), atoms.end(),
                                [](const FormulaPtr& a, const FormulaPtr& b) { return equal(a, b); }),
                    atoms.end());

        std::vector<FormulaPtr> next{f_true(), f_false()};
        for (const auto& a : atoms) next.push_back(a);
        check_cap(next.size(), cap);
        add_combinations(atoms, width, cap, [](std::vector<FormulaPtr> p) { return f_and(std::move(p)); },
                         next);
        add_combinations(atoms, width, cap, [](std::vector<FormulaPtr> p) { return f_or(std::move(p)); },
                         next);
        level = std::move(next);
    }
    return level;
}

} // namespace

std::vector<FormulaPtr> enumerate_fragment(const Alphabet& alphabet, Fragment fragment, int depth,
                                           int width, std::size_t cap, const CcPartition* cc) {
    if (depth < 0 || width < 1) throw std::invalid_argument("enumeration needs depth >= 0, width >= 1");
    if (fragment == Fragment::bm_force || fragment == Fragment::bm_box)
        return enumerate_bm(alphabet, fragment, depth, cap);
    return enumerate_level(alphabet, fragment, depth, width, cap, cc);
}

namespace {

std::size_t choose(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    std::size_t r = 1;
    for (std::size_t j = 1; j <= k; ++j) r = r * (n - j + 1) / j;
    return r;
}

} // namespace

std::size_t enumerate_count(const Alphabet& alphabet, Fragment fragment, int depth, int width,
                            const CcPartition* cc) {
    if (fragment == Fragment::bm_force || fragment == Fragment::bm_box) {
        std::size_t traces = 0, layer = 1;
        for (int d = 0; d <= depth; ++d) {
            traces += layer;
            layer *= alphabet.all().size();
        }
        return traces * alphabet.outputs().size();
    }
    if (fragment == Fragment::l_equiv) {
        std::size_t left = enumerate_count(alphabet, Fragment::l_iocos, depth, width, cc) - 2;
        std::size_t right = enumerate_count(alphabet, Fragment::l_tiocos, depth, width, cc) - 2;
        std::size_t atoms = left + right;
        std::size_t combos = 0;
        for (int k = 2; k <= width; ++k) combos += choose(atoms, static_cast<std::size_t>(k));
        return 2 + atoms + 2 * combos;
    }
    AtomMakers makers = atom_makers(alphabet, fragment, cc);
    std::size_t level = 2;
    for (int d = 1; d <= depth; ++d) {
        std::size_t atoms = makers.unary.size() * level + makers.fixed.size();
        // [a]ff duplicates <...> atoms never; but fixed atoms repeat across
        // levels only as themselves, already counted once here.
        std::size_t combos = 0;
        for (int k = 2; k <= width; ++k) combos += choose(atoms, static_cast<std::size_t>(k));
        level = 2 + atoms + 2 * combos;
    }
    return level;
}

bool bm_ioco_bounded(const Lts& lts, StateId i, StateId s, int trace_bound) {
    if (i >= lts.state_count() || s >= lts.state_count()) throw std::invalid_argument("unknown state");
    if (trace_bound < 0) trace_bound = 0;
    const auto actions = lts.alphabet().all();
    const auto outputs = lts.alphabet().outputs();

    std::function<bool(Trace&, int)> walk = [&](Trace& sigma, int remaining) -> bool {
        for (const auto& b : outputs) {
            FormulaPtr premise = f_force_trace(sigma, f_box(b, f_false()));
            if (satisfies(lts, s, premise)) {
                FormulaPtr conclusion = f_box_trace(sigma, f_box(b, f_false()));
                if (!satisfies(lts, i, conclusion)) return false;
            }
        }
        if (remaining == 0) return true;
        for (const auto& a : actions) {
            sigma.push_back(a);
            bool ok = walk(sigma, remaining - 1);
            sigma.pop_back();
            if (!ok) return false;
        }
        return true;
    };
    Trace sigma;
    return walk(sigma, trace_bound);
}

} // namespace ioconf
