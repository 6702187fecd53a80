#include "ioconf/conformance.hpp"

#include "ioconf/logic.hpp"

#include <algorithm>
#include <limits>

namespace ioconf {

StateRelation StateRelation::full(const Lts& lts) {
    StateRelation r;
    for (StateId p = 0; p < lts.state_count(); ++p)
        for (StateId q = 0; q < lts.state_count(); ++q) r.pairs.insert({p, q});
    return r;
}

StateRelation StateRelation::identity(const Lts& lts) {
    StateRelation r;
    for (StateId p = 0; p < lts.state_count(); ++p) r.pairs.insert({p, p});
    return r;
}

namespace {

bool pair_survives(const Lts& lts, StateId p, StateId q, const StateRelation& r) {
    auto ins_q = lts.ins(q);
    for (const auto& a : ins_q)
        if (!lts.enables(p, a)) return false;
    for (const auto& a : ins_q) {
        for (StateId ps : lts.successors(p, a)) {
            bool matched = false;
            for (StateId qs : lts.successors(q, a))
                if (r.contains(ps, qs)) { matched = true; break; }
            if (!matched) return false;
        }
    }
    for (const auto& a : lts.outs(p)) {
        for (StateId ps : lts.successors(p, a)) {
            bool matched = false;
            for (StateId qs : lts.successors(q, a))
                if (r.contains(ps, qs)) { matched = true; break; }
            if (!matched) return false;
        }
    }
    return true;
}

} // namespace

StateRelation fio_step(const Lts& lts, const StateRelation& r) {
    StateRelation next;
    for (StateId p = 0; p < lts.state_count(); ++p)
        for (StateId q = 0; q < lts.state_count(); ++q)
            if (pair_survives(lts, p, q, r)) next.pairs.insert({p, q});
    return next;
}

IocosResult iocos_relation(const Lts& lts) {
    IocosResult result;
    StateRelation current = StateRelation::full(lts);
    int sweep = 0;
    while (true) {
        ++sweep;
        StateRelation next;
        for (const auto& pq : current.pairs)
            if (pair_survives(lts, pq.first, pq.second, current))
                next.pairs.insert(pq);
            else
                result.rank.emplace(pq, sweep);
        if (next.pairs.size() == current.pairs.size()) break;
        current = std::move(next);
    }
    result.relation = std::move(current);
    result.sweeps = sweep;
    return result;
}

std::optional<int> IocosResult::removal_rank(StateId p, StateId q) const {
    auto it = rank.find({p, q});
    if (it == rank.end()) return std::nullopt;
    return it->second;
}

namespace {

// Rebuilds the failing case of the fixed-point iteration at (i,s) and
// recurses only into pairs of strictly smaller removal rank, which bounds
// the construction. Case order: ins violation, then inputs, then outputs,
// all lexicographic; conjunctions run over s-successors in state order.
FormulaPtr build_witness(const Lts& lts, const IocosResult& fix, StateId i, StateId s) {
    auto rank_of = [&](StateId p, StateId q) {
        auto r = fix.removal_rank(p, q);
        return r ? *r : std::numeric_limits<int>::max();
    };
    int own_rank = rank_of(i, s);

    auto ins_s = lts.ins(s);
    for (const auto& a : ins_s)
        if (!lts.enables(i, a)) return f_nfdia(a, f_false());

    auto conjunction_over = [&](const Action& a, StateId ip) -> FormulaPtr {
        std::vector<FormulaPtr> parts;
        for (StateId ss : lts.successors(s, a)) parts.push_back(build_witness(lts, fix, ip, ss));
        return f_and(std::move(parts));
    };

    for (const auto& a : ins_s) {
        for (StateId ip : lts.successors(i, a)) {
            bool unmatched = true;
            for (StateId ss : lts.successors(s, a))
                if (rank_of(ip, ss) >= own_rank) { unmatched = false; break; }
            if (unmatched) return f_nfdia(a, conjunction_over(a, ip));
        }
    }
    for (const auto& a : lts.outs(i)) {
        for (StateId ip : lts.successors(i, a)) {
            bool unmatched = true;
            for (StateId ss : lts.successors(s, a))
                if (rank_of(ip, ss) >= own_rank) { unmatched = false; break; }
            if (unmatched) return f_dia(a, conjunction_over(a, ip));
        }
    }
    throw std::logic_error("no distinguishing case found for a removed pair");
}

} // namespace

std::optional<FormulaPtr> distinguishing_formula(const Lts& lts, const IocosResult& fixpoint, StateId i,
                                                 StateId s, WitnessLogic logic) {
    if (fixpoint.holds(i, s)) return std::nullopt;
    FormulaPtr phi = build_witness(lts, fixpoint, i, s);
    if (logic == WitnessLogic::l_tiocos) phi = dual_transform(phi, DualDirection::forward);
    return phi;
}

std::optional<FormulaPtr> distinguishing_formula(const Lts& lts, StateId i, StateId s, WitnessLogic logic) {
    if (i >= lts.state_count() || s >= lts.state_count()) throw std::invalid_argument("unknown state");
    return distinguishing_formula(lts, iocos_relation(lts), i, s, logic);
}

ConformanceVerdict iocos_holds(const Lts& lts, StateId i, StateId s, ConformanceMode mode) {
    if (i >= lts.state_count() || s >= lts.state_count()) throw std::invalid_argument("unknown state");
    IocosResult fix = iocos_relation(lts);
    ConformanceVerdict verdict;
    verdict.holds = fix.holds(i, s);
    verdict.rank = fix.removal_rank(i, s);
    StateId wi = i, ws = s;
    if (mode == ConformanceMode::equivalence && verdict.holds) {
        verdict.holds = fix.holds(s, i);
        verdict.rank = fix.removal_rank(s, i);
        wi = s;
        ws = i;
    }
    if (!verdict.holds) {
        verdict.witness = build_witness(lts, fix, wi, ws);
        verdict.witness_holds_at = wi;
        verdict.witness_fails_at = ws;
        verdict.witness_logic = WitnessLogic::l_iocos;
    }
    return verdict;
}

bool ioco_holds(const Lts& lts, StateId i, StateId s) {
    if (i >= lts.state_count() || s >= lts.state_count()) throw std::invalid_argument("unknown state");
    using SetPair = std::pair<StateSet, StateSet>;
    std::set<SetPair> visited;
    std::vector<SetPair> todo;
    todo.push_back({StateSet{i}, StateSet{s}});
    visited.insert(todo.back());

    while (!todo.empty()) {
        auto [left, right] = std::move(todo.back());
        todo.pop_back();

        auto out_left = out_of(lts, left);
        auto out_right = out_of(lts, right);
        if (!std::includes(out_right.begin(), out_right.end(), out_left.begin(), out_left.end()))
            return false;

        for (const auto& a : lts.alphabet().all()) {
            StateSet next_right = after(lts, right, {a});
            if (next_right.empty()) continue;   // the trace leaves traces(s)
            StateSet next_left = after(lts, left, {a});
            if (next_left.empty()) continue;    // Out(empty) is empty from here on
            SetPair next{std::move(next_left), std::move(next_right)};
            if (visited.insert(next).second) todo.push_back(std::move(next));
        }
    }
    return true;
}

BridgeReport ioco_iocos_bridge(const Lts& lts, StateId i, StateId s) {
    BridgeReport report;
    report.ioco = ioco_holds(lts, i, s);
    report.iocos = iocos_holds(lts, i, s).holds;
    report.input_enabled_i = classify(lts, i).input_enabled;
    report.deterministic_s = classify(lts, s).deterministic;
    report.coincidence_applicable = report.input_enabled_i && report.deterministic_s;

    auto char_s = characteristic_formula(lts, s);
    report.i_sat_char_s = satisfies_declared(lts, i, char_s.declaration, char_s.root);

    // With a deterministic specification the simulation walk follows the
    // unique trace path, so simulation conformance forces trace
    // conformance. Nondeterministic specifications genuinely separate the
    // two (a branch without inputs can absorb the simulation while another
    // branch extends the trace), so no cross-check applies there.
    if (report.deterministic_s && report.iocos && !report.ioco) report.consistent = false;
    if (report.coincidence_applicable && report.ioco && !report.iocos) report.consistent = false;
    if (report.i_sat_char_s != report.iocos) report.consistent = false;
    return report;
}

} // namespace ioconf
