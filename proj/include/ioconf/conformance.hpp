#ifndef IOCONF_CONFORMANCE_HPP
#define IOCONF_CONFORMANCE_HPP

#include "ioconf/formula.hpp"
#include "ioconf/lts.hpp"

#include <map>
#include <optional>
#include <set>
#include <utility>

namespace ioconf {

using StatePair = std::pair<StateId, StateId>;

/// A binary relation over the states of one LTS.
struct StateRelation {
    std::set<StatePair> pairs;

    bool contains(StateId p, StateId q) const { return pairs.count({p, q}) != 0; }
    std::size_t size() const { return pairs.size(); }

    static StateRelation full(const Lts& lts);
    static StateRelation identity(const Lts& lts);
};

/// One application of the conformance-simulation functional:
/// (p,q) survives iff ins(q) is included in ins(p), every input move of p on
/// an action q affords is matched in R, and every output move of p is
/// matched in R.
StateRelation fio_step(const Lts& lts, const StateRelation& r);

/// Greatest fixed point of fio_step, reached by iterating down from the
/// full relation. `rank` records the first iteration (1-based) at which a
/// pair was removed; surviving pairs are absent from the map.
struct IocosResult {
    StateRelation relation;
    std::map<StatePair, int> rank;
    int sweeps = 0;

    bool holds(StateId p, StateId q) const { return relation.contains(p, q); }
    /// Removal rank; pairs in the relation report no rank.
    std::optional<int> removal_rank(StateId p, StateId q) const;
};

IocosResult iocos_relation(const Lts& lts);

enum class ConformanceMode { preorder, equivalence };
enum class WitnessLogic { l_iocos, l_tiocos };

struct ConformanceVerdict {
    bool holds = false;
    std::optional<FormulaPtr> witness;
    // The witness separates these two states: satisfied at the first,
    // refuted at the second. In equivalence mode the failing direction may
    // be the reversed pair.
    StateId witness_holds_at = 0;
    StateId witness_fails_at = 0;
    WitnessLogic witness_logic = WitnessLogic::l_iocos;
    std::optional<int> rank;                    // iteration at which the checked pair died
};

/// Decides i conforms-to s (preorder) or both directions (equivalence).
/// On failure the verdict carries a distinguishing formula for the failing
/// direction.
ConformanceVerdict iocos_holds(const Lts& lts, StateId i, StateId s,
                               ConformanceMode mode = ConformanceMode::preorder);

/// Distinguishing formula construction. For the diamond logic the result
/// phi satisfies i |= phi and s |/= phi; for the box logic it is the dual
/// transform, satisfied by s and not by i. Returns nothing iff i conforms
/// to s.
std::optional<FormulaPtr> distinguishing_formula(const Lts& lts, StateId i, StateId s,
                                                 WitnessLogic logic = WitnessLogic::l_iocos);

/// Same, reusing an already computed fixed point.
std::optional<FormulaPtr> distinguishing_formula(const Lts& lts, const IocosResult& fixpoint, StateId i,
                                                 StateId s, WitnessLogic logic = WitnessLogic::l_iocos);

/// Trace-based conformance: Out(i after sigma) included in Out(s after
/// sigma) for every trace of s. Decided exactly by a synchronized subset
/// construction over reachable set pairs, memoizing visited pairs.
bool ioco_holds(const Lts& lts, StateId i, StateId s);

/// Runs both deciders and both classifiers side by side. The implications
/// that hold by theorem (iocos implies ioco against deterministic
/// specifications; ioco implies iocos when i is input-enabled and s
/// deterministic; the characteristic formula decides iocos) are re-checked
/// and any violation is reported as inconsistent (it would indicate a bug).
struct BridgeReport {
    bool ioco = false;
    bool iocos = false;
    bool input_enabled_i = false;
    bool deterministic_s = false;
    bool coincidence_applicable = false;   // both side conditions hold
    bool i_sat_char_s = false;             // i |= X_s under the characteristic system
    bool consistent = true;
};

BridgeReport ioco_iocos_bridge(const Lts& lts, StateId i, StateId s);

} // namespace ioconf

#endif
