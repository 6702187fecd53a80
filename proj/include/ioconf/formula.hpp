#ifndef IOCONF_FORMULA_HPP
#define IOCONF_FORMULA_HPP

#include "ioconf/lts.hpp"

#include <memory>
#include <string>
#include <vector>

namespace ioconf {

enum class FormulaKind {
    truth,        // tt
    falsity,      // ff
    conj,         // phi & psi (n-ary)
    disj,         // phi | psi (n-ary)
    dia,          // <a> phi
    box,          // [a] phi
    nfdia,        // <<a?>> phi   non-forcing diamond
    fbox,         // [[a?]] phi   forcing box
    force_trace,  // <|sigma|> phi
    box_trace,    // [|sigma|] phi
    var           // X
};

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

/// Immutable formula node. Construct through the factory functions below;
/// they keep conjunctions and disjunctions in canonical form (flattened,
/// sorted, constants absorbed), which is what printing, deduplication and
/// the round-trip tests rely on.
class Formula {
public:
    FormulaKind kind() const { return kind_; }
    const Action& action() const { return action_; }
    const Trace& trace() const { return trace_; }
    const std::string& var() const { return var_; }
    const std::vector<FormulaPtr>& children() const { return children_; }
    const FormulaPtr& child() const { return children_.front(); }

    bool is_true() const { return kind_ == FormulaKind::truth; }
    bool is_false() const { return kind_ == FormulaKind::falsity; }

private:
    friend struct FormulaFactory;
    Formula() = default;
    FormulaKind kind_ = FormulaKind::truth;
    Action action_;
    Trace trace_;
    std::string var_;
    std::vector<FormulaPtr> children_;
};

FormulaPtr f_true();
FormulaPtr f_false();
/// Canonical conjunction: flattens nested conjunctions, drops tt, collapses
/// to ff when ff occurs, sorts and deduplicates; empty => tt, singleton =>
/// the child itself.
FormulaPtr f_and(std::vector<FormulaPtr> children);
/// Canonical disjunction, dual conventions; empty => ff.
FormulaPtr f_or(std::vector<FormulaPtr> children);
FormulaPtr f_dia(const Action& a, FormulaPtr phi);
FormulaPtr f_box(const Action& a, FormulaPtr phi);
FormulaPtr f_nfdia(const Action& a, FormulaPtr phi);   // a must be an input
FormulaPtr f_fbox(const Action& a, FormulaPtr phi);    // a must be an input
FormulaPtr f_force_trace(const Trace& t, FormulaPtr phi);
FormulaPtr f_box_trace(const Trace& t, FormulaPtr phi);
FormulaPtr f_var(const std::string& name);

/// Total structural order on canonical formulas; 0 on equality.
int compare(const Formula& a, const Formula& b);
bool equal(const FormulaPtr& a, const FormulaPtr& b);

/// Canonical text. Grammar, loosest to tightest: `|`, `&`, modalities.
std::string print_formula(const FormulaPtr& phi);

/// Parses the formula grammar:
///   tt | ff | phi & phi | phi "|" phi | <a> phi | [a] phi
///   | <<a?>> phi | [[a?]] phi | <| sigma |> phi | [| sigma |] phi
///   | X | ( phi )
/// Traces are written `a?.b!`; the empty trace is `<||>` / `[||]`.
FormulaPtr parse_formula(const std::string& text);

int modal_depth(const FormulaPtr& phi);
/// Largest conjunction/disjunction arity anywhere in the formula.
int max_bool_width(const FormulaPtr& phi);
/// Free variables, sorted.
std::vector<std::string> free_vars(const FormulaPtr& phi);

enum class DualDirection { forward, inverse };

/// The bijection between the non-forcing-diamond logic and the forcing-box
/// logic: constants and boolean connectives are dualized, <<a?>> maps to
/// [[a?]] and <a!> to [a!]. `forward` expects the diamond side, `inverse`
/// the box side; anything outside the source fragment is rejected.
FormulaPtr dual_transform(const FormulaPtr& phi, DualDirection direction = DualDirection::forward);

} // namespace ioconf

#endif
