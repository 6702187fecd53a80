#ifndef IOCONF_DECOMPOSITION_HPP
#define IOCONF_DECOMPOSITION_HPP

#include "ioconf/formula.hpp"
#include "ioconf/gsos.hpp"

#include <map>
#include <string>
#include <vector>

namespace ioconf {

/// A rule specialized to a term: either an operator rule with its source
/// variables renamed to the term's argument variables, or the variable
/// ruloid x -a-> x' / x -a-> x'.
struct Ruloid {
    std::vector<Premise> premises;
    Action action;
    Term target;                 // a variable or a flat operator term
    bool for_variable = false;
};

/// Maps argument variables to the formula each instantiation must satisfy;
/// variables not present are unconstrained (tt).
using DecompositionMap = std::map<std::string, FormulaPtr>;

FormulaPtr map_entry(const DecompositionMap& map, const std::string& var);
std::string print_decomposition_map(const DecompositionMap& map);

/// The rules (as ruloids) that can emit `a` from t. t must be a variable or
/// a flat operator application over distinct variables; targets of the
/// returned ruloids must again be flat, otherwise this throws.
std::vector<Ruloid> rules_emitting(const GsosLanguage& lang, const Term& t, const Action& a);

/// One picked premise per ruloid.
struct PremiseChoice {
    std::vector<Premise> picks;   // aligned with the ruloid list
};

/// The formula stating that premise `gamma` fails at whatever is
/// substituted for x: <b!>tt for x -/b!->, <<b?>>ff for x -b?-> x', tt when
/// gamma talks about another variable.
FormulaPtr neg_premise(const Premise& gamma, const std::string& x);

/// All ways of picking one premise from every ruloid; empty when some
/// ruloid has no premises. Throws std::length_error beyond `cap` choices.
std::vector<PremiseChoice> chi_functions(const std::vector<Ruloid>& ruloids, std::size_t cap = 4096);

/// psi_eta: conjunction of neg(eta(r), x) over all ruloids, per variable.
DecompositionMap psi_of(const std::vector<Ruloid>& ruloids, const PremiseChoice& eta,
                        const std::vector<std::string>& vars);

/// Modal decomposition t^-1(phi) for the non-forcing-diamond logic over
/// rules with flat targets. Results are deduplicated by canonical printing
/// and ordered deterministically.
std::vector<DecompositionMap> decompose(const GsosLanguage& lang, const Term& t, const FormulaPtr& phi,
                                        std::size_t cap = 4096);

struct DecompositionCheck {
    bool direct = false;       // sigma(t) |= phi on the derived system
    bool decomposed = false;   // some map in t^-1(phi) holds argument-wise
    bool format_ok = false;    // agreement is only guaranteed in format
};

/// Evaluates both sides of the decomposition theorem for a closing
/// substitution (variable -> base state). Disagreement is reported, not
/// asserted; it is expected exactly when the rules leave the format.
DecompositionCheck verify_decomposition(const GsosLanguage& lang, const Lts& base, const Term& t,
                                        const FormulaPtr& phi,
                                        const std::map<std::string, StateId>& substitution,
                                        std::size_t cap = 4096);

} // namespace ioconf

#endif
