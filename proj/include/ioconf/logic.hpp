#ifndef IOCONF_LOGIC_HPP
#define IOCONF_LOGIC_HPP

#include "ioconf/formula.hpp"
#include "ioconf/lts.hpp"

#include <map>
#include <string>
#include <vector>

namespace ioconf {

/// Maps formula variables to the states where they hold.
using Environment = std::map<std::string, StateSet>;

enum class Polarity { greatest, least };

/// A finite equation system X1 = phi1, ..., Xn = phi n with one fixed-point
/// polarity. Every variable free in a right-hand side must be bound by some
/// equation.
struct Declaration {
    Polarity polarity = Polarity::greatest;
    std::vector<std::pair<std::string, FormulaPtr>> equations;   // declaration order

    bool binds(const std::string& var) const;
    const FormulaPtr& body(const std::string& var) const;
    /// Throws if some right-hand side mentions an unbound variable.
    void check_closed() const;
};

/// Exact satisfaction per the semantic clauses, with free variables read
/// from `env`. Throws on an unbound variable.
bool satisfies(const Lts& lts, StateId p, const FormulaPtr& phi, const Environment& env = {});

/// Extremal fixed point of the equation system over the powerset lattice:
/// greatest polarity iterates down from the top environment, least up from
/// the bottom, sweeping equations in declaration order until stable.
Environment eval_declaration(const Lts& lts, const Declaration& decl);

/// Satisfaction of a declared variable under the declaration's fixed point.
bool satisfies_declared(const Lts& lts, StateId p, const Declaration& decl, const std::string& root);

/// The characteristic equation system for state q: one greatest-fixed-point
/// equation per state reachable from q,
///   X_q = AND_{a? in ins(q)} [[a?]] OR_{q -a?-> q'} X_q'
///       & AND_{a! in O}      [a!]  OR_{q -a!-> q'} X_q' .
/// A state p satisfies the root variable exactly when p conforms to q.
struct CharacteristicFormula {
    Declaration declaration;
    std::string root;
};

CharacteristicFormula characteristic_formula(const Lts& lts, StateId q);

/// Declarations in text form:  max X = phi; Y = psi;   (or `min ...`).
Declaration parse_declaration(const std::string& text);
std::string print_declaration(const Declaration& decl);

} // namespace ioconf

#endif
