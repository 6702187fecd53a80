#ifndef IOCONF_FRAGMENT_HPP
#define IOCONF_FRAGMENT_HPP

#include "ioconf/formula.hpp"

#include <set>
#include <string>

namespace ioconf {

/// The modal-logic fragments the toolkit knows about.
///  - hml:        <a>, [a] over any action, booleans
///  - l_iocos:    <<a?>>, <a!>, booleans
///  - l_tiocos:   [[a?]], [a!], booleans
///  - l_equiv:    boolean combinations of l_iocos and l_tiocos formulas
///  - l_s:        <a>, booleans (plain simulation)
///  - l_rs:       l_s plus [a]ff (ready simulation)
///  - l_cc:       <a> for covariant actions, [b] for contravariant ones
///  - bm_force:   exactly <|sigma|>[b!]ff
///  - bm_box:     exactly [|sigma|][b!]ff
enum class Fragment { hml, l_iocos, l_tiocos, l_equiv, l_s, l_rs, l_cc, bm_force, bm_box };

std::string fragment_name(Fragment f);
Fragment fragment_from_name(const std::string& name);

/// Partition of the alphabet for covariant-contravariant simulation:
/// diamonds over covariant + bivariant, boxes over contravariant +
/// bivariant. The default orientation is covariant = inputs,
/// contravariant = outputs.
struct CcPartition {
    std::set<Action> covariant;       // A^r
    std::set<Action> contravariant;   // A^l
    std::set<Action> bivariant;       // A^bi

    bool allows_dia(const Action& a) const { return covariant.count(a) || bivariant.count(a); }
    bool allows_box(const Action& a) const { return contravariant.count(a) || bivariant.count(a); }

    static CcPartition default_for(const Alphabet& alphabet);
};

bool in_fragment(const FormulaPtr& phi, Fragment fragment, const CcPartition* cc = nullptr);

/// Every fragment whose grammar generates the (closed) formula. Throws if
/// the formula contains variables.
std::set<Fragment> fragment_of(const FormulaPtr& phi, const CcPartition* cc = nullptr);

} // namespace ioconf

#endif
