#ifndef IOCONF_ENUMERATE_HPP
#define IOCONF_ENUMERATE_HPP

#include "ioconf/fragment.hpp"
#include "ioconf/lts.hpp"

#include <cstddef>
#include <vector>

namespace ioconf {

/// Exhaustive, duplicate-free enumeration of a fragment up to a modal
/// depth. Formulas are layered: at each modal level a formula is tt, ff, a
/// modal atom over a level-(d-1) formula, or a single conjunction or
/// disjunction of 2..width distinct modal atoms of that level. Canonical
/// construction makes the count exact, so a closed-form recount is
/// available as an independent oracle (see enumerate_count).
///
/// For bm_force / bm_box the enumeration is every <|sigma|>[b!]ff
/// (respectively [|sigma|][b!]ff) with |sigma| <= depth; width is unused.
///
/// Throws std::length_error when more than `cap` formulas would be
/// produced.
std::vector<FormulaPtr> enumerate_fragment(const Alphabet& alphabet, Fragment fragment, int depth,
                                           int width, std::size_t cap = 200000,
                                           const CcPartition* cc = nullptr);

/// Closed-form count of enumerate_fragment's output, computed without
/// building formulas.
std::size_t enumerate_count(const Alphabet& alphabet, Fragment fragment, int depth, int width,
                            const CcPartition* cc = nullptr);

/// Bounded Beohar-Mousavi check: for every trace sigma with |sigma| <=
/// trace_bound and every output b,
///   s |= <|sigma|>[b]ff   implies   i |= [|sigma|][b]ff .
/// A necessary condition for trace conformance; exact once the bound
/// covers the synchronized construction's diameter.
bool bm_ioco_bounded(const Lts& lts, StateId i, StateId s, int trace_bound);

} // namespace ioconf

#endif
