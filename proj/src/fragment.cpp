#include "ioconf/fragment.hpp"

namespace ioconf {

std::string fragment_name(Fragment f) {
    switch (f) {
        case Fragment::hml: return "hml";
        case Fragment::l_iocos: return "liocos";
        case Fragment::l_tiocos: return "tliocos";
        case Fragment::l_equiv: return "lequiv";
        case Fragment::l_s: return "ls";
        case Fragment::l_rs: return "lrs";
        case Fragment::l_cc: return "lcc";
        case Fragment::bm_force: return "bmforce";
        case Fragment::bm_box: return "bmbox";
    }
    return "?";
}

Fragment fragment_from_name(const std::string& name) {
    for (Fragment f : {Fragment::hml, Fragment::l_iocos, Fragment::l_tiocos, Fragment::l_equiv,
                       Fragment::l_s, Fragment::l_rs, Fragment::l_cc, Fragment::bm_force,
                       Fragment::bm_box})
        if (fragment_name(f) == name) return f;
    throw std::invalid_argument("unknown fragment '" + name + "'");
}

CcPartition CcPartition::default_for(const Alphabet& alphabet) {
    CcPartition p;
    for (const auto& a : alphabet.inputs()) p.covariant.insert(a);
    for (const auto& a : alphabet.outputs()) p.contravariant.insert(a);
    return p;
}

namespace {

bool closed_check(const FormulaPtr& phi) {
    if (!free_vars(phi).empty())
        throw std::invalid_argument("fragment classification expects a closed formula");
    return true;
}

bool boolean_closure(const FormulaPtr& phi, bool (*leaf)(const FormulaPtr&, const CcPartition*),
                     const CcPartition* cc) {
    switch (phi->kind()) {
        case FormulaKind::truth:
        case FormulaKind::falsity:
            return true;
        case FormulaKind::conj:
        case FormulaKind::disj:
            for (const auto& c : phi->children())
                if (!boolean_closure(c, leaf, cc)) return false;
            return true;
        default:
            return leaf(phi, cc);
    }
}

bool hml_leaf(const FormulaPtr& phi, const CcPartition* cc) {
    if (phi->kind() != FormulaKind::dia && phi->kind() != FormulaKind::box) return false;
    return boolean_closure(phi->child(), hml_leaf, cc);
}

bool ls_leaf(const FormulaPtr& phi, const CcPartition* cc) {
    if (phi->kind() != FormulaKind::dia) return false;
    return boolean_closure(phi->child(), ls_leaf, cc);
}

bool lrs_leaf(const FormulaPtr& phi, const CcPartition* cc) {
    if (phi->kind() == FormulaKind::box) return phi->child()->is_false();
    if (phi->kind() != FormulaKind::dia) return false;
    return boolean_closure(phi->child(), lrs_leaf, cc);
}

bool liocos_leaf(const FormulaPtr& phi, const CcPartition* cc) {
    if (phi->kind() == FormulaKind::nfdia)
        return boolean_closure(phi->child(), liocos_leaf, cc);
    if (phi->kind() == FormulaKind::dia && phi->action().is_output())
        return boolean_closure(phi->child(), liocos_leaf, cc);
    return false;
}

bool tliocos_leaf(const FormulaPtr& phi, const CcPartition* cc) {
    if (phi->kind() == FormulaKind::fbox)
        return boolean_closure(phi->child(), tliocos_leaf, cc);
    if (phi->kind() == FormulaKind::box && phi->action().is_output())
        return boolean_closure(phi->child(), tliocos_leaf, cc);
    return false;
}

bool lcc_leaf(const FormulaPtr& phi, const CcPartition* cc) {
    if (!cc) return false;
    if (phi->kind() == FormulaKind::dia && cc->allows_dia(phi->action()))
        return boolean_closure(phi->child(), lcc_leaf, cc);
    if (phi->kind() == FormulaKind::box && cc->allows_box(phi->action()))
        return boolean_closure(phi->child(), lcc_leaf, cc);
    return false;
}

bool lequiv_rec(const FormulaPtr& phi, const CcPartition* cc) {
    if (boolean_closure(phi, liocos_leaf, cc) || boolean_closure(phi, tliocos_leaf, cc)) return true;
    if (phi->kind() == FormulaKind::conj || phi->kind() == FormulaKind::disj) {
        for (const auto& c : phi->children())
            if (!lequiv_rec(c, cc)) return false;
        return true;
    }
    return false;
}

bool bm_shape(const FormulaPtr& phi, FormulaKind trace_kind) {
    if (phi->kind() != trace_kind) return false;
    const auto& body = phi->child();
    return body->kind() == FormulaKind::box && body->action().is_output() && body->child()->is_false();
}

} // namespace

bool in_fragment(const FormulaPtr& phi, Fragment fragment, const CcPartition* cc) {
    closed_check(phi);
    switch (fragment) {
        case Fragment::hml: return boolean_closure(phi, hml_leaf, cc);
        case Fragment::l_s: return boolean_closure(phi, ls_leaf, cc);
        case Fragment::l_rs: return boolean_closure(phi, lrs_leaf, cc);
        case Fragment::l_iocos: return boolean_closure(phi, liocos_leaf, cc);
        case Fragment::l_tiocos: return boolean_closure(phi, tliocos_leaf, cc);
        case Fragment::l_cc: return cc != nullptr && boolean_closure(phi, lcc_leaf, cc);
        case Fragment::l_equiv: return lequiv_rec(phi, cc);
        case Fragment::bm_force: return bm_shape(phi, FormulaKind::force_trace);
        case Fragment::bm_box: return bm_shape(phi, FormulaKind::box_trace);
    }
    return false;
}

std::set<Fragment> fragment_of(const FormulaPtr& phi, const CcPartition* cc) {
    std::set<Fragment> result;
    for (Fragment f : {Fragment::hml, Fragment::l_iocos, Fragment::l_tiocos, Fragment::l_equiv,
                       Fragment::l_s, Fragment::l_rs, Fragment::l_cc, Fragment::bm_force,
                       Fragment::bm_box})
        if (in_fragment(phi, f, cc)) result.insert(f);
    return result;
}

} // namespace ioconf
