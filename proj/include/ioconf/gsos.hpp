#ifndef IOCONF_GSOS_HPP
#define IOCONF_GSOS_HPP

#include "ioconf/formula.hpp"
#include "ioconf/lts.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace ioconf {

/// Terms over a signature: variables, operator applications, and states of
/// a base LTS written `@state`.
struct Term {
    enum class Kind { variable, op, state };
    Kind kind = Kind::variable;
    std::string name;
    std::vector<Term> children;

    static Term variable(std::string n) { return {Kind::variable, std::move(n), {}}; }
    static Term state(std::string n) { return {Kind::state, std::move(n), {}}; }
    static Term op(std::string n, std::vector<Term> ch = {}) { return {Kind::op, std::move(n), std::move(ch)}; }

    bool is_closed() const;
    /// Variables in order of first occurrence.
    std::vector<std::string> vars() const;
    bool mentions_var(const std::string& v) const;

    friend bool operator==(const Term& a, const Term& b);
};

std::string print_term(const Term& t);

struct Signature {
    std::map<std::string, int> arity;

    bool has(const std::string& op) const { return arity.count(op) != 0; }
    int arity_of(const std::string& op) const;
    void declare(const std::string& op, int arity);
};

/// Parses a term against a signature: declared names are operators,
/// `@name` is a base-LTS state, anything else a variable.
Term parse_term(const std::string& text, const Signature& sig);

struct Premise {
    std::string source;   // one of the rule's source variables
    Action action;
    bool positive = true;
    std::string target;   // bound variable; positive premises only

    friend bool operator==(const Premise& a, const Premise& b) {
        return a.source == b.source && a.action == b.action && a.positive == b.positive &&
               a.target == b.target;
    }
};

/// One GSOS deduction rule. All rules defining the same operator share the
/// source tuple f(x1,...,xn); source and premise-bound variables are
/// pairwise distinct.
struct GsosRule {
    std::string op;
    std::vector<std::string> source_vars;
    std::vector<Premise> premises;
    Action conclusion;
    Term target;

    bool emits_input() const { return conclusion.is_input(); }
    bool emits_output() const { return conclusion.is_output(); }

    /// Positive/negative trigger for a source variable: the premise labels.
    std::set<Action> positive_trigger(const std::string& var) const;
    std::set<Action> negative_trigger(const std::string& var) const;
};

std::string print_rule(const GsosRule& rule);

struct GsosLanguage {
    Signature signature;
    std::vector<GsosRule> rules;
    Alphabet alphabet;

    std::vector<std::size_t> rules_for(const std::string& op) const;
};

/// Parses the line-oriented rule format:
///   inputs a b            (optional; pins the alphabet)
///   outputs x y
///   sig f/1 and2/2 nil/0
///   x -a?-> y |- f(x) -a?-> f(y)
///   x -/b!-> |- f(x) -delta!-> f(x)
/// Premises are comma-separated; `|-` separates them from the conclusion;
/// an axiom has an empty left side. Actions not covered by header lines
/// are inferred into the alphabet.
GsosLanguage parse_gsos(const std::string& text);
GsosLanguage load_gsos(const std::string& path);

/// Derives the transition system over closed terms reachable from the
/// roots, by structural induction on terms: premises of a rule are
/// evaluated against the (already determined) transitions of the argument
/// subterms. State names in the result are canonical term prints.
/// Throws when more than `cap` distinct closed terms are needed.
Lts derive_lts(const GsosLanguage& lang, const Lts& base, const std::vector<Term>& roots,
               std::size_t cap = 10000);
Lts derive_lts(const GsosLanguage& lang, const Lts& base, const Term& root, std::size_t cap = 10000);

// ---------------------------------------------------------------------------
// Rule-format checking
// ---------------------------------------------------------------------------

struct IocosFormatReport {
    /// An input-emitting rule with an input-labelled negative premise or an
    /// output-labelled positive premise.
    struct PremiseKindViolation {
        std::size_t rule;
        std::string reason;
    };
    /// A pair (r, r') of a?-emitting rules for which no a?-emitting rule
    /// r'' with r's triggers bounded and r''s in-target input premises in
    /// H' exists. `blocked_at` is the deepest sub-clause ('a', 'b' or 'c')
    /// some candidate reached before failing.
    struct PairViolation {
        std::size_t rule_r;
        std::size_t rule_rprime;
        char blocked_at;
    };
    std::vector<PremiseKindViolation> clause1;
    std::vector<PairViolation> clause2;
    std::vector<PremiseKindViolation> clause3;

    bool pass() const { return clause1.empty() && clause2.empty() && clause3.empty(); }
};

IocosFormatReport check_iocos_format(const GsosLanguage& lang);

/// Whether two premise sets can never be satisfied by one assignment of
/// states to the shared source variables: a premise and its negation, an
/// output premise against a quiescence premise on the same variable, or
/// jointly refusing every output.
bool contradicts(const std::vector<Premise>& h1, const std::vector<Premise>& h2,
                 const Alphabet& alphabet);

struct QuiescentConsistencyReport {
    /// [delta1]: a delta-rule/output-rule pair with jointly satisfiable
    /// premises, or a delta rule whose target is not f(y) with y_i = x_i or
    /// x_i -delta!-> y_i in H.
    struct Delta1Violation {
        std::size_t delta_rule;
        std::optional<std::size_t> output_rule;   // absent for target-shape violations
        std::string reason;
    };
    /// [delta2]: a premise-negation selection whose delta rule is missing.
    struct Delta2Violation {
        std::string op;
        std::string required_rule;
    };
    std::vector<Delta1Violation> delta1;
    std::vector<Delta2Violation> delta2;
    /// Set when the selection space was cut off by the cap; the verdict is
    /// then inconclusive rather than a pass.
    bool inconclusive = false;
    /// Rule containment under [delta2] is checked up to renaming of bound
    /// variables, premise order and duplicate premises.
    bool pass() const { return delta1.empty() && delta2.empty() && !inconclusive; }
};

QuiescentConsistencyReport check_quiescent_consistent(const GsosLanguage& lang,
                                                      std::size_t selection_cap = 4096);

/// Coherent-quiescent-behaviour probe at f(args): the root of the derived
/// system has a delta transition exactly to itself iff it has no other
/// output.
bool quiescence_property_probe(const GsosLanguage& lang, const Lts& base, const std::string& op,
                               const std::vector<Term>& args, std::size_t cap = 10000);

// ---------------------------------------------------------------------------
// Built-in operator families
// ---------------------------------------------------------------------------

/// n-ary synchronous merge `andN`: one rule per action, all arguments move
/// together.
GsosLanguage builtin_merge(int n, const Alphabet& alphabet);
/// Binary choice: either side moves on non-delta actions, delta jointly.
GsosLanguage builtin_choice(const Alphabet& alphabet);
/// Binary interleaving without quiescence rules.
GsosLanguage builtin_interleave(const Alphabet& alphabet);
/// Relabelling along a kind- and delta-preserving action map; actions not
/// mentioned map to themselves.
GsosLanguage builtin_relabel(const std::map<Action, Action>& map, const Alphabet& alphabet);
/// Restriction: drops transitions labelled by actions in `forbidden`
/// (delta! may not be restricted).
GsosLanguage builtin_restrict(const std::set<Action>& forbidden, const Alphabet& alphabet);

struct PrecongruenceResult {
    bool holds = false;
    std::optional<FormulaPtr> counterexample;   // distinguishes f(p) from f(q)
};

/// Checks that f applied to conformance-related argument pairs stays
/// related. Every p_i must conform to q_i on the base LTS (checked;
/// violations are reported as std::invalid_argument).
PrecongruenceResult precongruence_probe(const GsosLanguage& lang, const Lts& base, const std::string& op,
                                        const std::vector<std::pair<StateId, StateId>>& pairs,
                                        std::size_t cap = 10000);

} // namespace ioconf

#endif
