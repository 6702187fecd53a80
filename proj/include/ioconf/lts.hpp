#ifndef IOCONF_LTS_HPP
#define IOCONF_LTS_HPP

#include "ioconf/action.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace ioconf {

using StateId = std::uint32_t;
using StateSet = std::set<StateId>;

/// A finite trace over L.
using Trace = std::vector<Action>;

std::string trace_text(const Trace& t);

struct Transition {
    StateId src;
    Action act;
    StateId dst;

    friend bool operator<(const Transition& a, const Transition& b) {
        if (a.src != b.src) return a.src < b.src;
        if (a.act != b.act) return a.act < b.act;
        return a.dst < b.dst;
    }
    friend bool operator==(const Transition& a, const Transition& b) {
        return a.src == b.src && a.act == b.act && a.dst == b.dst;
    }
};

/// Parse error with position information.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string msg, int line = 0, int column = 0);
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

/// A finite labelled transition system with inputs, outputs and quiescence.
/// States are opaque string identifiers; internally they are indexed in
/// lexicographic order so all reports come out deterministic. Values are
/// immutable once built (via Builder or parse_lts) and safe to share.
class Lts {
public:
    class Builder {
    public:
        Builder& alphabet(Alphabet a) { alphabet_ = std::move(a); return *this; }
        Builder& input(const std::string& name) { alphabet_.add_input(name); return *this; }
        Builder& output(const std::string& name) { alphabet_.add_output(name); return *this; }
        Builder& state(const std::string& id);
        Builder& transition(const std::string& src, const Action& a, const std::string& dst);
        Builder& initial(const std::string& id) { initial_ = id; return *this; }
        /// Adds a delta! self-loop to every state with no non-delta output
        /// and no delta transition yet.
        Builder& close_quiescence();
        Lts build() const;

    private:
        Alphabet alphabet_;
        std::set<std::string> states_;
        std::set<std::tuple<std::string, Action, std::string>> transitions_;
        std::optional<std::string> initial_;
    };

    const Alphabet& alphabet() const { return alphabet_; }
    std::size_t state_count() const { return names_.size(); }
    const std::vector<std::string>& state_names() const { return names_; }

    bool has_state(const std::string& name) const { return index_.count(name) != 0; }
    StateId state(const std::string& name) const;   // throws on unknown state
    const std::string& name_of(StateId s) const { return names_.at(s); }
    std::optional<StateId> initial() const { return initial_; }

    const std::vector<Transition>& transitions() const { return transitions_; }

    /// Successors of p under a, in ascending StateId order.
    const std::vector<StateId>& successors(StateId p, const Action& a) const;
    bool enables(StateId p, const Action& a) const { return !successors(p, a).empty(); }

    /// ins(p) and outs(p).
    std::set<Action> ins(StateId p) const;
    std::set<Action> outs(StateId p) const;

    /// States reachable from p (p included).
    StateSet reachable(StateId p) const;

private:
    friend class Builder;
    Alphabet alphabet_;
    std::vector<std::string> names_;
    std::map<std::string, StateId> index_;
    std::vector<Transition> transitions_;
    std::vector<std::map<Action, std::vector<StateId>>> succ_;
    std::optional<StateId> initial_;
    static const std::vector<StateId> no_successors_;
};

struct LtsParseOptions {
    bool close_quiescence = false;
    bool strict = false;   // reject LTSs that violate quiescence coherence
};

/// Parses the line-oriented LTS format:
///   inputs a b ...
///   outputs x y ...          (delta is implicit, may be listed)
///   state p q ...
///   init p
///   trans p a? q
/// `#` starts a comment.
Lts parse_lts(const std::string& text, const LtsParseOptions& options = {});
Lts load_lts(const std::string& path, const LtsParseOptions& options = {});

/// Serializes back into the input format, deterministically.
std::string print_lts(const Lts& lts);

enum class QuiescenceViolation { missing_delta_loop, delta_to_other_state, delta_alongside_output };

struct QuiescenceReport {
    struct Entry {
        std::string state;
        QuiescenceViolation kind;
        friend bool operator<(const Entry& a, const Entry& b) {
            if (a.state != b.state) return a.state < b.state;
            return a.kind < b.kind;
        }
        friend bool operator==(const Entry& a, const Entry& b) {
            return a.state == b.state && a.kind == b.kind;
        }
    };
    std::vector<Entry> violations;
    bool ok() const { return violations.empty(); }
};

std::string violation_text(QuiescenceViolation kind);

/// Checks quiescence coherence at every state:
/// p -delta!-> p' iff p = p' and p has no other output transition.
QuiescenceReport validate_quiescence(const Lts& lts);

struct Initials {
    std::set<Action> ins;
    std::set<Action> outs;
};

Initials initials(const Lts& lts, StateId p);

/// Image of `start` under the trace relation.
StateSet after(const Lts& lts, const StateSet& start, const Trace& trace);
StateSet after(const Lts& lts, StateId start, const Trace& trace);

/// Out(T) = union of outs(p) over p in T.
std::set<Action> out_of(const Lts& lts, const StateSet& states);

struct Classification {
    bool input_enabled = false;
    bool deterministic = false;
};

/// input_enabled: every state reachable from p enables every input in I.
/// deterministic: no reachable state has two distinct a-successors.
Classification classify(const Lts& lts, StateId p);

} // namespace ioconf

#endif
