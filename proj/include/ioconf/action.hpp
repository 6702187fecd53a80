#ifndef IOCONF_ACTION_HPP
#define IOCONF_ACTION_HPP

#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace ioconf {

enum class ActionKind { input, output };

/// An action is a named label tagged as input (a?) or output (a!).
/// The quiescence action is the reserved output `delta!`.
struct Action {
    std::string name;
    ActionKind kind = ActionKind::output;

    Action() = default;
    Action(std::string n, ActionKind k) : name(std::move(n)), kind(k) {}

    bool is_input() const { return kind == ActionKind::input; }
    bool is_output() const { return kind == ActionKind::output; }
    bool is_delta() const { return kind == ActionKind::output && name == "delta"; }

    /// Rendered as written in transition labels and formulas: `a?` or `a!`.
    std::string text() const { return name + (is_input() ? "?" : "!"); }

    friend bool operator==(const Action& a, const Action& b) {
        return a.kind == b.kind && a.name == b.name;
    }
    friend bool operator!=(const Action& a, const Action& b) { return !(a == b); }
    friend bool operator<(const Action& a, const Action& b) {
        if (a.name != b.name) return a.name < b.name;
        return a.kind < b.kind;
    }
};

inline Action input_action(std::string name) { return Action(std::move(name), ActionKind::input); }
inline Action output_action(std::string name) { return Action(std::move(name), ActionKind::output); }
inline Action delta_action() { return output_action("delta"); }

/// Parses `a?` / `a!` transition labels. Throws std::invalid_argument on
/// a missing kind marker.
Action parse_action(const std::string& token);

/// The partitioned alphabet L = I + O of an LTS. Inputs and outputs are
/// disjoint as kinded actions; the same base name may occur on both sides
/// (a? and a! are different actions). `delta` is always an output and is
/// rejected as an input name.
class Alphabet {
public:
    Alphabet() { outputs_.insert("delta"); }

    void add_input(const std::string& name);
    void add_output(const std::string& name);

    bool has(const Action& a) const {
        const auto& side = a.is_input() ? inputs_ : outputs_;
        return side.count(a.name) != 0;
    }
    bool has_input(const std::string& name) const { return inputs_.count(name) != 0; }
    bool has_output(const std::string& name) const { return outputs_.count(name) != 0; }

    std::vector<Action> inputs() const;
    std::vector<Action> outputs() const;   // includes delta!
    std::vector<Action> all() const;       // inputs then outputs, each sorted

    std::size_t input_count() const { return inputs_.size(); }
    std::size_t output_count() const { return outputs_.size(); }

    friend bool operator==(const Alphabet& a, const Alphabet& b) {
        return a.inputs_ == b.inputs_ && a.outputs_ == b.outputs_;
    }

private:
    std::set<std::string> inputs_;
    std::set<std::string> outputs_;
};

} // namespace ioconf

#endif
