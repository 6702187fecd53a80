#include "ioconf/lts.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace ioconf {

const std::vector<StateId> Lts::no_successors_{};

std::string trace_text(const Trace& t) {
    std::string out;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i > 0) out += '.';
        out += t[i].text();
    }
    return out;
}

ParseError::ParseError(std::string msg, int line, int column)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg),
      line_(line),
      column_(column) {}

Lts::Builder& Lts::Builder::state(const std::string& id) {
    if (!states_.insert(id).second)
        throw std::invalid_argument("duplicate state declaration '" + id + "'");
    return *this;
}

Lts::Builder& Lts::Builder::transition(const std::string& src, const Action& a, const std::string& dst) {
    if (!states_.count(src)) throw std::invalid_argument("unknown state '" + src + "'");
    if (!states_.count(dst)) throw std::invalid_argument("unknown state '" + dst + "'");
    if (!alphabet_.has(a)) throw std::invalid_argument("unknown action '" + a.text() + "'");
    transitions_.insert({src, a, dst});
    return *this;
}

Lts::Builder& Lts::Builder::close_quiescence() {
    for (const auto& s : states_) {
        bool has_other_output = false;
        bool has_delta = false;
        for (const auto& [src, act, dst] : transitions_) {
            if (src != s || !act.is_output()) continue;
            if (act.is_delta())
                has_delta = true;
            else
                has_other_output = true;
        }
        if (!has_other_output && !has_delta)
            transitions_.insert({s, delta_action(), s});
    }
    return *this;
}

Lts Lts::Builder::build() const {
    Lts lts;
    lts.alphabet_ = alphabet_;
    lts.names_.assign(states_.begin(), states_.end());   // set iteration = lexicographic
    for (StateId i = 0; i < lts.names_.size(); ++i) lts.index_[lts.names_[i]] = i;
    lts.succ_.resize(lts.names_.size());
    for (const auto& [src, act, dst] : transitions_) {
        StateId s = lts.index_.at(src);
        StateId d = lts.index_.at(dst);
        lts.transitions_.push_back({s, act, d});
        lts.succ_[s][act].push_back(d);
    }
    std::sort(lts.transitions_.begin(), lts.transitions_.end());
    for (auto& per_state : lts.succ_)
        for (auto& [act, dsts] : per_state) std::sort(dsts.begin(), dsts.end());
    if (initial_) {
        if (!states_.count(*initial_)) throw std::invalid_argument("unknown state '" + *initial_ + "'");
        lts.initial_ = lts.index_.at(*initial_);
    }
    return lts;
}

StateId Lts::state(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw std::invalid_argument("unknown state '" + name + "'");
    return it->second;
}

const std::vector<StateId>& Lts::successors(StateId p, const Action& a) const {
    const auto& per_state = succ_.at(p);
    auto it = per_state.find(a);
    return it == per_state.end() ? no_successors_ : it->second;
}

std::set<Action> Lts::ins(StateId p) const {
    std::set<Action> result;
    for (const auto& [act, dsts] : succ_.at(p))
        if (act.is_input() && !dsts.empty()) result.insert(act);
    return result;
}

std::set<Action> Lts::outs(StateId p) const {
    std::set<Action> result;
    for (const auto& [act, dsts] : succ_.at(p))
        if (act.is_output() && !dsts.empty()) result.insert(act);
    return result;
}

StateSet Lts::reachable(StateId p) const {
    StateSet seen{p};
    std::vector<StateId> todo{p};
    while (!todo.empty()) {
        StateId s = todo.back();
        todo.pop_back();
        for (const auto& [act, dsts] : succ_.at(s))
            for (StateId d : dsts)
                if (seen.insert(d).second) todo.push_back(d);
    }
    return seen;
}

namespace {

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream is(line);
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

} // namespace

Lts parse_lts(const std::string& text, const LtsParseOptions& options) {
    Lts::Builder builder;
    struct PendingTrans {
        std::string src, act, dst;
        int line;
    };
    std::vector<PendingTrans> pending;
    std::optional<std::string> init;

    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto toks = split_ws(line);
        if (toks.empty()) continue;
        const std::string& kw = toks[0];
        try {
            if (kw == "inputs") {
                for (std::size_t i = 1; i < toks.size(); ++i) builder.input(toks[i]);
            } else if (kw == "outputs") {
                for (std::size_t i = 1; i < toks.size(); ++i) builder.output(toks[i]);
            } else if (kw == "state") {
                for (std::size_t i = 1; i < toks.size(); ++i) builder.state(toks[i]);
            } else if (kw == "init") {
                if (toks.size() != 2) throw std::invalid_argument("init expects one state");
                init = toks[1];
            } else if (kw == "trans") {
                if (toks.size() != 4) throw std::invalid_argument("trans expects 'trans src act dst'");
                pending.push_back({toks[1], toks[2], toks[3], lineno});
            } else {
                throw std::invalid_argument("unknown directive '" + kw + "'");
            }
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what(), lineno);
        }
    }
    for (const auto& t : pending) {
        try {
            builder.transition(t.src, parse_action(t.act), t.dst);
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what(), t.line);
        }
    }
    if (init) {
        try {
            builder.initial(*init);
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what());
        }
    }
    if (options.close_quiescence) builder.close_quiescence();
    Lts lts = builder.build();
    if (options.strict) {
        auto report = validate_quiescence(lts);
        if (!report.ok())
            throw ParseError("not quiescence-coherent: " + report.violations[0].state + " " +
                             violation_text(report.violations[0].kind));
    }
    return lts;
}

Lts load_lts(const std::string& path, const LtsParseOptions& options) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_lts(buf.str(), options);
}

std::string print_lts(const Lts& lts) {
    std::ostringstream out;
    out << "inputs";
    for (const auto& a : lts.alphabet().inputs()) out << ' ' << a.name;
    out << "\noutputs";
    for (const auto& a : lts.alphabet().outputs()) out << ' ' << a.name;
    out << "\n";
    for (const auto& s : lts.state_names()) out << "state " << s << "\n";
    if (lts.initial()) out << "init " << lts.name_of(*lts.initial()) << "\n";
    for (const auto& t : lts.transitions())
        out << "trans " << lts.name_of(t.src) << ' ' << t.act.text() << ' ' << lts.name_of(t.dst) << "\n";
    return out.str();
}

std::string violation_text(QuiescenceViolation kind) {
    switch (kind) {
        case QuiescenceViolation::missing_delta_loop: return "missing-delta-loop";
        case QuiescenceViolation::delta_to_other_state: return "delta-to-other-state";
        case QuiescenceViolation::delta_alongside_output: return "delta-alongside-output";
    }
    return "?";
}

QuiescenceReport validate_quiescence(const Lts& lts) {
    QuiescenceReport report;
    const Action delta = delta_action();
    for (StateId p = 0; p < lts.state_count(); ++p) {
        bool other_output = false;
        for (const auto& a : lts.outs(p))
            if (!a.is_delta()) other_output = true;
        const auto& delta_succ = lts.successors(p, delta);
        bool delta_loop = std::find(delta_succ.begin(), delta_succ.end(), p) != delta_succ.end();
        for (StateId d : delta_succ)
            if (d != p) {
                report.violations.push_back({lts.name_of(p), QuiescenceViolation::delta_to_other_state});
                break;
            }
        if (!delta_succ.empty() && other_output)
            report.violations.push_back({lts.name_of(p), QuiescenceViolation::delta_alongside_output});
        if (!other_output && !delta_loop)
            report.violations.push_back({lts.name_of(p), QuiescenceViolation::missing_delta_loop});
    }
    std::sort(report.violations.begin(), report.violations.end());
    return report;
}

Initials initials(const Lts& lts, StateId p) {
    if (p >= lts.state_count()) throw std::invalid_argument("unknown state");
    return {lts.ins(p), lts.outs(p)};
}

StateSet after(const Lts& lts, const StateSet& start, const Trace& trace) {
    StateSet current = start;
    for (const auto& a : trace) {
        StateSet next;
        for (StateId p : current)
            for (StateId q : lts.successors(p, a)) next.insert(q);
        current = std::move(next);
        if (current.empty()) break;
    }
    return current;
}

StateSet after(const Lts& lts, StateId start, const Trace& trace) {
    return after(lts, StateSet{start}, trace);
}

std::set<Action> out_of(const Lts& lts, const StateSet& states) {
    std::set<Action> result;
    for (StateId p : states)
        for (const auto& a : lts.outs(p)) result.insert(a);
    return result;
}

Classification classify(const Lts& lts, StateId p) {
    if (p >= lts.state_count()) throw std::invalid_argument("unknown state");
    Classification c{true, true};
    const auto inputs = lts.alphabet().inputs();
    for (StateId s : lts.reachable(p)) {
        for (const auto& a : inputs)
            if (!lts.enables(s, a)) c.input_enabled = false;
        for (const auto& a : lts.alphabet().all())
            if (lts.successors(s, a).size() > 1) c.deterministic = false;
    }
    return c;
}

} // namespace ioconf
