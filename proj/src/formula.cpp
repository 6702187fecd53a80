#include "ioconf/formula.hpp"

#include <algorithm>
#include <set>

namespace ioconf {

struct FormulaFactory {
    static FormulaPtr node(FormulaKind k, Action a, Trace t, std::string v, std::vector<FormulaPtr> ch) {
        auto n = std::shared_ptr<Formula>(new Formula());
        n->kind_ = k;
        n->action_ = std::move(a);
        n->trace_ = std::move(t);
        n->var_ = std::move(v);
        n->children_ = std::move(ch);
        return n;
    }
};

FormulaPtr f_true() {
    static FormulaPtr instance = FormulaFactory::node(FormulaKind::truth, {}, {}, {}, {});
    return instance;
}

FormulaPtr f_false() {
    static FormulaPtr instance = FormulaFactory::node(FormulaKind::falsity, {}, {}, {}, {});
    return instance;
}

namespace {

int kind_rank(FormulaKind k) { return static_cast<int>(k); }

int compare_ptr(const FormulaPtr& a, const FormulaPtr& b) { return compare(*a, *b); }

FormulaPtr boolean_node(FormulaKind kind, std::vector<FormulaPtr> children) {
    const bool conj = kind == FormulaKind::conj;
    const FormulaPtr absorb = conj ? f_false() : f_true();
    const FormulaPtr neutral = conj ? f_true() : f_false();

    std::vector<FormulaPtr> flat;
    for (auto& c : children) {
        if (!c) throw std::invalid_argument("null formula child");
        if (c->kind() == kind) {
            for (auto& g : c->children()) flat.push_back(g);
        } else {
            flat.push_back(std::move(c));
        }
    }
    std::vector<FormulaPtr> kept;
    for (auto& c : flat) {
        if (c->kind() == absorb->kind()) return absorb;
        if (c->kind() == neutral->kind()) continue;
        kept.push_back(std::move(c));
    }
    std::sort(kept.begin(), kept.end(),
              [](const FormulaPtr& a, const FormulaPtr& b) { return compare_ptr(a, b) < 0; });
    kept.erase(std::unique(kept.begin(), kept.end(),
                           [](const FormulaPtr& a, const FormulaPtr& b) { return compare_ptr(a, b) == 0; }),
               kept.end());
    if (kept.empty()) return neutral;
    if (kept.size() == 1) return kept.front();
    return FormulaFactory::node(kind, {}, {}, {}, std::move(kept));
}

FormulaPtr modal_node(FormulaKind kind, const Action& a, FormulaPtr phi) {
    if (!phi) throw std::invalid_argument("null formula child");
    if ((kind == FormulaKind::nfdia || kind == FormulaKind::fbox) && !a.is_input()) {
        const char* op = kind == FormulaKind::nfdia ? "non-forcing diamond" : "forcing box";
        throw std::invalid_argument(std::string(op) + " requires an input action, got '" + a.text() + "'");
    }
    return FormulaFactory::node(kind, a, {}, {}, {std::move(phi)});
}

FormulaPtr trace_node(FormulaKind kind, const Trace& t, FormulaPtr phi) {
    if (!phi) throw std::invalid_argument("null formula child");
    return FormulaFactory::node(kind, {}, t, {}, {std::move(phi)});
}

} // namespace

FormulaPtr f_and(std::vector<FormulaPtr> children) { return boolean_node(FormulaKind::conj, std::move(children)); }
FormulaPtr f_or(std::vector<FormulaPtr> children) { return boolean_node(FormulaKind::disj, std::move(children)); }
FormulaPtr f_dia(const Action& a, FormulaPtr phi) { return modal_node(FormulaKind::dia, a, std::move(phi)); }
FormulaPtr f_box(const Action& a, FormulaPtr phi) { return modal_node(FormulaKind::box, a, std::move(phi)); }
FormulaPtr f_nfdia(const Action& a, FormulaPtr phi) { return modal_node(FormulaKind::nfdia, a, std::move(phi)); }
FormulaPtr f_fbox(const Action& a, FormulaPtr phi) { return modal_node(FormulaKind::fbox, a, std::move(phi)); }
FormulaPtr f_force_trace(const Trace& t, FormulaPtr phi) { return trace_node(FormulaKind::force_trace, t, std::move(phi)); }
FormulaPtr f_box_trace(const Trace& t, FormulaPtr phi) { return trace_node(FormulaKind::box_trace, t, std::move(phi)); }

FormulaPtr f_var(const std::string& name) {
    if (name.empty()) throw std::invalid_argument("empty variable name");
    return FormulaFactory::node(FormulaKind::var, {}, {}, name, {});
}

int compare(const Formula& a, const Formula& b) {
    if (a.kind() != b.kind()) return kind_rank(a.kind()) < kind_rank(b.kind()) ? -1 : 1;
    switch (a.kind()) {
        case FormulaKind::truth:
        case FormulaKind::falsity:
            return 0;
        case FormulaKind::var:
            return a.var().compare(b.var());
        case FormulaKind::dia:
        case FormulaKind::box:
        case FormulaKind::nfdia:
        case FormulaKind::fbox: {
            if (a.action() != b.action()) return a.action() < b.action() ? -1 : 1;
            return compare(*a.child(), *b.child());
        }
        case FormulaKind::force_trace:
        case FormulaKind::box_trace: {
            if (a.trace() != b.trace())
                return std::lexicographical_compare(a.trace().begin(), a.trace().end(), b.trace().begin(),
                                                    b.trace().end())
                           ? -1
                           : 1;
            return compare(*a.child(), *b.child());
        }
        case FormulaKind::conj:
        case FormulaKind::disj: {
            std::size_t n = std::min(a.children().size(), b.children().size());
            for (std::size_t i = 0; i < n; ++i) {
                int c = compare(*a.children()[i], *b.children()[i]);
                if (c != 0) return c;
            }
            if (a.children().size() != b.children().size())
                return a.children().size() < b.children().size() ? -1 : 1;
            return 0;
        }
    }
    return 0;
}

bool equal(const FormulaPtr& a, const FormulaPtr& b) { return compare(*a, *b) == 0; }

namespace {

void print_rec(const Formula& phi, std::string& out, int parent_level);

// parent_level: 0 = or-context, 1 = and-context, 2 = modal argument.
void print_children(const Formula& phi, std::string& out, const char* sep, int child_level) {
    for (std::size_t i = 0; i < phi.children().size(); ++i) {
        if (i > 0) out += sep;
        print_rec(*phi.children()[i], out, child_level);
    }
}

void print_rec(const Formula& phi, std::string& out, int parent_level) {
    switch (phi.kind()) {
        case FormulaKind::truth: out += "tt"; return;
        case FormulaKind::falsity: out += "ff"; return;
        case FormulaKind::var: out += phi.var(); return;
        case FormulaKind::disj: {
            bool paren = parent_level >= 1;
            if (paren) out += '(';
            print_children(phi, out, " | ", 1);
            if (paren) out += ')';
            return;
        }
        case FormulaKind::conj: {
            bool paren = parent_level >= 2;
            if (paren) out += '(';
            print_children(phi, out, " & ", 2);
            if (paren) out += ')';
            return;
        }
        case FormulaKind::dia:
            out += '<' + phi.action().text() + '>';
            print_rec(*phi.child(), out, 2);
            return;
        case FormulaKind::box:
            out += '[' + phi.action().text() + ']';
            print_rec(*phi.child(), out, 2);
            return;
        case FormulaKind::nfdia:
            out += "<<" + phi.action().text() + ">>";
            print_rec(*phi.child(), out, 2);
            return;
        case FormulaKind::fbox:
            out += "[[" + phi.action().text() + "]]";
            print_rec(*phi.child(), out, 2);
            return;
        case FormulaKind::force_trace:
            out += "<|" + trace_text(phi.trace()) + "|>";
            print_rec(*phi.child(), out, 2);
            return;
        case FormulaKind::box_trace:
            out += "[|" + trace_text(phi.trace()) + "|]";
            print_rec(*phi.child(), out, 2);
            return;
    }
}

} // namespace

std::string print_formula(const FormulaPtr& phi) {
    std::string out;
    print_rec(*phi, out, 0);
    return out;
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

namespace {

struct Lexer {
    explicit Lexer(const std::string& text) : text_(text) {}

    // Token kinds: punctuation strings, identifiers.
    struct Token {
        std::string text;
        bool ident = false;
        std::size_t pos = 0;
    };

    Token next() {
        skip_ws();
        Token t;
        t.pos = pos_;
        if (pos_ >= text_.size()) return t;   // empty text = EOF
        static const char* punct[] = {"<<", ">>", "[[", "]]", "<|", "|>", "[|", "|]",
                                      "<",  ">",  "[",  "]",  "(",  ")",  "&",  "|",
                                      ".",  "?",  "!",  "=",  ";"};
        for (const char* p : punct) {
            std::size_t n = std::string(p).size();
            if (text_.compare(pos_, n, p) == 0) {
                pos_ += n;
                t.text = p;
                return t;
            }
        }
        if (is_ident_char(text_[pos_])) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
            t.text = text_.substr(start, pos_ - start);
            t.ident = true;
            return t;
        }
        throw ParseError("unexpected character '" + std::string(1, text_[pos_]) + "' in formula", 0,
                         static_cast<int>(pos_));
    }

    Token peek() {
        std::size_t save = pos_;
        Token t = next();
        pos_ = save;
        return t;
    }

    static bool is_ident_char(char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' ||
               c == '\'';
    }

    void skip_ws() {
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' ||
                                       text_[pos_] == '\r'))
            ++pos_;
    }

    bool at_end() {
        skip_ws();
        return pos_ >= text_.size();
    }

    const std::string& text_;
    std::size_t pos_ = 0;
};

struct FormulaParser {
    explicit FormulaParser(const std::string& text) : lex(text) {}

    Lexer lex;

    [[noreturn]] void fail(const std::string& msg, std::size_t pos) {
        throw ParseError(msg, 0, static_cast<int>(pos));
    }

    Lexer::Token expect(const std::string& what) {
        auto t = lex.next();
        if (t.text.empty()) fail("expected " + what + ", found end of input", t.pos);
        return t;
    }

    void expect_punct(const std::string& p) {
        auto t = expect("'" + p + "'");
        if (t.text != p) fail("expected '" + p + "', found '" + t.text + "'", t.pos);
    }

    Action parse_action_suffix(const std::string& name, std::size_t pos) {
        auto t = expect("'?' or '!'");
        if (t.text == "?") return input_action(name);
        if (t.text == "!") return output_action(name);
        fail("expected '?' or '!' after action name '" + name + "'", pos);
    }

    Action parse_action() {
        auto t = expect("action name");
        if (!t.ident) fail("expected action name, found '" + t.text + "'", t.pos);
        return parse_action_suffix(t.text, t.pos);
    }

    Trace parse_trace(const std::string& closer) {
        Trace trace;
        if (lex.peek().text == closer) {
            expect_punct(closer);
            return trace;
        }
        while (true) {
            trace.push_back(parse_action());
            auto t = expect("'.' or '" + closer + "'");
            if (t.text == closer) return trace;
            if (t.text != ".") fail("expected '.' or '" + closer + "' in trace", t.pos);
        }
    }

    FormulaPtr parse_or() {
        std::vector<FormulaPtr> parts{parse_and()};
        while (lex.peek().text == "|") {
            lex.next();
            parts.push_back(parse_and());
        }
        return parts.size() == 1 ? parts[0] : f_or(std::move(parts));
    }

    FormulaPtr parse_and() {
        std::vector<FormulaPtr> parts{parse_unary()};
        while (lex.peek().text == "&") {
            lex.next();
            parts.push_back(parse_unary());
        }
        return parts.size() == 1 ? parts[0] : f_and(std::move(parts));
    }

    FormulaPtr parse_unary() {
        auto t = expect("formula");
        if (t.text == "(") {
            auto phi = parse_or();
            expect_punct(")");
            return phi;
        }
        if (t.text == "<") {
            Action a = parse_action();
            expect_punct(">");
            return f_dia(a, parse_unary());
        }
        if (t.text == "[") {
            Action a = parse_action();
            expect_punct("]");
            return f_box(a, parse_unary());
        }
        if (t.text == "<<") {
            Action a = parse_action();
            if (!a.is_input()) fail("non-forcing diamond requires an input action, got '" + a.text() + "'", t.pos);
            expect_punct(">>");
            return f_nfdia(a, parse_unary());
        }
        if (t.text == "[[") {
            Action a = parse_action();
            if (!a.is_input()) fail("forcing box requires an input action, got '" + a.text() + "'", t.pos);
            expect_punct("]]");
            return f_fbox(a, parse_unary());
        }
        if (t.text == "<|") {
            Trace sigma = parse_trace("|>");
            return f_force_trace(sigma, parse_unary());
        }
        if (t.text == "[|") {
            Trace sigma = parse_trace("|]");
            return f_box_trace(sigma, parse_unary());
        }
        if (t.ident) {
            if (t.text == "tt") return f_true();
            if (t.text == "ff") return f_false();
            return f_var(t.text);
        }
        fail("unexpected token '" + t.text + "'", t.pos);
    }
};

} // namespace

FormulaPtr parse_formula(const std::string& text) {
    FormulaParser parser(text);
    auto phi = parser.parse_or();
    if (!parser.lex.at_end()) {
        auto t = parser.lex.peek();
        throw ParseError("trailing input '" + t.text + "' after formula", 0, static_cast<int>(t.pos));
    }
    return phi;
}

int modal_depth(const FormulaPtr& phi) {
    switch (phi->kind()) {
        case FormulaKind::truth:
        case FormulaKind::falsity:
        case FormulaKind::var:
            return 0;
        case FormulaKind::conj:
        case FormulaKind::disj: {
            int d = 0;
            for (const auto& c : phi->children()) d = std::max(d, modal_depth(c));
            return d;
        }
        case FormulaKind::dia:
        case FormulaKind::box:
        case FormulaKind::nfdia:
        case FormulaKind::fbox:
            return 1 + modal_depth(phi->child());
        case FormulaKind::force_trace:
        case FormulaKind::box_trace:
            return static_cast<int>(phi->trace().size()) + modal_depth(phi->child());
    }
    return 0;
}

int max_bool_width(const FormulaPtr& phi) {
    int w = 0;
    if (phi->kind() == FormulaKind::conj || phi->kind() == FormulaKind::disj)
        w = static_cast<int>(phi->children().size());
    for (const auto& c : phi->children()) w = std::max(w, max_bool_width(c));
    return w;
}

namespace {
void collect_vars(const FormulaPtr& phi, std::set<std::string>& out) {
    if (phi->kind() == FormulaKind::var) out.insert(phi->var());
    for (const auto& c : phi->children()) collect_vars(c, out);
}
} // namespace

std::vector<std::string> free_vars(const FormulaPtr& phi) {
    std::set<std::string> vars;
    collect_vars(phi, vars);
    return {vars.begin(), vars.end()};
}

FormulaPtr dual_transform(const FormulaPtr& phi, DualDirection direction) {
    const bool fwd = direction == DualDirection::forward;
    switch (phi->kind()) {
        case FormulaKind::truth: return f_false();
        case FormulaKind::falsity: return f_true();
        case FormulaKind::conj: {
            std::vector<FormulaPtr> out;
            for (const auto& c : phi->children()) out.push_back(dual_transform(c, direction));
            return f_or(std::move(out));
        }
        case FormulaKind::disj: {
            std::vector<FormulaPtr> out;
            for (const auto& c : phi->children()) out.push_back(dual_transform(c, direction));
            return f_and(std::move(out));
        }
        case FormulaKind::nfdia:
            if (!fwd) break;
            return f_fbox(phi->action(), dual_transform(phi->child(), direction));
        case FormulaKind::dia:
            if (!fwd || !phi->action().is_output()) break;
            return f_box(phi->action(), dual_transform(phi->child(), direction));
        case FormulaKind::fbox:
            if (fwd) break;
            return f_nfdia(phi->action(), dual_transform(phi->child(), direction));
        case FormulaKind::box:
            if (fwd || !phi->action().is_output()) break;
            return f_dia(phi->action(), dual_transform(phi->child(), direction));
        default:
            break;
    }
    throw std::invalid_argument("formula '" + print_formula(phi) + "' is outside the " +
                                (fwd ? "non-forcing-diamond" : "forcing-box") + " fragment");
}

} // namespace ioconf
