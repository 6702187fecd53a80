#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

#include "ioconf/lts.hpp"

using namespace ioconf;
using namespace ioconf::test;

TEST_CASE("parsing the one-input example") {
    Lts lts = load_fixture("ex2.lts");
    CHECK(lts.state_count() == 2);
    CHECK(lts.transitions().size() == 3);
    StateId i = lts.state("i");
    CHECK(lts.enables(i, input_action("a")));
    CHECK(lts.enables(i, delta_action()));
}

TEST_CASE("close-quiescence adds exactly one delta loop to an output-less state") {
    Lts lts = parse_lts("inputs a\nstate p\n", {.close_quiescence = true, .strict = false});
    StateId p = lts.state("p");
    CHECK(lts.transitions().size() == 1);
    CHECK(lts.successors(p, delta_action()) == std::vector<StateId>{p});

    // never stacks a second loop or touches states with outputs
    Lts closed = parse_lts("inputs a\noutputs x\nstate p q\ntrans p delta! p\ntrans q x! q\n",
                           {.close_quiescence = true, .strict = false});
    CHECK(closed.transitions().size() == 2);
}

TEST_CASE("transitions over undeclared actions are rejected") {
    CHECK_THROWS_WITH_AS(parse_lts("inputs a\nstate p\ntrans p c? p\n"),
                         "line 3: unknown action 'c?'", ParseError);
}

TEST_CASE("duplicate state declarations are rejected") {
    CHECK_THROWS_AS(parse_lts("state p p\n"), ParseError);
    CHECK_THROWS_AS(parse_lts("state p\nstate p\n"), ParseError);
}

TEST_CASE("delta cannot be declared as an input") {
    CHECK_THROWS_AS(parse_lts("inputs delta\n"), ParseError);
}

TEST_CASE("a name may live on both sides of the alphabet") {
    // a? and a! are different actions; the branching examples rely on this
    Lts lts = load_fixture("ex6.lts");
    CHECK(lts.alphabet().has_input("a"));
    CHECK(lts.alphabet().has_output("a"));
}

TEST_CASE("quiescence validation on the example processes") {
    Lts lts = load_fixture("ex2.lts");
    CHECK(validate_quiescence(lts).ok());
}

TEST_CASE("quiescence validation reports each violation kind") {
    Lts lts = load_fixture("incoherent.lts");
    auto report = validate_quiescence(lts);
    REQUIRE(report.violations.size() == 3);
    CHECK(report.violations[0] ==
          QuiescenceReport::Entry{"p", QuiescenceViolation::delta_alongside_output});
    CHECK(report.violations[1] ==
          QuiescenceReport::Entry{"q", QuiescenceViolation::missing_delta_loop});
    CHECK(report.violations[2] ==
          QuiescenceReport::Entry{"q", QuiescenceViolation::delta_to_other_state});
}

TEST_CASE("strict parsing rejects incoherent systems") {
    LtsParseOptions strict{.close_quiescence = false, .strict = true};
    CHECK_THROWS_AS(load_lts(fixture_path("incoherent.lts"), strict), ParseError);
    CHECK_NOTHROW(load_fixture("incoherent.lts"));
    // coherent inputs pass strict parsing untouched
    CHECK_NOTHROW(load_lts(fixture_path("ex2.lts"), strict));
}

TEST_CASE("initials of the example processes") {
    Lts lts = load_fixture("ex2.lts");
    auto s = initials(lts, lts.state("s"));
    CHECK(s.ins.empty());
    CHECK(s.outs == std::set<Action>{delta_action()});
    auto i = initials(lts, lts.state("i"));
    CHECK(i.ins == std::set<Action>{input_action("a")});
    CHECK(i.outs == std::set<Action>{delta_action()});
}

TEST_CASE("initials agrees with a raw scan of the transition list") {
    Rng rng(411);
    for (int round = 0; round < 25; ++round) {
        Lts lts = random_lts(rng, {});
        for (StateId p = 0; p < lts.state_count(); ++p) {
            std::set<Action> ins, outs;
            for (const auto& t : lts.transitions())
                if (t.src == p) (t.act.is_input() ? ins : outs).insert(t.act);
            auto got = initials(lts, p);
            CHECK(got.ins == ins);
            CHECK(got.outs == outs);
        }
    }
}

TEST_CASE("after and out_of on the nondeterministic example") {
    Lts lts = load_fixture("ex6.lts");
    StateId i = lts.state("i"), s = lts.state("s");
    CHECK(after(lts, i, {input_action("a")}) == StateSet{lts.state("i1")});
    CHECK(after(lts, i, {}) == StateSet{i});

    // frozen from a hand union over the two a?-successors s1 and s2
    auto outs = out_of(lts, after(lts, s, {input_action("a")}));
    CHECK(outs == std::set<Action>{output_action("a"), output_action("b")});
}

TEST_CASE("after composes over trace concatenation") {
    Rng rng(77);
    for (int round = 0; round < 20; ++round) {
        Lts lts = random_lts(rng, {});
        auto actions = lts.alphabet().all();
        for (const auto& a : actions)
            for (const auto& b : actions) {
                Trace ab{a, b};
                for (StateId p = 0; p < lts.state_count(); ++p)
                    CHECK(after(lts, after(lts, p, {a}), {b}) == after(lts, p, ab));
            }
    }
}

TEST_CASE("coherent states always have some output") {
    Rng rng(5);
    for (int round = 0; round < 25; ++round) {
        Lts lts = random_lts(rng, {});
        REQUIRE(validate_quiescence(lts).ok());
        for (StateId p = 0; p < lts.state_count(); ++p) CHECK(!lts.outs(p).empty());
    }
}

TEST_CASE("classification of the worked processes") {
    Lts lts = load_fixture("ex6.lts");
    CHECK(classify(lts, lts.state("i")).input_enabled);
    CHECK(!classify(lts, lts.state("s")).deterministic);
    CHECK(!classify(lts, lts.state("s")).input_enabled);

    Lts tiny = parse_lts("inputs a\nstate p\ntrans p delta! p\n");
    auto c = classify(tiny, tiny.state("p"));
    CHECK(!c.input_enabled);   // one input exists but p refuses it
    CHECK(c.deterministic);
}

TEST_CASE("classification errors on unknown states") {
    Lts lts = load_fixture("ex2.lts");
    CHECK_THROWS_AS(lts.state("nope"), std::invalid_argument);
    CHECK_THROWS_AS(classify(lts, 99), std::invalid_argument);
}

TEST_CASE("printing round-trips through the parser") {
    Rng rng(1234);
    for (int round = 0; round < 10; ++round) {
        Lts lts = random_lts(rng, {});
        Lts reparsed = parse_lts(print_lts(lts));
        CHECK(print_lts(reparsed) == print_lts(lts));
    }
}

TEST_CASE("construction order does not leak into the output") {
    Lts::Builder forward;
    forward.input("a").output("x");
    forward.state("p").state("q");
    forward.transition("p", input_action("a"), "q");
    forward.transition("q", output_action("x"), "p");
    forward.transition("p", delta_action(), "p");

    Lts::Builder backward;
    backward.output("x").input("a");
    backward.state("q").state("p");
    backward.transition("p", delta_action(), "p");
    backward.transition("q", output_action("x"), "p");
    backward.transition("p", input_action("a"), "q");

    CHECK(print_lts(forward.build()) == print_lts(backward.build()));
}
