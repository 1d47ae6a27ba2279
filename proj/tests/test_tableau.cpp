#include <doctest.h>

#include "ecnl/corpus.hpp"
#include "ecnl/parser.hpp"
#include "ecnl/tableau.hpp"

using namespace ecnl;

TEST_CASE("states are exactly the atoms") {
    FormulaArena ar;
    FormulaId f = parse_formula(ar, "p Ug q");
    auto ta = build_automaton(ar, f);
    Closure cl = Closure::build(ar, f);
    CHECK(ta.states().size() == enumerate_atoms(cl).size());
    CHECK(ta.states().size() <= (size_t{1} << (cl.size() / 2)));
    CHECK(!ta.initials().empty());
}

TEST_CASE("negated guard branches over the maximal complement pieces") {
    Interval ivl = Interval::closed(2, 5);
    auto pieces = ivl.complement_pieces();
    REQUIRE(pieces.size() == 2);
    CHECK(pieces[0] == Interval::right_open(0, 2));
    CHECK(pieces[1] == Interval::greater_than(5));
    // Together with the undef singleton these are the branch alternatives.
    FormulaArena ar;
    FormulaId f = parse_formula(ar, "Ng[2,5] p");
    auto ta = build_automaton(ar, f);
    Ecna e = ta.materialize();
    bool below = false, above = false, undef = false;
    for (const auto& t : e.transitions) {
        for (const auto& g : t.guard) {
            if (g.interval == Interval::right_open(0, 2)) below = true;
            if (g.interval == Interval::greater_than(5)) above = true;
            if (g.interval.is_undef()) undef = true;
        }
    }
    CHECK(below);
    CHECK(above);
    CHECK(undef);
}

TEST_CASE("oracle vs automaton on a hand-picked formula set") {
    FormulaArena ar;
    std::vector<std::string> texts = {
        "p",
        "call",
        "Xg p",
        "Xa true",
        "Xa p",
        "Pg p",
        "Pa p",
        "Pc p",
        "p Ug q",
        "p Ua q",
        "p Sg q",
        "p Sc q",
        "Ng[0,1] p",
        "Na[1,1] ret",
        "Bg[1,2] p",
        "Ba(0,2) p",
        "Bc[0,1] call",
        "!(p Ug q)",
        "call & Xa ret",
        "Xg true",
        "Xg (p | !p)",
        "call & Xa true",
        "(call & p) Ug ret",
        "Ng[0,0] p | Bg[2,inf) q",
    };
    auto alphabet = small_alphabet();
    alphabet.push_back(PropSet{"int", "q"});
    alphabet.push_back(PropSet{"call", "p"});
    std::vector<Rat> grid{Rat(0), Rat(1, 2), Rat(1), Rat(2)};
    for (const auto& text : texts) {
        FormulaId f = parse_formula(ar, text);
        auto ta = build_automaton(ar, f, {"p", "q"});
        size_t words = 0, misses = 0;
        enumerate_timed_words(alphabet, grid, 3, [&](const TimedWord& w) {
            if (++words % 5 != 0) return;  // deterministic sample
            HintikkaWord hw = induce_hintikka(w, ta.closure());
            bool expect = models(ar, w, f);
            bool got = ta.accepts(hw);
            if (expect != got) {
                ++misses;
                if (misses <= 3) {
                    CAPTURE(text);
                    CAPTURE(word_to_json(w));
                    CHECK(expect == got);
                }
            }
        });
        CAPTURE(text);
        CHECK(misses == 0);
    }
}

TEST_CASE("oracle vs automaton on a random corpus") {
    FormulaArena ar;
    Rng rng(271828);
    GenOptions opts;
    opts.max_depth = 2;
    opts.max_closure = 24;
    for (int k = 0; k < 30; ++k) {
        FormulaId f = gen_ecntl(ar, rng, opts);
        auto ta = build_automaton(ar, f, {"p"});
        size_t words = 0;
        enumerate_timed_words(small_alphabet(), {Rat(0), Rat(1)}, 3, [&](const TimedWord& w) {
            if (++words % 9 != 0) return;
            HintikkaWord hw = induce_hintikka(w, ta.closure());
            bool expect = models(ar, w, f);
            bool got = ta.accepts(hw);
            if (expect != got) {
                CAPTURE(ar.print(f));
                CAPTURE(word_to_json(w));
            }
            REQUIRE(expect == got);
        });
    }
}

TEST_CASE("materialized machine agrees with the implicit one") {
    FormulaArena ar;
    for (const char* text : {"p Ug q", "Na[0,1] p", "call & Xa ret", "Pc p"}) {
        FormulaId f = parse_formula(ar, text);
        auto ta = build_automaton(ar, f, {"p", "q"});
        Ecna e = ta.materialize();
        auto alphabet = small_alphabet();
        size_t words = 0;
        enumerate_timed_words(alphabet, {Rat(0), Rat(1)}, 2, [&](const TimedWord& w) {
            if (++words % 3 != 0) return;
            HintikkaWord hw = induce_hintikka(w, ta.closure());
            CAPTURE(text);
            CAPTURE(word_to_json(w));
            REQUIRE(ta.accepts(hw) == accepts(e, hw));
        });
    }
}

TEST_CASE("projection for non-recursive formulas") {
    FormulaArena ar;
    FormulaId f = parse_formula(ar, "Ng[0,1] p");
    auto ta = build_automaton(ar, f, {"p"});
    Ecna e = ta.materialize();
    Ecna projected = project_nonrecursive(ar, e, f);
    CHECK(projected.states.size() == e.states.size());  // states untouched

    size_t words = 0;
    enumerate_timed_words(small_alphabet(), {Rat(0), Rat(1, 2), Rat(1)}, 2,
                          [&](const TimedWord& w) {
                              if (++words % 4 != 0) return;
                              bool expect = models(ar, w, f);
                              CAPTURE(word_to_json(w));
                              REQUIRE(accepts(projected, w) == expect);
                          });

    FormulaId rec = parse_formula(ar, "Ng[0,1] (p | q)");
    auto ta2 = build_automaton(ar, rec);
    CHECK_THROWS_AS(project_nonrecursive(ar, ta2.materialize(), rec), Error);
}
