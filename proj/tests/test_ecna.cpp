#include <doctest.h>

#include "ecnl/corpus.hpp"
#include "ecnl/ecna.hpp"

using namespace ecnl;

namespace {

Ecna universal() {
    Ecna m;
    m.alphabet = AlphabetKind::Props;
    uint32_t q = m.add_state("q");
    uint32_t g = m.add_stack_sym("g");
    m.initial = {q};
    m.final_states = {q};
    for (const auto& sym : {PropSet{"call"}, PropSet{"ret"}, PropSet{"int"}, PropSet{"int", "p"},
                            PropSet{"call", "p"}, PropSet{"ret", "p"}}) {
        SymKind kind = classify(sym);
        EcnaTransition t;
        t.from = q;
        t.to = q;
        t.input = sym;
        switch (kind) {
            case SymKind::Call:
                t.kind = EcnaTransition::Kind::Push;
                t.stack_sym = g;
                m.transitions.push_back(t);
                break;
            case SymKind::Ret: {
                t.kind = EcnaTransition::Kind::Pop;
                t.stack_sym = g;
                m.transitions.push_back(t);
                EcnaTransition tb = t;
                tb.stack_sym = std::nullopt;
                m.transitions.push_back(tb);
                break;
            }
            case SymKind::Internal:
                t.kind = EcnaTransition::Kind::Internal;
                m.transitions.push_back(t);
                break;
        }
    }
    return m;
}

TimedWord mk(std::vector<std::pair<PropSet, Rat>> items) {
    TimedWord w;
    for (auto& [s, t] : items) {
        w.syms.push_back(std::move(s));
        w.stamps.push_back(t);
    }
    return w;
}

// Seeded random automaton over the small alphabet.
Ecna random_ecna(Rng& rng) {
    auto pick = [&](size_t n) { return std::uniform_int_distribution<size_t>(0, n - 1)(rng); };
    Ecna m;
    m.alphabet = AlphabetKind::Props;
    size_t nstates = 1 + pick(3);
    for (size_t i = 0; i < nstates; ++i) m.add_state("s" + std::to_string(i));
    size_t nsyms = 1 + pick(2);
    for (size_t i = 0; i < nsyms; ++i) m.add_stack_sym("g" + std::to_string(i));
    m.initial = {static_cast<uint32_t>(pick(nstates))};
    size_t nfinal = 1 + pick(nstates);
    for (size_t i = 0; i < nfinal; ++i) m.final_states.push_back(static_cast<uint32_t>(pick(nstates)));
    auto rand_guard = [&]() -> ClockConstraint {
        switch (pick(5)) {
            case 0: return {};
            case 1: return {{ClockId{Axis::Global, false, "p"}, Interval::closed(0, 1)}};
            case 2: return {{ClockId{Axis::Abstract, false, "call"}, Interval::singleton(1)}};
            case 3: return {{ClockId{Axis::Global, true, "p"}, Interval::greater_than(0)}};
            default: return {{ClockId{Axis::Caller, false, "call"}, Interval::undef_singleton()}};
        }
    };
    auto symbols = small_alphabet();
    size_t ntrans = 3 + pick(6);
    for (size_t i = 0; i < ntrans; ++i) {
        const PropSet& sym = symbols[pick(symbols.size())];
        EcnaTransition t;
        t.from = static_cast<uint32_t>(pick(nstates));
        t.to = static_cast<uint32_t>(pick(nstates));
        t.input = sym;
        t.guard = rand_guard();
        switch (classify(sym)) {
            case SymKind::Call:
                t.kind = EcnaTransition::Kind::Push;
                t.stack_sym = static_cast<uint32_t>(pick(nsyms));
                break;
            case SymKind::Ret:
                t.kind = EcnaTransition::Kind::Pop;
                if (pick(3) == 0)
                    t.stack_sym = std::nullopt;
                else
                    t.stack_sym = static_cast<uint32_t>(pick(nsyms));
                break;
            case SymKind::Internal:
                t.kind = EcnaTransition::Kind::Internal;
                break;
        }
        m.transitions.push_back(t);
    }
    return m;
}

}  // namespace

TEST_CASE("step: bottom pop keeps the stack") {
    Ecna m = universal();
    auto w = mk({{PropSet{"ret"}, Rat(0)}});
    Configuration cfg{0, {}};
    auto next = step(m, cfg, w, 0);
    REQUIRE(next.size() == 1);
    CHECK(next[0].stack.empty());
}

TEST_CASE("step: push grows the stack, guards filter") {
    Ecna m = universal();
    auto w = mk({{PropSet{"call"}, Rat(0)}});
    auto next = step(m, Configuration{0, {}}, w, 0);
    REQUIRE(next.size() == 1);
    CHECK(next[0].stack.size() == 1);

    // An unsatisfied guard contributes nothing.
    m.transitions[0].guard = {{ClockId{Axis::Global, false, "p"}, Interval::closed(0, 1)}};
    auto none = step(m, Configuration{0, {}}, w, 0);
    CHECK(none.empty());
}

TEST_CASE("universal automaton accepts everything") {
    Ecna m = universal();
    enumerate_timed_words(small_alphabet(), {Rat(0), Rat(1)}, 3,
                          [&](const TimedWord& w) { REQUIRE(accepts(m, w)); });
}

TEST_CASE("guarded internal transition") {
    // One internal transition guarded by x^g_p = 1.
    Ecna m;
    m.alphabet = AlphabetKind::Props;
    uint32_t q = m.add_state("q");
    m.initial = {q};
    m.final_states = {q};
    EcnaTransition t0;
    t0.kind = EcnaTransition::Kind::Internal;
    t0.from = q;
    t0.to = q;
    t0.input = PropSet{"int", "p"};
    m.transitions.push_back(t0);
    EcnaTransition t1;
    t1.kind = EcnaTransition::Kind::Internal;
    t1.from = q;
    t1.to = q;
    t1.input = PropSet{"int"};
    t1.guard = {{ClockId{Axis::Global, false, "p"}, Interval::singleton(1)}};
    m.transitions.push_back(t1);

    CHECK(accepts(m, mk({{PropSet{"int", "p"}, Rat(0)}, {PropSet{"int"}, Rat(1)}})));
    CHECK(!accepts(m, mk({{PropSet{"int", "p"}, Rat(0)}, {PropSet{"int"}, Rat(1, 2)}})));
}

TEST_CASE("acceptance is deterministic in outcome") {
    Rng rng(42);
    Ecna m = random_ecna(rng);
    auto w = mk({{PropSet{"call"}, Rat(0)}, {PropSet{"int", "p"}, Rat(1)}, {PropSet{"ret"}, Rat(1)}});
    bool first = accepts(m, w);
    for (int k = 0; k < 5; ++k) CHECK(accepts(m, w) == first);
}

TEST_CASE("alphabet mismatch is rejected") {
    Ecna m = universal();
    m.alphabet = AlphabetKind::Atoms;
    CHECK_THROWS_AS(accepts(m, mk({{PropSet{"int"}, Rat(0)}})), Error);
}

TEST_CASE("run well-formedness along accepted runs") {
    Ecna m = universal();
    enumerate_timed_words(small_alphabet(), {Rat(0)}, 4, [&](const TimedWord& w) {
        // Walk one accepting run by replaying steps.
        Configuration cfg{0, {}};
        auto ws = kinds_of(w);
        for (size_t i = 0; i < w.size(); ++i) {
            auto next = step(m, cfg, w, i);
            REQUIRE(!next.empty());
            size_t before = cfg.stack.size();
            cfg = next.front();
            switch (ws[i]) {
                case SymKind::Call: REQUIRE(cfg.stack.size() == before + 1); break;
                case SymKind::Ret: REQUIRE(before - cfg.stack.size() <= 1); break;
                case SymKind::Internal: REQUIRE(cfg.stack.size() == before); break;
            }
        }
    });
}

TEST_CASE("product against the universal automaton preserves the language") {
    Rng rng(7);
    for (int k = 0; k < 5; ++k) {
        Ecna a = random_ecna(rng);
        Ecna u = universal();
        Ecna p = product(a, u);
        enumerate_timed_words(small_alphabet(), {Rat(0), Rat(1)}, 3, [&](const TimedWord& w) {
            REQUIRE(accepts(p, w) == accepts(a, w));
        });
    }
}

TEST_CASE("product with a structural copy is language-idempotent") {
    Rng rng(8);
    Ecna a = random_ecna(rng);
    Ecna p = product(a, a);
    enumerate_timed_words(small_alphabet(), {Rat(0), Rat(1)}, 3,
                          [&](const TimedWord& w) { REQUIRE(accepts(p, w) == accepts(a, w)); });
}

TEST_CASE("product recognizes exactly the intersection") {
    Rng rng(99);
    for (int k = 0; k < 8; ++k) {
        Ecna a = random_ecna(rng);
        Ecna b = random_ecna(rng);
        Ecna p = product(a, b);
        enumerate_timed_words(small_alphabet(), {Rat(0), Rat(1, 2), Rat(1)}, 3,
                              [&](const TimedWord& w) {
                                  REQUIRE(accepts(p, w) == (accepts(a, w) && accepts(b, w)));
                              });
    }
}

TEST_CASE("product rejects mismatched alphabets") {
    Ecna a = universal(), b = universal();
    b.alphabet = AlphabetKind::Atoms;
    CHECK_THROWS_AS(product(a, b), Error);
}

TEST_CASE("serialization round trip") {
    Rng rng(1);
    for (int k = 0; k < 10; ++k) {
        Ecna a = random_ecna(rng);
        Ecna back = ecna_from_json(ecna_to_json(a));
        CHECK(back.states == a.states);
        CHECK(back.initial == a.initial);
        CHECK(back.final_states == a.final_states);
        CHECK(back.stack_syms == a.stack_syms);
        REQUIRE(back.transitions.size() == a.transitions.size());
        for (size_t i = 0; i < a.transitions.size(); ++i) {
            CHECK(back.transitions[i].kind == a.transitions[i].kind);
            CHECK(back.transitions[i].from == a.transitions[i].from);
            CHECK(back.transitions[i].to == a.transitions[i].to);
            CHECK(back.transitions[i].input == a.transitions[i].input);
            CHECK(back.transitions[i].guard == a.transitions[i].guard);
            CHECK(back.transitions[i].stack_sym == a.transitions[i].stack_sym);
        }
        // Behaviour is preserved, not just structure.
        enumerate_timed_words(small_alphabet(), {Rat(0), Rat(1)}, 2, [&](const TimedWord& w) {
            REQUIRE(accepts(back, w) == accepts(a, w));
        });
    }
}

TEST_CASE("schema errors name the offending path") {
    auto try_bad = [](const std::string& text, const std::string& needle) {
        try {
            ecna_from_json(text);
            CHECK(false);
        } catch (const Error& e) {
            CHECK(e.kind == "schema");
            CAPTURE(e.message);
            CHECK(e.message.find(needle) != std::string::npos);
        }
    };
    try_bad(R"({"alphabet":"props","states":["q"],"final":[],"stack":[],"transitions":[]})",
            "initial");
    try_bad(R"({"alphabet":"props","states":["q"],"initial":["q"],"final":[],"stack":[],
               "transitions":[{"kind":"internal","from":"q","input":["int"],"guard":
               [{"clock":"yc:p","interval":"[0,1]"}],"to":"q"}]})",
            "guard[0]");
    // Clock keys parse to the documented shape.
    auto c = ClockId::parse("xa:p");
    REQUIRE(c.has_value());
    CHECK(c->axis == Axis::Abstract);
    CHECK(!c->predictor);
    CHECK(c->index == "p");
    CHECK(!ClockId::parse("yc:p").has_value());
}
