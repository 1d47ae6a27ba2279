// Event-clock nested automata: visibly pushdown automata whose guards are
// event-clock constraints.  Membership is a nondeterministic search over
// configurations; no determinization is attempted.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ecnl/atoms.hpp"
#include "ecnl/interval.hpp"
#include "ecnl/words.hpp"

namespace ecnl {

enum class AlphabetKind { Props, Atoms };

struct EcnaTransition {
    enum class Kind { Push, Pop, Internal } kind;
    uint32_t from;
    PropSet input;  // atoms are rendered as sets of formula strings
    ClockConstraint guard;
    uint32_t to;
    // Push: the pushed symbol.  Pop: the expected top (nullopt = bottom).
    std::optional<uint32_t> stack_sym;
};

struct Ecna {
    AlphabetKind alphabet = AlphabetKind::Props;
    std::vector<std::string> states;
    std::vector<uint32_t> initial;
    std::vector<uint32_t> final_states;
    std::vector<std::string> stack_syms;
    std::vector<EcnaTransition> transitions;

    uint32_t add_state(const std::string& name);
    uint32_t add_stack_sym(const std::string& name);
};

// A configuration: control state plus stack content (top first, bottom
// implicit — an empty vector is just the bottom symbol).
struct Configuration {
    uint32_t state = 0;
    std::vector<uint32_t> stack;

    bool operator==(const Configuration& o) const {
        return state == o.state && stack == o.stack;
    }
};

// All successor configurations reading position i of the word.
std::vector<Configuration> step(const Ecna& a, const Configuration& cfg, const TimedWord& w,
                                size_t i);

// Finite-word acceptance: some run from an initial configuration consumes the
// whole word and ends in a final state.  Memoizes full configurations.
bool accepts(const Ecna& a, const TimedWord& w);

// Acceptance over an atom-labelled word (alphabet must be Atoms; the clock
// indices and input symbols are resolved against the word's closure).
bool accepts(const Ecna& a, const HintikkaWord& hw);

// Synchronized product; accepts exactly the intersection (the visible stack
// discipline keeps both stacks height-aligned, so pairing tops is sound).
Ecna product(const Ecna& a, const Ecna& b);

std::string ecna_to_json(const Ecna& a, bool pretty = false);
Ecna ecna_from_json(const std::string& text);  // schema errors name the path

}  // namespace ecnl
