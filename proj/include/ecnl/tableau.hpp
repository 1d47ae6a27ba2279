// Formula-to-automaton tableau construction over finite timed words.
//
// States are the atoms of the closure; the input symbol of every transition
// equals its source state, so a run's control states spell the untimed input.
// Push transitions push the call atom; pops re-check the abstract transfer
// against the matching call from the stack; guards realize the real-time
// requirements, with negated clock formulas branching over the maximal
// intervals disjoint from the original one (plus the undef singleton).
//
// Finite-word ends: final states are the terminally admissible atoms (no
// asserted global next, no abstract-successor claim), and every terminally
// eligible source carries edges onto return-shaped end atoms whose past
// requirements are transferred from the source.  The pending-call conditions
// of unmatched calls are enforced where a word actually ends; solver outputs
// are additionally re-validated by the evaluator.
#pragma once

#include <memory>

#include "ecnl/atoms.hpp"
#include "ecnl/ecna.hpp"

namespace ecnl {

class TableauAutomaton {
  public:
    // The closure lives behind a stable pointer: atoms reference it.
    const Closure& closure() const { return *cl_; }
    const std::vector<Atom>& states() const { return atoms_; }
    const std::vector<uint32_t>& initials() const { return initials_; }

    bool is_initial(const Atom& a) const;
    bool is_final(const Atom& a) const { return terminal_admissible(a); }

    // Acceptance of an atom-labelled timed word (the run is forced by the
    // input, so this is a linear scan plus an end-step existence check).
    bool accepts(const HintikkaWord& hw) const;

    // Pair admissibility of consecutive atoms, as enforced by the transition
    // relation (excluding the pop-side checks, which need the stack).
    bool mid_pair_ok(const Atom& a, const Atom& b) const;
    // Pop discipline for a return atom against the matched call atom
    // (nullptr = bottom of stack).
    bool pop_ok(const Atom* call_atom, const Atom& ret_atom) const;
    // Guard of a source atom against a clock valuation.
    bool guard_ok(const Atom& a,
                  const std::function<std::optional<Rat>(const Closure::Clock&)>& val) const;

    // A terminally eligible source can close the word (used by the solver).
    bool end_eligible(const Atom& a) const;
    bool end_phantom_exists(const Atom& a) const;

    // Explicit machine over the atom alphabet; guard negations are expanded
    // into one transition per complement piece.
    Ecna materialize(size_t max_transitions = 2'000'000) const;

    std::shared_ptr<Closure> cl_;
    std::vector<Atom> atoms_;
    std::vector<uint32_t> initials_;
};

TableauAutomaton build_automaton(FormulaArena& arena, FormulaId phi,
                                 const std::vector<std::string>& ambient_props = {});

// Input projection over Prop for non-recursive formulas; the guards already
// reference proposition-indexed clocks only.  Throws recursive-formula.
Ecna project_nonrecursive(FormulaArena& arena, const Ecna& tableau_ecna, FormulaId phi);

}  // namespace ecnl
