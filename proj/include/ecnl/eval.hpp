// Pointwise semantic evaluator over finite timed words.
//
// One engine serves both logics: the formula DAG carries the operators of
// each, and evaluation is memoized per (subformula, position).  This is the
// toolkit's ground-truth oracle; every construction downstream is validated
// against it.
#pragma once

#include <vector>

#include "ecnl/formula.hpp"
#include "ecnl/words.hpp"

namespace ecnl {

class Evaluator {
  public:
    // The word must satisfy validate_word (checked lazily by callers).
    Evaluator(const FormulaArena& arena, const TimedWord& word);

    // (w, i) |= f.  Throws out-of-range.
    bool eval(FormulaId f, size_t i);

    const WordStructure& structure() const { return ws_; }

  private:
    bool compute(FormulaId f, size_t i);
    bool occurs(FormulaId f, size_t p);  // memoized eval used as clock index

    const FormulaArena& ar_;
    const TimedWord& w_;
    WordStructure ws_;
    // memo[f] is lazily sized; -1 unknown, 0 false, 1 true
    std::vector<std::vector<int8_t>> memo_;
};

// models(w, f): false on the empty word (no position 0), else eval at 0.
bool models(const FormulaArena& arena, const TimedWord& word, FormulaId f);

// Semantics of `pinf` on plain words: false at i iff i has a caller whose
// matching return is defined.
bool pinf_holds(const WordStructure& ws, size_t i);

// NMTL derived operators as macro expansion.
enum class DerivedOp { F, G, P, H };
FormulaId nmtl_derived(FormulaArena& ar, DerivedOp op, Axis dir, const Interval& ivl, FormulaId f);

}  // namespace ecnl
