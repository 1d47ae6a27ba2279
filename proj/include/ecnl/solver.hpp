// Bounded satisfiability and bounded visibly model-checking.
//
// The solver searches accepting run skeletons of the tableau automaton
// (sequences of atoms under the visible stack discipline), compiles the
// real-time requirements of each completed skeleton into timestamp
// difference constraints, decides feasibility exactly, and only ever returns
// witnesses that re-validate through the semantic evaluator.
#pragma once

#include <variant>

#include "ecnl/diff.hpp"
#include "ecnl/ecna.hpp"
#include "ecnl/tableau.hpp"

namespace ecnl {

// Structural compilation of the real-time requirements of an atom sequence.
// Negated clock formulas with a determined reference position contribute a
// branch over the maximal complement pieces.
struct CompiledConstraints {
    DiffSystem base;
    // Each group: choose exactly one alternative (a conjunction of constraints).
    std::vector<std::vector<std::vector<DiffConstraint>>> branch_groups;
};

struct StructuralInfeasibility {
    size_t position = 0;
    std::string reason;
};

std::variant<CompiledConstraints, StructuralInfeasibility> compile_constraints(
    const Closure& cl, const std::vector<Atom>& atoms);

// Enumerate branch combinations lazily; the callback returns false to stop.
// Returns true when stopped early.
bool for_each_branch(const CompiledConstraints& cc,
                     const std::function<bool(const DiffSystem&)>& cb);

struct RunStep {
    std::string state;
    std::vector<std::string> stack;
};

struct Witness {
    TimedWord word;
    HintikkaWord hintikka;
    std::vector<RunStep> run;
};

struct NoneUpToBound {
    size_t maxlen = 0;
};
struct BudgetExceeded {
    size_t nodes = 0;
};
struct OkUpToBound {
    size_t maxlen = 0;
};

struct SolverOptions {
    size_t node_budget = 1'000'000;
    int workers = 1;  // >1 fans the top-level branching out; the reported
                      // witness is deterministic only with a single worker
};

using SatResult = std::variant<Witness, NoneUpToBound, BudgetExceeded>;
SatResult bounded_sat(FormulaArena& arena, FormulaId phi, size_t maxlen,
                      const SolverOptions& opts = {});

using McResult = std::variant<OkUpToBound, Witness, BudgetExceeded>;
McResult bounded_mc(FormulaArena& arena, const Ecna& model, FormulaId phi, size_t maxlen,
                    const SolverOptions& opts = {});

}  // namespace ecnl
