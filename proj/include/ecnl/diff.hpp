// Exact difference-constraint feasibility over rational timestamps.
//
// A system talks about n timestamp variables; monotonicity between adjacent
// positions and non-negativity of the origin are implicit.  Solving is
// shortest-path relaxation with lexicographic (bound, strictness) weights;
// infeasibility returns a cycle whose total weight is negative or zero with
// a strict edge, re-checked arithmetically before being reported.
#pragma once

#include <variant>
#include <vector>

#include "ecnl/rational.hpp"

namespace ecnl {

// tau_v - tau_u <= bound  (strict: <).
struct DiffConstraint {
    uint32_t u = 0;
    uint32_t v = 0;
    Rat bound;
    bool strict = false;
};

struct DiffSystem {
    uint32_t n = 0;
    std::vector<DiffConstraint> constraints;
};

struct DiffSolution {
    std::vector<Rat> stamps;
};

struct DiffUnsat {
    std::vector<DiffConstraint> cycle;  // includes implicit edges, materialized
    Rat total;
    bool strict = false;
};

std::variant<DiffSolution, DiffUnsat> solve_diff(const DiffSystem& sys);

// True iff the assignment satisfies every constraint plus the implicit ones.
bool diff_satisfied(const DiffSystem& sys, const std::vector<Rat>& stamps);

// Snap each stamp to the smallest-denominator rational inside its slack
// interval, in index order; the result still satisfies the system.
void simplify_stamps(const DiffSystem& sys, std::vector<Rat>& stamps);

}  // namespace ecnl
