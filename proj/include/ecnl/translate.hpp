// Translations between the NMITL fragment and ECNTL, both directions.
//
// The timed strict until/since with an upper bound becomes an untimed strict
// until/since conjoined with a first-occurrence clock bound on the target.
// Lower bounds need more care on finite words: the last occurrence of a
// formula on a path is definable (it is the one with no later occurrence),
// which pins down "some occurrence beyond the bound", and the window before
// the first failure of the left argument is handled through the first
// occurrence of  target-and-no-more-reachable-targets.  Correctness is not
// argued here; it is enforced by the differential suite against the two
// evaluators.
#pragma once

#include "ecnl/formula.hpp"

namespace ecnl {

// Every interval is in INTS: nonsingular and unbounded, or left-closed at 0.
bool is_nmitl(const FormulaArena& ar, FormulaId f);

// NMITL -> ECNTL.  Throws not-in-fragment.
FormulaId nmitl_to_ecntl(FormulaArena& ar, FormulaId f);

// ECNTL -> NMITL (total on ECNTL).
FormulaId ecntl_to_nmitl(FormulaArena& ar, FormulaId f);

}  // namespace ecnl
