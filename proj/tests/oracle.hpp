// Test-only reference implementations, written straight from the definitions.
//
// These are deliberately quadratic scans with no shared state; the library's
// stack-based linear implementations are checked against them exhaustively on
// small words.  Nothing in here may call into the code paths it validates.
#pragma once

#include <optional>
#include <vector>

#include "ecnl/words.hpp"

namespace ecnl::oracle {

// Well-matched per the grammar  e | a.w | c.w.r.w, decided by a counter scan.
bool well_matched(const std::vector<SymKind>& sigma, size_t from, size_t to_excl);

// Matching return: the unique j > i with sigma_j a return and sigma[i+1,j-1]
// well matched.
std::optional<size_t> matching_return(const std::vector<SymKind>& sigma, size_t i);

std::optional<size_t> abs_succ(const std::vector<SymKind>& sigma, size_t i);
std::optional<size_t> caller(const std::vector<SymKind>& sigma, size_t i);

// The MAP through i, by chasing abstract successors from the chain start.
std::vector<size_t> map_through(const std::vector<SymKind>& sigma, size_t i);
std::vector<size_t> caller_path(const std::vector<SymKind>& sigma, size_t i);

// Definition-1 clock value computed by a direct scan over the axis path.
std::optional<Rat> clock_value(const TimedWord& w, size_t i, const ClockId& clock);

}  // namespace ecnl::oracle
