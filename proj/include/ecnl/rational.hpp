// Exact rational arithmetic used for timestamps and clock values.
//
// Timestamps are arbitrary-precision rationals (GMP mpq).  All comparisons
// and feasibility checks in the toolkit are exact; no floating point is used
// anywhere in the semantic core.
#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace ecnl {

using Rat = mpq_class;

// Parses "p/q", an integer, or a plain decimal ("1.5" -> 3/2).
// Returns std::nullopt on malformed input or a zero denominator.
std::optional<Rat> parse_rat(const std::string& text);

// Canonical rendering: integers print bare, everything else as "p/q".
std::string rat_to_string(const Rat& r);

Rat rat_floor(const Rat& r);
Rat rat_ceil(const Rat& r);

// The rational with the smallest denominator (then smallest numerator
// magnitude) inside the given interval.  Bounds may be open; the interval
// must be nonempty.  Used to snap solver witnesses to readable values.
Rat simplest_in_interval(const Rat& lo, bool lo_open, const Rat& hi, bool hi_open);

}  // namespace ecnl
