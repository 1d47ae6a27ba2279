// Intervals over the non-negative rationals with natural (or infinite)
// endpoints, plus the distinguished "undef" singleton used by clock
// constraints, and event-clock identifiers.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ecnl/rational.hpp"

namespace ecnl {

struct Interval {
    bool undef = false;          // the {undef} singleton; all other fields ignored
    unsigned long lo = 0;
    bool lo_strict = false;
    std::optional<unsigned long> hi;  // nullopt = +infinity
    bool hi_strict = false;           // meaningful only when hi is finite

    static Interval undef_singleton() { return Interval{true, 0, false, std::nullopt, false}; }
    static Interval closed(unsigned long a, unsigned long b) {
        return Interval{false, a, false, b, false};
    }
    static Interval right_open(unsigned long a, unsigned long b) {
        return Interval{false, a, false, b, true};
    }
    static Interval left_open(unsigned long a, unsigned long b) {
        return Interval{false, a, true, b, false};
    }
    static Interval open(unsigned long a, unsigned long b) {
        return Interval{false, a, true, b, true};
    }
    static Interval at_least(unsigned long a) { return Interval{false, a, false, std::nullopt, false}; }
    static Interval greater_than(unsigned long a) { return Interval{false, a, true, std::nullopt, false}; }
    static Interval singleton(unsigned long a) { return closed(a, a); }
    static Interval all() { return at_least(0); }

    bool is_undef() const { return undef; }
    bool unbounded() const { return !undef && !hi.has_value(); }

    // Nonempty over the non-negative rationals.
    bool nonempty() const;

    // Membership of a rational value (an undef clock value matches only the
    // undef singleton, handled by callers).
    bool contains(const Rat& v) const;

    bool singular() const { return !undef && hi.has_value() && lo == *hi; }

    // In INTS: nonsingular, and unbounded or left-closed with left endpoint 0.
    bool in_ints() const {
        if (undef || singular()) return false;
        return !hi.has_value() || (lo == 0 && !lo_strict);
    }

    // Maximal intervals of [0, inf) disjoint from this one.  The undef
    // singleton is not included; callers add it when complementing a guard.
    std::vector<Interval> complement_pieces() const;

    bool operator==(const Interval& o) const;

    std::string to_string() const;
    // Accepts "[a,b]", "(a,b)", "[a,inf)", mixed brackets, and "undef".
    static std::optional<Interval> parse(const std::string& text);
};

enum class Axis : uint8_t { Global, Abstract, Caller };

struct ClockId {
    Axis axis = Axis::Global;
    bool predictor = false;   // recorder when false
    std::string index;        // proposition name, or a closure-formula key

    bool operator==(const ClockId& o) const {
        return axis == o.axis && predictor == o.predictor && index == o.index;
    }

    // "(x|y)(g|a|c):name"; the caller predictor "yc:..." does not exist.
    std::string to_string() const;
    static std::optional<ClockId> parse(const std::string& text);
};

// One conjunct of a clock constraint.
struct ClockAtom {
    ClockId clock;
    Interval interval;
    bool operator==(const ClockAtom& o) const { return clock == o.clock && interval == o.interval; }
};

// A conjunction of atomic constraints; empty means "always satisfied".
using ClockConstraint = std::vector<ClockAtom>;

}  // namespace ecnl
