// Timed words over a propositional pushdown alphabet.
//
// Every symbol carries exactly one of the reserved propositions call / ret /
// int, which classifies it as a push, pop, or stack-neutral position.  The
// structural maps (matching returns, abstract successors, caller paths,
// maximal abstract paths) are computed once per word by a linear stack scan;
// the O(n^2) definitional scans live in the test suite as an oracle.
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ecnl/interval.hpp"
#include "ecnl/rational.hpp"

namespace ecnl {

// Typed error with a stable machine-readable kind string.
struct Error {
    std::string kind;
    std::string message;
};

[[noreturn]] void fail(std::string kind, std::string message);

inline constexpr std::string_view kCall = "call";
inline constexpr std::string_view kRet = "ret";
inline constexpr std::string_view kInt = "int";
inline constexpr std::string_view kPinf = "pinf";

enum class SymKind : uint8_t { Call, Ret, Internal };

// A finite set of proposition names, kept sorted and duplicate-free.
struct PropSet {
    std::vector<std::string> props;

    PropSet() = default;
    PropSet(std::initializer_list<std::string> names);
    explicit PropSet(std::vector<std::string> names);

    bool contains(std::string_view name) const;
    bool operator==(const PropSet& o) const { return props == o.props; }
    bool operator<(const PropSet& o) const { return props < o.props; }
    std::string to_string() const;
};

// Classification per the reserved propositions; throws malformed-symbol when
// zero or several of call/ret/int are present.
SymKind classify(const PropSet& sym);

// Non-throwing variant used by validation.
std::optional<SymKind> classify_opt(const PropSet& sym);

struct TimedWord {
    std::vector<PropSet> syms;
    std::vector<Rat> stamps;

    size_t size() const { return syms.size(); }
    bool empty() const { return syms.empty(); }
};

struct WordDiagnostic {
    bool ok = true;
    size_t position = 0;
    std::string reason;
};

// Monotone timestamps, well-formed symbols, and no reserved `pinf` in input
// words.  Violations are reported, never thrown.
WordDiagnostic validate_word(const TimedWord& w);

inline constexpr long kNoPos = -1;

// Structural maps of an untimed symbol-kind sequence.
struct WordStructure {
    std::vector<SymKind> kinds;
    std::vector<long> match;     // calls: matching return; rets: matching call; else -1
    std::vector<long> caller;    // SUCC(caller, ., i), -1 when none
    std::vector<long> abs_succ;  // SUCC(abs, ., i), -1 when none
    std::vector<long> abs_pred;  // unique j with SUCC(abs, ., j) = i, -1 when none

    size_t size() const { return kinds.size(); }
    static WordStructure build(std::span<const SymKind> kinds);
};

std::vector<SymKind> kinds_of(const TimedWord& w);

// matching return of a call position; Undefined reported as nullopt.
// Throws not-a-call / out-of-range.
std::optional<size_t> matching_return(const WordStructure& ws, size_t i);

// SUCC(kind, sigma, i); Undefined as nullopt.  Throws out-of-range.
std::optional<size_t> successor(Axis kind, const WordStructure& ws, size_t i);

// Pos(kind, sigma, i), ascending.  Global: every position.  Abstract: the
// unique MAP through i.  Caller: the caller path from i, including i.
std::vector<size_t> positions(Axis kind, const WordStructure& ws, size_t i);

// Event-clock value at position i, where occurrence of the clock's index is
// supplied by a predicate (proposition membership for plain words, closure
// membership for atom-labelled words).  Throws caller-predictor-requested.
std::optional<Rat> clock_value(const WordStructure& ws, std::span<const Rat> stamps,
                               const std::function<bool(size_t)>& occurs, size_t i, Axis axis,
                               bool predictor);

// Convenience overload for plain timed words.
std::optional<Rat> clock_value(const TimedWord& w, const WordStructure& ws, size_t i,
                               const ClockId& clock);
std::optional<Rat> clock_value(const TimedWord& w, size_t i, const ClockId& clock);

// A clock valuation is a pure function of (word, position).
class ClockValuation {
  public:
    ClockValuation(const TimedWord& w, const WordStructure& ws, size_t i)
        : w_(&w), ws_(&ws), i_(i) {}
    std::optional<Rat> operator()(const ClockId& clock) const {
        return clock_value(*w_, *ws_, i_, clock);
    }

  private:
    const TimedWord* w_;
    const WordStructure* ws_;
    size_t i_;
};

// val |= theta: every conjunct's value lies in its interval; an undefined
// value matches only the undef singleton.
bool constraint_sat(const std::function<std::optional<Rat>(const ClockId&)>& val,
                    const ClockConstraint& theta);
bool constraint_sat(const ClockValuation& val, const ClockConstraint& theta);

// Timed-word file format: a JSON array of {"props": [...], "t": "..."} records.
std::string word_to_json(const TimedWord& w, bool pretty = false);
TimedWord word_from_json(const std::string& text);  // throws schema errors

}  // namespace ecnl
