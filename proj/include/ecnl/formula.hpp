// Interned formula DAG shared by both logics.
//
// Structurally identical formulas receive the same FormulaId, so equality is
// O(1) and closures / memo tables index by id.  Double negation is collapsed
// at construction: not_(not_(x)) == x by interning, which matches the
// identification used by the tableau closure.
#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "ecnl/interval.hpp"
#include "ecnl/words.hpp"

namespace ecnl {

using FormulaId = uint32_t;
inline constexpr FormulaId kNoFormula = static_cast<FormulaId>(-1);

enum class FOp : uint8_t {
    True,
    Prop,
    Or,
    Not,
    Next,       // dir in {g,a}
    Prev,       // dir in {g,a,c}
    Until,      // dir in {g,a}, non-strict
    Since,      // dir in {g,a,c}, non-strict
    NextClock,  // dir in {g,a}, first-occurrence predictor bound
    PrevClock,  // dir in {g,a,c}, first-occurrence recorder bound
    TUntil,     // dir in {g,a}, strict timed until
    TSince,     // dir in {g,a,c}, strict timed since
};

struct FNode {
    FOp op = FOp::True;
    Axis dir = Axis::Global;
    Interval ivl;  // meaningful for the clock / timed operators
    FormulaId a = kNoFormula;
    FormulaId b = kNoFormula;
    std::string name;  // Prop only
};

struct FormulaMetrics {
    size_t size = 0;                       // number of distinct subformulas
    std::set<unsigned long> constants;     // finite interval endpoints
    bool recursive = false;                // some clock operator has a non-prop argument
};

class FormulaArena {
  public:
    FormulaArena();

    const FNode& node(FormulaId id) const { return nodes_[id]; }
    size_t size() const { return nodes_.size(); }

    FormulaId tru();
    FormulaId falsum();  // !true
    FormulaId prop(const std::string& name);
    FormulaId or_(FormulaId a, FormulaId b);
    FormulaId not_(FormulaId a);
    FormulaId next(Axis dir, FormulaId a);
    FormulaId prev(Axis dir, FormulaId a);
    FormulaId until(Axis dir, FormulaId a, FormulaId b);
    FormulaId since(Axis dir, FormulaId a, FormulaId b);
    FormulaId nextclock(Axis dir, const Interval& ivl, FormulaId a);
    FormulaId prevclock(Axis dir, const Interval& ivl, FormulaId a);
    FormulaId tuntil(Axis dir, const Interval& ivl, FormulaId a, FormulaId b);
    FormulaId tsince(Axis dir, const Interval& ivl, FormulaId a, FormulaId b);

    // Sugar over the core constructors.
    FormulaId and_(FormulaId a, FormulaId b) { return not_(or_(not_(a), not_(b))); }
    FormulaId implies(FormulaId a, FormulaId b) { return or_(not_(a), b); }
    FormulaId eventually(Axis dir, FormulaId a) { return until(dir, tru(), a); }
    FormulaId always(Axis dir, FormulaId a) { return not_(eventually(dir, not_(a))); }

    // The complementary formula with double negation collapsed.
    FormulaId negation_of(FormulaId a);

    // Reachable-DAG statistics and syntax-fragment checks.
    FormulaMetrics metrics(FormulaId id) const;
    bool is_ecntl(FormulaId id) const;  // no timed until/since
    bool is_nmtl(FormulaId id) const;   // only true/prop/or/not/tuntil/tsince
    bool future_only(FormulaId id) const;  // no Prev/Since/PrevClock/TSince

    // Proposition names occurring in the formula (excluding reserved ones is
    // the caller's business).
    std::vector<std::string> props_of(FormulaId id) const;

    // Canonical concrete syntax; parse(print(f)) == f.
    std::string print(FormulaId id) const;

  private:
    FormulaId intern(FNode n);
    std::vector<FNode> nodes_;
    std::unordered_map<std::string, FormulaId> table_;
    std::string key(const FNode& n) const;
};

}  // namespace ecnl
