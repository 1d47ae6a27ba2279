#include "ecnl/translate.hpp"

#include <unordered_map>

namespace ecnl {

bool is_nmitl(const FormulaArena& ar, FormulaId f) {
    if (!ar.is_nmtl(f)) return false;
    bool ok = true;
    std::vector<FormulaId> stack{f};
    std::vector<char> seen(ar.size(), 0);
    while (!stack.empty()) {
        FormulaId x = stack.back();
        stack.pop_back();
        if (seen[x]) continue;
        seen[x] = 1;
        const FNode& n = ar.node(x);
        if ((n.op == FOp::TUntil || n.op == FOp::TSince) && !n.ivl.in_ints()) ok = false;
        if (n.a != kNoFormula) stack.push_back(n.a);
        if (n.b != kNoFormula) stack.push_back(n.b);
    }
    return ok;
}

namespace {

// ECNTL building blocks used by the forward translation.
struct EcntlKit {
    FormulaArena& ar;

    FormulaId strict_until(Axis d, FormulaId a, FormulaId b) {
        return ar.next(d, ar.until(d, a, b));
    }
    FormulaId strict_since(Axis d, FormulaId a, FormulaId b) {
        return ar.prev(d, ar.since(d, a, b));
    }
    FormulaId strict_ev(Axis d, FormulaId b) { return strict_until(d, ar.tru(), b); }
    FormulaId strict_pe(Axis d, FormulaId b) { return strict_since(d, ar.tru(), b); }
    // The unique path position carrying b with no later (earlier) b.
    FormulaId last_occurrence(Axis d, FormulaId b) {
        return ar.and_(b, ar.not_(strict_ev(d, b)));
    }
    FormulaId earliest_occurrence(Axis d, FormulaId b) {
        return ar.and_(b, ar.not_(strict_pe(d, b)));
    }
};

// The complement piece of a lower-bound interval below the bound.
Interval below_window(const Interval& bound) {
    // bound is [c,inf) or (c,inf); the window is [0,c) resp. [0,c].
    return Interval{false, 0, false, bound.lo, !bound.lo_strict};
}

class Translator {
  public:
    explicit Translator(FormulaArena& ar) : ar_(ar), kit_{ar} {}

    FormulaId to_ecntl(FormulaId f) {
        auto it = memo_fwd_.find(f);
        if (it != memo_fwd_.end()) return it->second;
        const FNode n = ar_.node(f);
        FormulaId out = kNoFormula;
        switch (n.op) {
            case FOp::True: out = ar_.tru(); break;
            case FOp::Prop: out = f; break;
            case FOp::Or: out = ar_.or_(to_ecntl(n.a), to_ecntl(n.b)); break;
            case FOp::Not: out = ar_.not_(to_ecntl(n.a)); break;
            case FOp::TUntil: out = timed_until(n.dir, n.ivl, to_ecntl(n.a), to_ecntl(n.b)); break;
            case FOp::TSince: out = timed_since(n.dir, n.ivl, to_ecntl(n.a), to_ecntl(n.b)); break;
            default: fail("not-in-fragment", "expected an NMTL formula");
        }
        memo_fwd_.emplace(f, out);
        return out;
    }

    FormulaId to_nmitl(FormulaId f) {
        auto it = memo_bwd_.find(f);
        if (it != memo_bwd_.end()) return it->second;
        const FNode n = ar_.node(f);
        FormulaId out = kNoFormula;
        switch (n.op) {
            case FOp::True: out = ar_.tru(); break;
            case FOp::Prop: out = f; break;
            case FOp::Or: out = ar_.or_(to_nmitl(n.a), to_nmitl(n.b)); break;
            case FOp::Not: out = ar_.not_(to_nmitl(n.a)); break;
            case FOp::Next:
                out = ar_.tuntil(n.dir, Interval::all(), ar_.falsum(), to_nmitl(n.a));
                break;
            case FOp::Prev:
                out = ar_.tsince(n.dir, Interval::all(), ar_.falsum(), to_nmitl(n.a));
                break;
            case FOp::Until: {
                FormulaId a = to_nmitl(n.a), b = to_nmitl(n.b);
                out = ar_.or_(b, ar_.and_(a, ar_.tuntil(n.dir, Interval::all(), a, b)));
                break;
            }
            case FOp::Since: {
                FormulaId a = to_nmitl(n.a), b = to_nmitl(n.b);
                out = ar_.or_(b, ar_.and_(a, ar_.tsince(n.dir, Interval::all(), a, b)));
                break;
            }
            case FOp::NextClock: out = clock_to_nmitl(n.dir, n.ivl, to_nmitl(n.a), false); break;
            case FOp::PrevClock: out = clock_to_nmitl(n.dir, n.ivl, to_nmitl(n.a), true); break;
            default: fail("not-in-fragment", "expected an ECNTL formula");
        }
        memo_bwd_.emplace(f, out);
        return out;
    }

  private:
    // Strict timed until with an INTS interval.
    FormulaId timed_until(Axis d, const Interval& ivl, FormulaId a, FormulaId b) {
        if (!ivl.in_ints()) fail("not-in-fragment", "interval outside INTS: " + ivl.to_string());
        if (ivl.hi.has_value()) {
            // Within-bound: the first occurrence of the target is early enough,
            // and the untimed strict until holds.
            return ar_.and_(kit_.strict_until(d, a, b), ar_.nextclock(d, ivl, b));
        }
        if (ivl.lo == 0 && !ivl.lo_strict) return kit_.strict_until(d, a, b);
        // Beyond-bound: some occurrence past the bound (the last one is), and
        // the left argument never fails before the window is exhausted.
        FormulaId ev_beyond = ar_.nextclock(d, ivl, kit_.last_occurrence(d, b));
        FormulaId su = kit_.strict_until(d, a, b);
        FormulaId theta = ar_.and_(b, ar_.not_(su));
        FormulaId fails_early =
            ar_.and_(kit_.strict_ev(d, ar_.not_(a)),
                     ar_.or_(ar_.not_(su), ar_.nextclock(d, below_window(ivl), theta)));
        return ar_.and_(ev_beyond, ar_.not_(fails_early));
    }

    FormulaId timed_since(Axis d, const Interval& ivl, FormulaId a, FormulaId b) {
        if (!ivl.in_ints()) fail("not-in-fragment", "interval outside INTS: " + ivl.to_string());
        if (ivl.hi.has_value()) {
            return ar_.and_(kit_.strict_since(d, a, b), ar_.prevclock(d, ivl, b));
        }
        if (ivl.lo == 0 && !ivl.lo_strict) return kit_.strict_since(d, a, b);
        FormulaId ev_beyond = ar_.prevclock(d, ivl, kit_.earliest_occurrence(d, b));
        FormulaId ss = kit_.strict_since(d, a, b);
        FormulaId theta = ar_.and_(b, ar_.not_(ss));
        FormulaId fails_early =
            ar_.and_(kit_.strict_pe(d, ar_.not_(a)),
                     ar_.or_(ar_.not_(ss), ar_.prevclock(d, below_window(ivl), theta)));
        return ar_.and_(ev_beyond, ar_.not_(fails_early));
    }

    // NextClock / PrevClock decompose by endpoint into first-occurrence
    // constraints in INTS.
    FormulaId clock_to_nmitl(Axis d, const Interval& ivl, FormulaId a, bool past) {
        auto first_in = [&](const Interval& piece) {
            return past ? ar_.tsince(d, piece, ar_.not_(a), a)
                        : ar_.tuntil(d, piece, ar_.not_(a), a);
        };
        std::vector<FormulaId> parts;
        if (ivl.hi.has_value()) {
            Interval upper{false, 0, false, ivl.hi, ivl.hi_strict};
            if (upper.in_ints()) {
                parts.push_back(first_in(upper));
            } else {
                // [0,0]: the first occurrence exists and is not strictly late.
                parts.push_back(ar_.and_(first_in(Interval::all()),
                                         ar_.not_(first_in(Interval::greater_than(0)))));
            }
        }
        if (ivl.lo > 0 || ivl.lo_strict) {
            Interval lower{false, ivl.lo, ivl.lo_strict, std::nullopt, false};
            parts.push_back(first_in(lower));
        }
        if (parts.empty()) return first_in(Interval::all());
        FormulaId out = parts[0];
        for (size_t k = 1; k < parts.size(); ++k) out = ar_.and_(out, parts[k]);
        return out;
    }

    FormulaArena& ar_;
    EcntlKit kit_;
    std::unordered_map<FormulaId, FormulaId> memo_fwd_, memo_bwd_;
};

}  // namespace

FormulaId nmitl_to_ecntl(FormulaArena& ar, FormulaId f) {
    if (!is_nmitl(ar, f)) fail("not-in-fragment", "formula is not in the NMITL fragment");
    Translator t(ar);
    return t.to_ecntl(f);
}

FormulaId ecntl_to_nmitl(FormulaArena& ar, FormulaId f) {
    if (!ar.is_ecntl(f)) fail("not-in-fragment", "formula is not ECNTL");
    Translator t(ar);
    return t.to_nmitl(f);
}

}  // namespace ecnl
