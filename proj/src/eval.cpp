#include "ecnl/eval.hpp"

namespace ecnl {

Evaluator::Evaluator(const FormulaArena& arena, const TimedWord& word)
    : ar_(arena), w_(word), ws_(WordStructure::build(kinds_of(word))) {}

bool Evaluator::eval(FormulaId f, size_t i) {
    if (i >= w_.size()) fail("out-of-range", "evaluation position " + std::to_string(i));
    if (memo_.size() < ar_.size()) memo_.resize(ar_.size());
    auto& row = memo_[f];
    if (row.empty()) row.assign(w_.size(), -1);
    if (row[i] >= 0) return row[i] != 0;
    bool v = compute(f, i);
    row[i] = v ? 1 : 0;
    return v;
}

bool Evaluator::occurs(FormulaId f, size_t p) { return eval(f, p); }

bool pinf_holds(const WordStructure& ws, size_t i) {
    long c = ws.caller[i];
    if (c == kNoPos) return true;
    return ws.match[c] == kNoPos;  // pending caller: its matching return is undefined
}

bool Evaluator::compute(FormulaId f, size_t i) {
    const FNode& n = ar_.node(f);
    switch (n.op) {
        case FOp::True:
            return true;
        case FOp::Prop:
            if (n.name == kPinf) return pinf_holds(ws_, i);
            return w_.syms[i].contains(n.name);
        case FOp::Or:
            return eval(n.a, i) || eval(n.b, i);
        case FOp::Not:
            return !eval(n.a, i);
        case FOp::Next: {
            auto j = successor(n.dir, ws_, i);
            return j.has_value() && eval(n.a, *j);
        }
        case FOp::Prev: {
            // Asymmetric clause: for the caller direction the witness is
            // j = SUCC(caller, sigma, i); otherwise i = SUCC(dir, sigma, j).
            if (n.dir == Axis::Caller) {
                auto j = successor(Axis::Caller, ws_, i);
                return j.has_value() && eval(n.a, *j);
            }
            long j = (n.dir == Axis::Global) ? (i > 0 ? static_cast<long>(i - 1) : kNoPos)
                                             : ws_.abs_pred[i];
            return j != kNoPos && eval(n.a, static_cast<size_t>(j));
        }
        case FOp::Until: {
            auto path = positions(n.dir, ws_, i);
            for (size_t j : path) {
                if (j < i) continue;
                if (eval(n.b, j)) return true;
                if (!eval(n.a, j)) return false;
            }
            return false;
        }
        case FOp::Since: {
            auto path = positions(n.dir, ws_, i);
            for (auto it = path.rbegin(); it != path.rend(); ++it) {
                size_t j = *it;
                if (j > i) continue;
                if (eval(n.b, j)) return true;
                if (!eval(n.a, j)) return false;
            }
            return false;
        }
        case FOp::NextClock: {
            // First future occurrence of the argument on the dir-path, with
            // the time distance constrained.
            auto path = positions(n.dir, ws_, i);
            for (size_t j : path) {
                if (j <= i) continue;
                if (eval(n.a, j)) return n.ivl.contains(Rat(w_.stamps[j] - w_.stamps[i]));
            }
            return false;
        }
        case FOp::PrevClock: {
            auto path = positions(n.dir, ws_, i);
            for (auto it = path.rbegin(); it != path.rend(); ++it) {
                size_t j = *it;
                if (j >= i) continue;
                if (eval(n.a, j)) return n.ivl.contains(Rat(w_.stamps[i] - w_.stamps[j]));
            }
            return false;
        }
        case FOp::TUntil: {
            // Strict: witness j > i on the path, left argument on (i, j).
            auto path = positions(n.dir, ws_, i);
            for (size_t j : path) {
                if (j <= i) continue;
                if (eval(n.b, j) && n.ivl.contains(Rat(w_.stamps[j] - w_.stamps[i]))) return true;
                if (!eval(n.a, j)) return false;
            }
            return false;
        }
        case FOp::TSince: {
            auto path = positions(n.dir, ws_, i);
            for (auto it = path.rbegin(); it != path.rend(); ++it) {
                size_t j = *it;
                if (j >= i) continue;
                if (eval(n.b, j) && n.ivl.contains(Rat(w_.stamps[i] - w_.stamps[j]))) return true;
                if (!eval(n.a, j)) return false;
            }
            return false;
        }
    }
    return false;
}

bool models(const FormulaArena& arena, const TimedWord& word, FormulaId f) {
    if (word.empty()) return false;  // no position 0 on the empty word
    Evaluator ev(arena, word);
    return ev.eval(f, 0);
}

FormulaId nmtl_derived(FormulaArena& ar, DerivedOp op, Axis dir, const Interval& ivl,
                       FormulaId f) {
    switch (op) {
        case DerivedOp::F:
            if (dir == Axis::Caller) fail("illegal-combination", "F does not admit caller");
            return ar.tuntil(dir, ivl, ar.tru(), f);
        case DerivedOp::G:
            if (dir == Axis::Caller) fail("illegal-combination", "G does not admit caller");
            return ar.not_(ar.tuntil(dir, ivl, ar.tru(), ar.not_(f)));
        case DerivedOp::P:
            return ar.tsince(dir, ivl, ar.tru(), f);
        case DerivedOp::H:
            return ar.not_(ar.tsince(dir, ivl, ar.tru(), ar.not_(f)));
    }
    fail("illegal-combination", "unknown derived operator");
}

}  // namespace ecnl
