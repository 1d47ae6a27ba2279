#include "ecnl/atoms.hpp"

#include <algorithm>

namespace ecnl {

Closure Closure::build(FormulaArena& arena, FormulaId phi,
                       const std::vector<std::string>& ambient_props) {
    if (!arena.is_ecntl(phi))
        fail("not-in-fragment", "closure is defined for ECNTL formulas only");
    Closure cl;
    cl.ar_ = &arena;
    cl.phi_ = phi;

    std::vector<FormulaId> work{phi};
    std::vector<char> seen;
    auto push = [&](FormulaId f) {
        if (seen.size() <= f) seen.resize(f + 1, 0);
        if (!seen[f]) {
            seen[f] = 1;
            work.push_back(f);
        }
    };
    seen.resize(arena.size(), 0);
    seen[phi] = 1;

    std::vector<FormulaId> base;
    while (!work.empty()) {
        FormulaId f = work.back();
        work.pop_back();
        base.push_back(f);
        const FNode& n = arena.node(f);
        if (n.a != kNoFormula) push(n.a);
        if (n.b != kNoFormula) push(n.b);
    }
    // true, the propositions (including the reserved ones and pinf), and the
    // two abstract step markers.
    base.push_back(arena.tru());
    for (const char* p : {"call", "ret", "int", "pinf"}) base.push_back(arena.prop(p));
    for (const std::string& p : arena.props_of(phi)) base.push_back(arena.prop(p));
    for (const std::string& p : ambient_props) base.push_back(arena.prop(p));
    base.push_back(arena.next(Axis::Abstract, arena.tru()));
    base.push_back(arena.prev(Axis::Abstract, arena.tru()));
    // Unwinding formulas for every until/since.
    size_t base_n = base.size();
    for (size_t k = 0; k < base_n; ++k) {
        const FNode& n = arena.node(base[k]);
        if (n.op == FOp::Until) base.push_back(arena.next(n.dir, base[k]));
        if (n.op == FOp::Since) base.push_back(arena.prev(n.dir, base[k]));
    }
    // Close under negation (double negation is collapsed by the arena).
    size_t with_unwinds = base.size();
    for (size_t k = 0; k < with_unwinds; ++k) base.push_back(arena.negation_of(base[k]));

    std::sort(base.begin(), base.end());
    base.erase(std::unique(base.begin(), base.end()), base.end());
    if (base.size() > kMaxClosureItems)
        fail("closure-too-large", "closure has " + std::to_string(base.size()) +
                                      " items; the tableau cap is " +
                                      std::to_string(kMaxClosureItems));
    cl.items_ = std::move(base);
    for (size_t i = 0; i < cl.items_.size(); ++i) cl.index_[cl.items_[i]] = i;

    cl.neg_.resize(cl.items_.size());
    for (size_t i = 0; i < cl.items_.size(); ++i)
        cl.neg_[i] = cl.index_.at(arena.negation_of(cl.items_[i]));

    cl.idx_true_ = cl.index_.at(arena.tru());
    cl.idx_call_ = cl.index_.at(arena.prop("call"));
    cl.idx_ret_ = cl.index_.at(arena.prop("ret"));
    cl.idx_int_ = cl.index_.at(arena.prop("int"));
    cl.idx_pinf_ = cl.index_.at(arena.prop("pinf"));
    cl.idx_next_abs_true_ = cl.index_.at(arena.next(Axis::Abstract, arena.tru()));
    cl.idx_prev_abs_true_ = cl.index_.at(arena.prev(Axis::Abstract, arena.tru()));

    for (size_t i = 0; i < cl.items_.size(); ++i) {
        const FNode& n = arena.node(cl.items_[i]);
        switch (n.op) {
            case FOp::Prop:
                cl.props_.push_back(i);
                break;
            case FOp::Next:
                cl.nexts_.push_back({i, cl.index_.at(n.a), n.dir});
                break;
            case FOp::Prev:
                cl.prevs_.push_back({i, cl.index_.at(n.a), n.dir});
                break;
            case FOp::Until:
                cl.untils_.push_back({i, cl.index_.at(n.a), cl.index_.at(n.b),
                                      cl.index_.at(arena.next(n.dir, cl.items_[i])), n.dir});
                break;
            case FOp::Since:
                cl.sinces_.push_back({i, cl.index_.at(n.a), cl.index_.at(n.b),
                                      cl.index_.at(arena.prev(n.dir, cl.items_[i])), n.dir});
                break;
            case FOp::NextClock:
                cl.clocks_.push_back({i, cl.index_.at(n.a), n.dir, n.ivl, true});
                break;
            case FOp::PrevClock:
                cl.clocks_.push_back({i, cl.index_.at(n.a), n.dir, n.ivl, false});
                break;
            default:
                break;
        }
    }
    return cl;
}

size_t Closure::index_of(FormulaId f) const {
    auto it = index_.find(f);
    if (it == index_.end()) fail("mismatched-closure", "formula is not a closure member");
    return it->second;
}

PropSet Closure::project(const Atom& a) const {
    std::vector<std::string> names;
    for (size_t i : props_) {
        if (!a.test(i)) continue;
        const std::string& n = ar_->node(items_[i]).name;
        if (n == kPinf) continue;  // tableau-internal
        names.push_back(n);
    }
    return PropSet(std::move(names));
}

SymKind Closure::sym_kind(const Atom& a) const {
    if (a.test(idx_call_)) return SymKind::Call;
    if (a.test(idx_ret_)) return SymKind::Ret;
    return SymKind::Internal;
}

std::string Closure::render(const Atom& a) const {
    std::string s = "{";
    bool first = true;
    for (size_t i = 0; i < items_.size(); ++i) {
        if (!a.test(i)) continue;
        if (ar_->node(items_[i]).op == FOp::Not) continue;  // positives are enough
        if (!first) s += ", ";
        first = false;
        s += ar_->print(items_[i]);
    }
    s += "}";
    return s;
}

// ---------------------------------------------------------------------------
// Enumeration
// ---------------------------------------------------------------------------

namespace {

struct EnumPlan {
    // Representatives (items that are not negations) in decision order:
    // reserved 3-way first, then the abstract gates, then other free reps,
    // with derived reps (true/or/until/since) computed afterwards in id order.
    std::vector<size_t> free_reps;
    std::vector<size_t> derived_reps;  // ascending item index == topological
    std::vector<size_t> unwind_of;     // per item: unwind index for until/since reps
};

EnumPlan make_plan(const Closure& cl) {
    EnumPlan plan;
    plan.unwind_of.assign(cl.size(), 0);
    for (const auto& u : cl.untils()) plan.unwind_of[u.self] = u.unwind;
    for (const auto& s : cl.sinces()) plan.unwind_of[s.self] = s.unwind;
    const FormulaArena& ar = cl.arena();
    for (size_t i = 0; i < cl.size(); ++i) {
        const FNode& n = ar.node(cl.item(i));
        if (n.op == FOp::Not) continue;
        switch (n.op) {
            case FOp::True:
            case FOp::Or:
            case FOp::Until:
            case FOp::Since:
                plan.derived_reps.push_back(i);
                break;
            case FOp::Prop:
                if (i == cl.idx_call() || i == cl.idx_ret() || i == cl.idx_int())
                    break;  // decided by the 3-way choice
                plan.free_reps.push_back(i);
                break;
            default:
                plan.free_reps.push_back(i);
                break;
        }
    }
    // Gates first so gating can prune assignments.
    auto gate_first = [&](size_t gate) {
        auto it = std::find(plan.free_reps.begin(), plan.free_reps.end(), gate);
        if (it != plan.free_reps.end()) std::rotate(plan.free_reps.begin(), it, it + 1);
    };
    gate_first(cl.idx_prev_abs_true());
    gate_first(cl.idx_next_abs_true());
    return plan;
}

class Enumerator {
  public:
    Enumerator(const Closure& cl, const std::vector<int8_t>& seeds,
               const std::function<bool(const Atom&)>& emit)
        : cl_(cl), seeds_(seeds), emit_(emit), plan_(make_plan(cl)) {
        val_.assign(cl.size(), 0);
    }

    bool run() {
        stopped_ = false;
        // Reserved 3-way choice, in the fixed order call < ret < int by index
        // order of the items (deterministic).
        size_t reserved[3] = {cl_.idx_call(), cl_.idx_ret(), cl_.idx_int()};
        std::sort(std::begin(reserved), std::end(reserved));
        for (size_t pick : reserved) {
            bool ok = true;
            for (size_t r : reserved)
                if (!try_assign(r, r == pick)) {
                    ok = false;
                    break;
                }
            if (ok) decide(0);
            for (size_t r : reserved) unassign(r);
            if (stopped_) return true;
        }
        return stopped_;
    }

  private:
    bool seed_ok(size_t item, bool v) const {
        if (!seeds_.empty() && seeds_[item] >= 0 && seeds_[item] != (v ? 1 : 0)) return false;
        size_t n = cl_.neg(item);
        if (!seeds_.empty() && seeds_[n] >= 0 && seeds_[n] != (v ? 0 : 1)) return false;
        return true;
    }

    bool try_assign(size_t rep, bool v) {
        if (!seed_ok(rep, v)) return false;
        val_[rep] = v ? 1 : 0;
        val_[cl_.neg(rep)] = v ? 0 : 1;
        return true;
    }

    void unassign(size_t) {}

    bool gate_forces_false(size_t rep) const {
        const FNode& n = cl_.arena().node(cl_.item(rep));
        if (n.op == FOp::Next && n.dir == Axis::Abstract && rep != cl_.idx_next_abs_true())
            return val_[cl_.idx_next_abs_true()] == 0;
        if (n.op == FOp::Prev && n.dir == Axis::Abstract && rep != cl_.idx_prev_abs_true())
            return val_[cl_.idx_prev_abs_true()] == 0;
        return false;
    }

    void decide(size_t k) {
        if (stopped_) return;
        if (k == plan_.free_reps.size()) {
            finish();
            return;
        }
        size_t rep = plan_.free_reps[k];
        if (gate_forces_false(rep)) {
            if (try_assign(rep, false)) decide(k + 1);
            return;
        }
        for (bool v : {false, true}) {
            if (!try_assign(rep, v)) continue;
            decide(k + 1);
            if (stopped_) return;
        }
    }

    void finish() {
        // Compute derived members in topological (item-index) order.
        for (size_t rep : plan_.derived_reps) {
            const FNode& n = cl_.arena().node(cl_.item(rep));
            bool v = false;
            switch (n.op) {
                case FOp::True: v = true; break;
                case FOp::Or: v = val_[cl_.index_of(n.a)] || val_[cl_.index_of(n.b)]; break;
                case FOp::Until:
                case FOp::Since: {
                    // psi1 U psi2 in A  iff  psi2 in A, or {psi1, unwind} in A.
                    size_t a = cl_.index_of(n.a), b = cl_.index_of(n.b);
                    size_t uw = plan_.unwind_of[rep];
                    v = val_[b] || (val_[a] && val_[uw]);
                    break;
                }
                default: break;
            }
            if (!seed_ok(rep, v)) return;  // seed conflict: prune
            val_[rep] = v ? 1 : 0;
            val_[cl_.neg(rep)] = v ? 0 : 1;
        }
        Atom a;
        a.cl = &cl_;
        for (size_t i = 0; i < cl_.size(); ++i) a.bits.set(i, val_[i] != 0);
        if (!emit_(a)) stopped_ = true;
    }

    const Closure& cl_;
    const std::vector<int8_t>& seeds_;
    const std::function<bool(const Atom&)>& emit_;
    EnumPlan plan_;
    std::vector<int8_t> val_;
    bool stopped_ = false;
};

}  // namespace

bool enumerate_atoms_seeded(const Closure& cl, const std::vector<int8_t>& seeds,
                            const std::function<bool(const Atom&)>& emit) {
    Enumerator e(cl, seeds, emit);
    return e.run();
}

std::vector<Atom> enumerate_atoms(const Closure& cl) {
    std::vector<Atom> out;
    enumerate_atoms_seeded(cl, {}, [&](const Atom& a) {
        out.push_back(a);
        return true;
    });
    return out;
}

bool is_valid_atom(const Closure& cl, const AtomBits& bits) {
    const FormulaArena& ar = cl.arena();
    if (!bits.test(cl.idx_true())) return false;
    for (size_t i = 0; i < cl.size(); ++i)
        if (bits.test(i) == bits.test(cl.neg(i))) return false;
    int reserved = (bits.test(cl.idx_call()) ? 1 : 0) + (bits.test(cl.idx_ret()) ? 1 : 0) +
                   (bits.test(cl.idx_int()) ? 1 : 0);
    if (reserved != 1) return false;
    for (size_t i = 0; i < cl.size(); ++i) {
        const FNode& n = ar.node(cl.item(i));
        if (n.op == FOp::Or) {
            bool v = bits.test(cl.index_of(n.a)) || bits.test(cl.index_of(n.b));
            if (bits.test(i) != v) return false;
        }
    }
    for (const auto& u : cl.untils()) {
        bool v = bits.test(u.b) || (bits.test(u.a) && bits.test(u.unwind));
        if (bits.test(u.self) != v) return false;
    }
    for (const auto& s : cl.sinces()) {
        bool v = bits.test(s.b) || (bits.test(s.a) && bits.test(s.unwind));
        if (bits.test(s.self) != v) return false;
    }
    for (const auto& st : cl.nexts())
        if (st.dir == Axis::Abstract && bits.test(st.self) && !bits.test(cl.idx_next_abs_true()))
            return false;
    for (const auto& st : cl.prevs())
        if (st.dir == Axis::Abstract && bits.test(st.self) && !bits.test(cl.idx_prev_abs_true()))
            return false;
    return true;
}

// ---------------------------------------------------------------------------
// Support predicates
// ---------------------------------------------------------------------------

static void require_same_closure(const Atom& a, const Atom& b) {
    if (a.cl == nullptr || a.cl != b.cl) fail("mismatched-closure", "atoms of different closures");
}

bool next_prev(const Atom& a, const Atom& b) {
    require_same_closure(a, b);
    const Closure& cl = *a.cl;
    for (const auto& st : cl.nexts())
        if (st.dir == Axis::Global && a.test(st.self) != b.test(st.arg)) return false;
    for (const auto& st : cl.prevs())
        if (st.dir == Axis::Global && b.test(st.self) != a.test(st.arg)) return false;
    return true;
}

bool abs_next_prev(const Atom& a, const Atom& b) {
    require_same_closure(a, b);
    const Closure& cl = *a.cl;
    for (const auto& st : cl.nexts())
        if (st.dir == Axis::Abstract && a.test(st.self) != b.test(st.arg)) return false;
    for (const auto& st : cl.prevs()) {
        if (st.dir == Axis::Abstract && b.test(st.self) != a.test(st.arg)) return false;
        if (st.dir == Axis::Caller && a.test(st.self) != b.test(st.self)) return false;
    }
    return true;
}

std::vector<size_t> caller_of(const Atom& a) {
    if (a.cl == nullptr) fail("mismatched-closure", "atom without a closure");
    std::vector<size_t> out;
    for (const auto& st : a.cl->prevs())
        if (st.dir == Axis::Caller && a.test(st.self)) out.push_back(st.self);
    return out;
}

bool terminal_admissible(const Atom& a) {
    const Closure& cl = *a.cl;
    for (const auto& st : cl.nexts())
        if (st.dir == Axis::Global && a.test(st.self)) return false;
    return !a.test(cl.idx_next_abs_true());
}

// ---------------------------------------------------------------------------
// Hintikka words
// ---------------------------------------------------------------------------

TimedWord HintikkaWord::project() const {
    TimedWord w;
    for (size_t i = 0; i < atoms.size(); ++i) {
        w.syms.push_back(cl->project(atoms[i]));
        w.stamps.push_back(stamps[i]);
    }
    return w;
}

std::vector<SymKind> HintikkaWord::kinds() const {
    std::vector<SymKind> ks;
    ks.reserve(atoms.size());
    for (const auto& a : atoms) ks.push_back(cl->sym_kind(a));
    return ks;
}

std::optional<Rat> atom_clock_value(const HintikkaWord& hw, const WordStructure& ws, size_t i,
                                    size_t arg_idx, Axis axis, bool predictor) {
    return clock_value(ws, hw.stamps, [&](size_t p) { return hw.atoms[p].test(arg_idx); }, i,
                       axis, predictor);
}

HintikkaDiagnostic hintikka_check(const HintikkaWord& hw) {
    const Closure& cl = *hw.cl;
    const size_t n = hw.size();
    auto bad = [&](int property, size_t pos, std::string msg) {
        return HintikkaDiagnostic{false, property, pos, std::move(msg)};
    };
    for (size_t i = 0; i < n; ++i) {
        if (hw.atoms[i].cl != hw.cl) return bad(0, i, "atom of a different closure");
        if (!is_valid_atom(cl, hw.atoms[i].bits)) return bad(0, i, "not an atom");
    }
    if (n == 0) return {};

    // Property 1: initial consistency.
    for (const auto& st : cl.prevs())
        if (hw.atoms[0].test(st.self)) return bad(1, 0, "previous requirement asserted at 0");

    // Property 2: global next and previous requirements.
    for (size_t i = 0; i + 1 < n; ++i)
        if (!next_prev(hw.atoms[i], hw.atoms[i + 1])) return bad(2, i, "NextPrev fails");

    // Property 3: abstract and caller requirements.
    WordStructure ws = WordStructure::build(hw.kinds());
    const size_t pinf = cl.idx_pinf();
    const size_t natx = cl.idx_next_abs_true();
    const size_t patx = cl.idx_prev_abs_true();
    for (size_t i = 0; i < n; ++i) {
        const Atom& A = hw.atoms[i];
        bool is_call = A.test(cl.idx_call());
        if (!is_call) {
            if (i + 1 >= n) continue;
            const Atom& B = hw.atoms[i + 1];
            if (!B.test(cl.idx_ret())) {
                if (!abs_next_prev(A, B)) return bad(3, i, "AbsNextPrev fails");
                if (A.test(pinf) != B.test(pinf)) return bad(3, i, "pinf must propagate");
            } else {
                if (A.test(natx)) return bad(3, i, "abstract successor asserted before a return");
                bool matched = ws.match[i + 1] != kNoPos;
                if (B.test(patx) != matched)
                    return bad(3, i, "abstract predecessor claim disagrees with matching call");
                if (!B.test(patx)) {
                    if (!A.test(pinf) || !B.test(pinf))
                        return bad(3, i, "pinf required around an unmatched return");
                    if (!caller_of(B).empty())
                        return bad(3, i, "unmatched return must have no caller requirements");
                }
            }
        } else {
            if (ws.abs_succ[i] == kNoPos) {
                if (A.test(natx)) return bad(3, i, "unmatched call asserts an abstract successor");
                if (!A.test(pinf)) return bad(3, i, "unmatched call requires pinf");
            } else {
                const Atom& J = hw.atoms[static_cast<size_t>(ws.abs_succ[i])];
                if (!abs_next_prev(A, J)) return bad(3, i, "AbsNextPrev at matching return fails");
                if (A.test(pinf) != J.test(pinf)) return bad(3, i, "pinf differs across the call");
            }
            if (i + 1 < n && !hw.atoms[i + 1].test(cl.idx_ret())) {
                const Atom& B = hw.atoms[i + 1];
                // Caller(A_{i+1}) = { Prev^c psi : psi in A_i }.
                for (const auto& st : cl.prevs()) {
                    if (st.dir != Axis::Caller) continue;
                    if (B.test(st.self) != A.test(st.arg))
                        return bad(3, i, "caller requirements not inherited from the call");
                }
                if (A.test(natx) == B.test(pinf))
                    return bad(3, i, "pinf at the body start disagrees with the matching claim");
            }
        }
    }

    // Property 4: real-time requirements, both directions.
    for (size_t i = 0; i < n; ++i) {
        for (const auto& ck : cl.clocks()) {
            auto v = atom_clock_value(hw, ws, i, ck.arg, ck.dir, ck.predictor);
            bool in = v.has_value() && ck.ivl.contains(*v);
            if (hw.atoms[i].test(ck.self) != in)
                return bad(4, i, "clock formula disagrees with the clock value");
        }
    }

    // Finite-word terminal admissibility.
    if (!terminal_admissible(hw.atoms[n - 1]))
        return bad(5, n - 1, "pending next obligations at the end of the word");
    return {};
}

bool fairness_check(const std::vector<Atom>& prefix, const std::vector<Atom>& loop) {
    if (loop.empty()) fail("empty-loop", "fairness needs a nonempty loop");
    const Closure* cl = loop.front().cl;
    for (const auto& a : prefix)
        if (a.cl != cl) fail("mismatched-closure", "prefix atom of a different closure");
    for (const auto& a : loop)
        if (a.cl != cl) fail("mismatched-closure", "loop atom of a different closure");

    bool pinf_seen = false;
    for (const auto& a : loop) pinf_seen |= a.test(cl->idx_pinf());
    if (!pinf_seen) return false;
    for (const auto& u : cl->untils()) {
        bool fulfilled = false;
        for (const auto& a : loop) {
            bool hit = a.test(u.b) || !a.test(u.self);
            if (u.dir == Axis::Abstract) hit = hit && a.test(cl->idx_pinf());
            fulfilled |= hit;
        }
        if (!fulfilled) return false;
    }
    return true;
}

HintikkaWord induce_hintikka(const TimedWord& w, const Closure& cl) {
    if (w.empty()) fail("out-of-range", "cannot induce a Hintikka word from the empty word");
    HintikkaWord hw;
    hw.cl = &cl;
    hw.stamps = w.stamps;
    Evaluator ev(cl.arena(), w);
    for (size_t i = 0; i < w.size(); ++i) {
        Atom a;
        a.cl = &cl;
        for (size_t k = 0; k < cl.size(); ++k) a.bits.set(k, ev.eval(cl.item(k), i));
        hw.atoms.push_back(std::move(a));
    }
    return hw;
}

}  // namespace ecnl
