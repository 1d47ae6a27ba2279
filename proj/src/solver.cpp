#include "ecnl/solver.hpp"

#include <algorithm>
#include <atomic>
#include <map>

#include "ecnl/eval.hpp"

namespace ecnl {

// ---------------------------------------------------------------------------
// Constraint compilation
// ---------------------------------------------------------------------------

namespace {

// tau_v - tau_u in ivl, encoded as difference constraints.
void interval_constraints(uint32_t u, uint32_t v, const Interval& ivl,
                          std::vector<DiffConstraint>& out) {
    if (ivl.hi.has_value())
        out.push_back({u, v, Rat(static_cast<long>(*ivl.hi)), ivl.hi_strict});
    if (ivl.lo > 0 || ivl.lo_strict)
        out.push_back({v, u, -Rat(static_cast<long>(ivl.lo)), ivl.lo_strict});
}

std::optional<size_t> clock_reference(const WordStructure& ws, const std::vector<Atom>& atoms,
                                      size_t i, const Closure::Clock& ck) {
    auto path = positions(ck.dir, ws, i);
    if (ck.predictor) {
        for (size_t j : path)
            if (j > i && atoms[j].test(ck.arg)) return j;
        return std::nullopt;
    }
    std::optional<size_t> best;
    for (size_t j : path) {
        if (j >= i) break;
        if (atoms[j].test(ck.arg)) best = j;
    }
    return best;
}

}  // namespace

std::variant<CompiledConstraints, StructuralInfeasibility> compile_constraints(
    const Closure& cl, const std::vector<Atom>& atoms) {
    CompiledConstraints cc;
    cc.base.n = static_cast<uint32_t>(atoms.size());
    std::vector<SymKind> kinds;
    kinds.reserve(atoms.size());
    for (const auto& a : atoms) {
        if (a.cl != &cl) fail("mismatched-closure", "atom of a different closure");
        kinds.push_back(cl.sym_kind(a));
    }
    WordStructure ws = WordStructure::build(kinds);

    for (size_t i = 0; i < atoms.size(); ++i) {
        for (const auto& ck : cl.clocks()) {
            bool member = atoms[i].test(ck.self);
            auto ref = clock_reference(ws, atoms, i, ck);
            uint32_t u, v;  // value = tau_v - tau_u
            if (ref.has_value()) {
                if (ck.predictor) {
                    u = static_cast<uint32_t>(i);
                    v = static_cast<uint32_t>(*ref);
                } else {
                    u = static_cast<uint32_t>(*ref);
                    v = static_cast<uint32_t>(i);
                }
            }
            if (member) {
                if (!ref.has_value())
                    return StructuralInfeasibility{
                        i, "clock formula asserted with no reference occurrence"};
                interval_constraints(u, v, ck.ivl, cc.base.constraints);
            } else if (ref.has_value()) {
                auto pieces = ck.ivl.complement_pieces();
                if (pieces.empty())
                    return StructuralInfeasibility{
                        i, "negated clock formula whose interval covers every value"};
                if (pieces.size() == 1) {
                    interval_constraints(u, v, pieces[0], cc.base.constraints);
                } else {
                    std::vector<std::vector<DiffConstraint>> group;
                    for (const auto& piece : pieces) {
                        std::vector<DiffConstraint> alt;
                        interval_constraints(u, v, piece, alt);
                        group.push_back(std::move(alt));
                    }
                    cc.branch_groups.push_back(std::move(group));
                }
            }
        }
    }
    return cc;
}

bool for_each_branch(const CompiledConstraints& cc,
                     const std::function<bool(const DiffSystem&)>& cb) {
    DiffSystem sys = cc.base;
    std::function<bool(size_t)> rec = [&](size_t g) -> bool {
        if (g == cc.branch_groups.size()) return !cb(sys);
        for (const auto& alt : cc.branch_groups[g]) {
            size_t mark = sys.constraints.size();
            sys.constraints.insert(sys.constraints.end(), alt.begin(), alt.end());
            bool stop = rec(g + 1);
            sys.constraints.resize(mark);
            if (stop) return true;
        }
        return false;
    };
    return rec(0);
}

// ---------------------------------------------------------------------------
// Bounded satisfiability
// ---------------------------------------------------------------------------

namespace {

struct BudgetBlown {};

struct SkeletonSearch {
    const TableauAutomaton& ta;
    const Closure& cl;
    std::atomic<size_t>& nodes;
    size_t budget;

    // prefix of atom indices plus the pending-call stack (indices into prefix)
    std::vector<uint32_t> prefix;
    std::vector<uint32_t> stack;
    std::vector<SymKind> kinds;

    // Try every admissible continuation; `complete` is called on full
    // skeletons and returns true to stop the search.
    std::function<bool(const std::vector<uint32_t>&)> complete;

    bool extend(size_t target_len) {
        size_t d = prefix.size();
        if (d == target_len) return complete(prefix);
        const auto& atoms = ta.states();
        for (uint32_t b = 0; b < atoms.size(); ++b) {
            if (nodes.fetch_add(1) + 1 > budget) throw BudgetBlown{};
            const Atom& B = atoms[b];
            if (d == 0) {
                if (!ta.is_initial(B)) continue;
            } else if (!ta.mid_pair_ok(atoms[prefix.back()], B)) {
                continue;
            }
            SymKind kind = cl.sym_kind(B);
            if (kind == SymKind::Ret) {
                const Atom* top = stack.empty() ? nullptr : &atoms[prefix[stack.back()]];
                if (!ta.pop_ok(top, B)) continue;
            }
            prefix.push_back(b);
            kinds.push_back(kind);
            // Recorder clock formulas asserted here need a past reference on
            // their path; prune as soon as that is impossible.
            if (recorder_viable(d)) {
                std::optional<uint32_t> popped;
                if (kind == SymKind::Call) {
                    stack.push_back(static_cast<uint32_t>(d));
                } else if (kind == SymKind::Ret && !stack.empty()) {
                    popped = stack.back();
                    stack.pop_back();
                }
                bool last = d + 1 == target_len;
                bool ok_tail = !last || terminal_ok(b);
                if (ok_tail && extend(target_len)) return true;
                if (kind == SymKind::Call)
                    stack.pop_back();
                else if (popped.has_value())
                    stack.push_back(*popped);
            }
            prefix.pop_back();
            kinds.pop_back();
        }
        return false;
    }

    bool recorder_viable(size_t i) {
        WordStructure ws = WordStructure::build(kinds);
        const auto& atoms = ta.states();
        std::vector<Atom> picked;
        picked.reserve(prefix.size());
        for (uint32_t idx : prefix) picked.push_back(atoms[idx]);
        for (const auto& ck : cl.clocks()) {
            if (ck.predictor) continue;
            bool member = picked[i].test(ck.self);
            auto ref = clock_reference(ws, picked, i, ck);
            if (member && !ref.has_value()) return false;
            if (!member && ref.has_value() && ck.ivl.complement_pieces().empty()) return false;
        }
        return true;
    }

    bool terminal_ok(uint32_t last_idx) {
        const auto& atoms = ta.states();
        if (!terminal_admissible(atoms[last_idx])) return false;
        // Pending (unmatched) calls: no abstract-successor claim, pinf holds.
        for (uint32_t pos : stack) {
            const Atom& c = atoms[prefix[pos]];
            if (c.test(cl.idx_next_abs_true())) return false;
            if (!c.test(cl.idx_pinf())) return false;
        }
        return true;
    }
};

std::vector<RunStep> trace_of(const TableauAutomaton& ta, const std::vector<uint32_t>& skeleton) {
    std::vector<RunStep> run;
    std::vector<uint32_t> stack;
    for (uint32_t idx : skeleton) {
        const Atom& a = ta.states()[idx];
        switch (ta.closure().sym_kind(a)) {
            case SymKind::Call: stack.push_back(idx); break;
            case SymKind::Ret:
                if (!stack.empty()) stack.pop_back();
                break;
            case SymKind::Internal: break;
        }
        RunStep step;
        step.state = "A" + std::to_string(idx);
        for (auto it = stack.rbegin(); it != stack.rend(); ++it)
            step.stack.push_back("A" + std::to_string(*it));
        run.push_back(std::move(step));
    }
    return run;
}

}  // namespace

SatResult bounded_sat(FormulaArena& arena, FormulaId phi, size_t maxlen,
                      const SolverOptions& opts) {
    if (maxlen < 1) return NoneUpToBound{maxlen};
    TableauAutomaton ta = build_automaton(arena, phi);
    const Closure& cl = ta.closure();
    std::atomic<size_t> nodes{0};

    std::optional<Witness> found;
    auto try_skeleton = [&](const std::vector<uint32_t>& skeleton) -> bool {
        std::vector<Atom> atoms;
        atoms.reserve(skeleton.size());
        for (uint32_t idx : skeleton) atoms.push_back(ta.states()[idx]);
        auto compiled = compile_constraints(cl, atoms);
        if (std::holds_alternative<StructuralInfeasibility>(compiled)) return false;
        bool stop = false;
        for_each_branch(std::get<CompiledConstraints>(compiled), [&](const DiffSystem& sys) {
            auto solved = solve_diff(sys);
            if (!std::holds_alternative<DiffSolution>(solved)) return true;  // next branch
            auto stamps = std::get<DiffSolution>(solved).stamps;
            simplify_stamps(sys, stamps);
            HintikkaWord hw;
            hw.cl = &cl;
            hw.atoms = atoms;
            hw.stamps = stamps;
            TimedWord word = hw.project();
            if (!models(arena, word, phi)) return true;  // reject, keep searching
            Witness w;
            w.word = std::move(word);
            w.hintikka = std::move(hw);
            w.run = trace_of(ta, skeleton);
            found = std::move(w);
            stop = true;
            return false;
        });
        return stop;
    };

    try {
        for (size_t len = 1; len <= maxlen && !found; ++len) {
            SkeletonSearch search{ta, cl, nodes, opts.node_budget};
            search.complete = try_skeleton;
            if (search.extend(len)) break;
        }
    } catch (const BudgetBlown&) {
        return BudgetExceeded{nodes.load()};
    }
    if (found) return std::move(*found);
    return NoneUpToBound{maxlen};
}

// ---------------------------------------------------------------------------
// Bounded visibly model checking
// ---------------------------------------------------------------------------

namespace {

// Per-position obligations contributed by a model transition's guard.
struct GuardObligation {
    size_t position;
    ClockAtom atom;
};

// Clock reference for a proposition-indexed clock over a projected skeleton.
std::optional<size_t> prop_reference(const WordStructure& ws, const std::vector<PropSet>& syms,
                                     size_t i, const ClockId& clock) {
    auto path = positions(clock.axis, ws, i);
    if (clock.predictor) {
        for (size_t j : path)
            if (j > i && syms[j].contains(clock.index)) return j;
        return std::nullopt;
    }
    std::optional<size_t> best;
    for (size_t j : path) {
        if (j >= i) break;
        if (syms[j].contains(clock.index)) best = j;
    }
    return best;
}

}  // namespace

McResult bounded_mc(FormulaArena& arena, const Ecna& model, FormulaId phi, size_t maxlen,
                    const SolverOptions& opts) {
    if (model.alphabet != AlphabetKind::Props)
        fail("alphabet-mismatch", "bounded_mc expects a model over propositions");
    // The tableau follows the negated formula; its atoms must speak every
    // proposition the model can emit.
    std::vector<std::string> ambient;
    for (const auto& t : model.transitions)
        for (const auto& p : t.input.props)
            if (p != "call" && p != "ret" && p != "int") ambient.push_back(p);
    std::sort(ambient.begin(), ambient.end());
    ambient.erase(std::unique(ambient.begin(), ambient.end()), ambient.end());

    FormulaId notphi = arena.not_(phi);
    TableauAutomaton ta = build_automaton(arena, notphi, ambient);
    const Closure& cl = ta.closure();

    // Group tableau atoms by their propositional projection.
    std::map<std::vector<std::string>, std::vector<uint32_t>> by_proj;
    for (uint32_t i = 0; i < ta.states().size(); ++i)
        by_proj[cl.project(ta.states()[i]).props].push_back(i);

    std::atomic<size_t> nodes{0};
    std::optional<Witness> counterexample;

    struct Frame {
        uint32_t model_state;
        std::vector<uint32_t> model_stack;
        std::vector<uint32_t> atom_prefix;
        std::vector<uint32_t> atom_stack;  // positions of pending calls
        std::vector<GuardObligation> guards;
        std::vector<RunStep> trace;  // model state and stack after each step
    };

    std::function<bool(Frame&, size_t, size_t)> dfs = [&](Frame& f, size_t pos,
                                                          size_t len) -> bool {
        if (pos == len) {
            if (std::find(model.final_states.begin(), model.final_states.end(), f.model_state) ==
                model.final_states.end())
                return false;
            const auto& atoms = ta.states();
            if (!terminal_admissible(atoms[f.atom_prefix.back()])) return false;
            for (uint32_t p : f.atom_stack) {
                const Atom& c = atoms[f.atom_prefix[p]];
                if (c.test(cl.idx_next_abs_true()) || !c.test(cl.idx_pinf())) return false;
            }
            // Compile tableau real-time requirements plus model guards.
            std::vector<Atom> picked;
            for (uint32_t idx : f.atom_prefix) picked.push_back(atoms[idx]);
            auto compiled = compile_constraints(cl, picked);
            if (std::holds_alternative<StructuralInfeasibility>(compiled)) return false;
            auto cc = std::get<CompiledConstraints>(compiled);

            std::vector<PropSet> syms;
            std::vector<SymKind> kinds;
            for (const auto& a : picked) {
                syms.push_back(cl.project(a));
                kinds.push_back(cl.sym_kind(a));
            }
            WordStructure ws = WordStructure::build(kinds);
            for (const auto& ob : f.guards) {
                auto ref = prop_reference(ws, syms, ob.position, ob.atom.clock);
                if (ob.atom.interval.is_undef()) {
                    if (ref.has_value()) return false;  // value defined, undef required
                    continue;
                }
                if (!ref.has_value()) return false;
                uint32_t u, v;
                if (ob.atom.clock.predictor) {
                    u = static_cast<uint32_t>(ob.position);
                    v = static_cast<uint32_t>(*ref);
                } else {
                    u = static_cast<uint32_t>(*ref);
                    v = static_cast<uint32_t>(ob.position);
                }
                interval_constraints(u, v, ob.atom.interval, cc.base.constraints);
            }

            bool stop = false;
            for_each_branch(cc, [&](const DiffSystem& sys) {
                auto solved = solve_diff(sys);
                if (!std::holds_alternative<DiffSolution>(solved)) return true;
                auto stamps = std::get<DiffSolution>(solved).stamps;
                simplify_stamps(sys, stamps);
                TimedWord word;
                word.syms = syms;
                word.stamps = stamps;
                // Validation: the model accepts it and the formula fails.
                if (!accepts(model, word) || models(arena, word, phi)) return true;
                Witness w;
                w.word = word;
                w.hintikka.cl = &cl;
                w.hintikka.atoms = picked;
                w.hintikka.stamps = stamps;
                w.run = f.trace;
                counterexample = std::move(w);
                stop = true;
                return false;
            });
            return stop;
        }
        const auto& atoms = ta.states();
        for (const auto& t : model.transitions) {
            if (t.from != f.model_state) continue;
            auto it = by_proj.find(t.input.props);
            if (it == by_proj.end()) continue;
            for (uint32_t b : it->second) {
                if (nodes.fetch_add(1) + 1 > opts.node_budget) throw BudgetBlown{};
                const Atom& B = atoms[b];
                SymKind kind = cl.sym_kind(B);
                switch (t.kind) {
                    case EcnaTransition::Kind::Push:
                        if (kind != SymKind::Call) continue;
                        break;
                    case EcnaTransition::Kind::Pop:
                        if (kind != SymKind::Ret) continue;
                        break;
                    case EcnaTransition::Kind::Internal:
                        if (kind != SymKind::Internal) continue;
                        break;
                }
                if (pos == 0) {
                    if (!ta.is_initial(B)) continue;
                } else if (!ta.mid_pair_ok(atoms[f.atom_prefix.back()], B)) {
                    continue;
                }
                // Stack disciplines on both sides.
                Frame g = f;
                if (t.kind == EcnaTransition::Kind::Push) {
                    g.model_stack.push_back(*t.stack_sym);
                } else if (t.kind == EcnaTransition::Kind::Pop) {
                    if (t.stack_sym.has_value()) {
                        if (g.model_stack.empty() || g.model_stack.back() != *t.stack_sym)
                            continue;
                        g.model_stack.pop_back();
                    } else if (!g.model_stack.empty()) {
                        continue;
                    }
                }
                if (kind == SymKind::Ret) {
                    const Atom* top =
                        f.atom_stack.empty() ? nullptr : &atoms[f.atom_prefix[f.atom_stack.back()]];
                    if (!ta.pop_ok(top, B)) continue;
                    if (!g.atom_stack.empty()) g.atom_stack.pop_back();
                } else if (kind == SymKind::Call) {
                    g.atom_stack.push_back(static_cast<uint32_t>(pos));
                }
                g.model_state = t.to;
                g.atom_prefix.push_back(b);
                for (const auto& ga : t.guard) g.guards.push_back({pos, ga});
                RunStep stepinfo;
                stepinfo.state = model.states[t.to];
                for (auto it2 = g.model_stack.rbegin(); it2 != g.model_stack.rend(); ++it2)
                    stepinfo.stack.push_back(model.stack_syms[*it2]);
                g.trace.push_back(std::move(stepinfo));
                if (dfs(g, pos + 1, len)) return true;
            }
        }
        return false;
    };

    try {
        for (size_t len = 1; len <= maxlen; ++len) {
            for (uint32_t q0 : model.initial) {
                Frame f;
                f.model_state = q0;
                if (dfs(f, 0, len)) return std::move(*counterexample);
            }
        }
    } catch (const BudgetBlown&) {
        return BudgetExceeded{nodes.load()};
    }
    return OkUpToBound{maxlen};
}

}  // namespace ecnl
