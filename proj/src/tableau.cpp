#include "ecnl/tableau.hpp"

#include <algorithm>

namespace ecnl {

bool TableauAutomaton::is_initial(const Atom& a) const {
    if (!a.test((*cl_).index_of((*cl_).phi()))) return false;
    for (const auto& st : (*cl_).prevs())
        if (a.test(st.self)) return false;  // initial consistency
    return true;
}

bool TableauAutomaton::mid_pair_ok(const Atom& a, const Atom& b) const {
    if (!next_prev(a, b)) return false;
    const size_t pinf = (*cl_).idx_pinf();
    const size_t natx = (*cl_).idx_next_abs_true();
    const size_t patx = (*cl_).idx_prev_abs_true();
    bool a_call = a.test((*cl_).idx_call());
    bool b_ret = b.test((*cl_).idx_ret());
    if (!a_call) {
        if (!b_ret) {
            if (!abs_next_prev(a, b)) return false;
            if (a.test(pinf) != b.test(pinf)) return false;
        } else {
            if (a.test(natx)) return false;
            if (!b.test(patx)) {
                if (!a.test(pinf) || !b.test(pinf)) return false;
                for (const auto& st : (*cl_).prevs())
                    if (st.dir == Axis::Caller && b.test(st.self)) return false;
            }
        }
    } else {
        if (!b_ret) {
            // Caller(B) = { Prev^c psi : psi in A }.
            for (const auto& st : (*cl_).prevs())
                if (st.dir == Axis::Caller && b.test(st.self) != a.test(st.arg)) return false;
            if (a.test(natx) == b.test(pinf)) return false;
        }
        // A call followed by a return is resolved by the pop against the
        // freshly pushed atom.
    }
    return true;
}

bool TableauAutomaton::pop_ok(const Atom* call_atom, const Atom& ret_atom) const {
    const size_t pinf = (*cl_).idx_pinf();
    const size_t patx = (*cl_).idx_prev_abs_true();
    if (call_atom == nullptr) {
        // Bottom: an unmatched return.
        if (ret_atom.test(patx)) return false;
        if (!ret_atom.test(pinf)) return false;
        return caller_of(ret_atom).empty();
    }
    if (!ret_atom.test(patx)) return false;
    if (!abs_next_prev(*call_atom, ret_atom)) return false;
    return call_atom->test(pinf) == ret_atom.test(pinf);
}

bool TableauAutomaton::guard_ok(
    const Atom& a, const std::function<std::optional<Rat>(const Closure::Clock&)>& val) const {
    for (const auto& ck : (*cl_).clocks()) {
        auto v = val(ck);
        bool in = v.has_value() && ck.ivl.contains(*v);
        if (a.test(ck.self) != in) return false;
    }
    return true;
}

bool TableauAutomaton::end_eligible(const Atom& a) const {
    if (!terminal_admissible(a)) return false;
    return a.test((*cl_).idx_pinf());
}

// Seeds for the return-shaped end atom reached after the last symbol: its
// global previous requirements are transferred from the source, everything
// forward-looking is switched off.
static std::vector<int8_t> phantom_seeds(const Closure& cl, const Atom& src) {
    std::vector<int8_t> seeds(cl.size(), -1);
    seeds[cl.idx_ret()] = 1;
    seeds[cl.idx_pinf()] = 1;
    seeds[cl.idx_prev_abs_true()] = 0;
    seeds[cl.idx_next_abs_true()] = 0;
    for (const auto& st : cl.prevs()) {
        if (st.dir == Axis::Caller) seeds[st.self] = 0;
        if (st.dir == Axis::Global) seeds[st.self] = src.test(st.arg) ? 1 : 0;
    }
    for (const auto& st : cl.nexts())
        if (st.dir == Axis::Global) seeds[st.self] = 0;
    return seeds;
}

bool TableauAutomaton::end_phantom_exists(const Atom& a) const {
    bool found = false;
    enumerate_atoms_seeded(*cl_, phantom_seeds(*cl_, a), [&](const Atom&) {
        found = true;
        return false;
    });
    return found;
}

// Some terminal-admissible successor under the ordinary pair predicate; this
// covers ends the paper's discipline already certifies.
static bool plain_final_successor_exists(const TableauAutomaton& ta, const Atom& a) {
    for (const auto& b : ta.states())
        if (ta.is_final(b) && ta.mid_pair_ok(a, b)) return true;
    return false;
}

bool TableauAutomaton::accepts(const HintikkaWord& hw) const {
    if (hw.cl != cl_.get()) fail("mismatched-closure", "word over a different closure");
    const size_t n = hw.size();
    if (n == 0) return false;
    for (const auto& atom : hw.atoms)
        if (!is_valid_atom(*cl_, atom.bits)) return false;
    if (!is_initial(hw.atoms[0])) return false;

    WordStructure ws = WordStructure::build(hw.kinds());
    std::vector<const Atom*> stack;
    for (size_t i = 0; i < n; ++i) {
        const Atom& a = hw.atoms[i];
        bool ok_guard = guard_ok(a, [&](const Closure::Clock& ck) {
            return atom_clock_value(hw, ws, i, ck.arg, ck.dir, ck.predictor);
        });
        if (!ok_guard) return false;
        switch ((*cl_).sym_kind(a)) {
            case SymKind::Call:
                stack.push_back(&a);
                break;
            case SymKind::Ret: {
                const Atom* top = stack.empty() ? nullptr : stack.back();
                if (!pop_ok(top, a)) return false;
                if (!stack.empty()) stack.pop_back();
                break;
            }
            case SymKind::Internal:
                break;
        }
        if (i + 1 < n) {
            if (!mid_pair_ok(a, hw.atoms[i + 1])) return false;
        } else {
            bool end_ok = (end_eligible(a) && end_phantom_exists(a)) ||
                          plain_final_successor_exists(*this, a);
            if (!end_ok) return false;
        }
    }
    return true;
}

TableauAutomaton build_automaton(FormulaArena& arena, FormulaId phi,
                                 const std::vector<std::string>& ambient_props) {
    TableauAutomaton ta;
    ta.cl_ = std::make_shared<Closure>(Closure::build(arena, phi, ambient_props));
    ta.atoms_ = enumerate_atoms(*ta.cl_);
    std::sort(ta.atoms_.begin(), ta.atoms_.end(),
              [](const Atom& x, const Atom& y) { return x.bits < y.bits; });
    for (uint32_t i = 0; i < ta.atoms_.size(); ++i) ta.atoms_[i].cl = ta.cl_.get();
    for (uint32_t i = 0; i < ta.atoms_.size(); ++i)
        if (ta.is_initial(ta.atoms_[i])) ta.initials_.push_back(i);
    return ta;
}

// ---------------------------------------------------------------------------
// Materialization
// ---------------------------------------------------------------------------

namespace {

// All guard variants of a source atom: positive clock members contribute their
// interval; negated members branch over the undef singleton and the maximal
// disjoint intervals.
std::vector<ClockConstraint> guard_variants(const Closure& cl, const Atom& a,
                                            size_t max_variants) {
    std::vector<ClockConstraint> out{{}};
    for (const auto& ck : cl.clocks()) {
        ClockId clock{ck.dir, ck.predictor, cl.arena().print(cl.item(ck.arg))};
        if (a.test(ck.self)) {
            for (auto& g : out) g.push_back({clock, ck.ivl});
            continue;
        }
        std::vector<Interval> pieces = ck.ivl.complement_pieces();
        pieces.push_back(Interval::undef_singleton());
        std::vector<ClockConstraint> next;
        next.reserve(out.size() * pieces.size());
        for (const auto& g : out) {
            for (const auto& piece : pieces) {
                ClockConstraint g2 = g;
                g2.push_back({clock, piece});
                next.push_back(std::move(g2));
            }
        }
        out = std::move(next);
        if (out.size() > max_variants)
            fail("budget-exceeded", "guard expansion exceeds the materialization cap");
    }
    return out;
}

}  // namespace

Ecna TableauAutomaton::materialize(size_t max_transitions) const {
    Ecna e;
    e.alphabet = AlphabetKind::Atoms;
    for (uint32_t i = 0; i < atoms_.size(); ++i) {
        e.add_state("A" + std::to_string(i));
        e.add_stack_sym("A" + std::to_string(i));
    }
    e.initial = initials_;
    for (uint32_t i = 0; i < atoms_.size(); ++i)
        if (is_final(atoms_[i])) e.final_states.push_back(i);

    auto rendered = [&](const Atom& a) {
        std::vector<std::string> names;
        for (size_t k = 0; k < (*cl_).size(); ++k) {
            if (!a.test(k)) continue;
            if ((*cl_).arena().node((*cl_).item(k)).op == FOp::Not) continue;
            names.push_back((*cl_).arena().print((*cl_).item(k)));
        }
        return PropSet(std::move(names));
    };
    std::vector<PropSet> symbol(atoms_.size());
    for (uint32_t i = 0; i < atoms_.size(); ++i) symbol[i] = rendered(atoms_[i]);

    auto emit = [&](EcnaTransition t) {
        e.transitions.push_back(std::move(t));
        if (e.transitions.size() > max_transitions)
            fail("budget-exceeded", "transition count exceeds the materialization cap");
    };

    for (uint32_t i = 0; i < atoms_.size(); ++i) {
        const Atom& a = atoms_[i];
        auto guards = guard_variants(*cl_, a, max_transitions);
        SymKind kind = (*cl_).sym_kind(a);

        // Ordinary edges onto every pair-admissible target.
        for (uint32_t j = 0; j < atoms_.size(); ++j) {
            if (!mid_pair_ok(a, atoms_[j])) continue;
            for (const auto& g : guards) {
                EcnaTransition t;
                t.from = i;
                t.to = j;
                t.input = symbol[i];
                t.guard = g;
                switch (kind) {
                    case SymKind::Call:
                        t.kind = EcnaTransition::Kind::Push;
                        t.stack_sym = i;
                        emit(std::move(t));
                        break;
                    case SymKind::Internal:
                        t.kind = EcnaTransition::Kind::Internal;
                        emit(std::move(t));
                        break;
                    case SymKind::Ret:
                        t.kind = EcnaTransition::Kind::Pop;
                        if (pop_ok(nullptr, a)) {
                            EcnaTransition tb = t;
                            tb.stack_sym = std::nullopt;
                            emit(std::move(tb));
                        }
                        for (uint32_t c = 0; c < atoms_.size(); ++c) {
                            if (!atoms_[c].test((*cl_).idx_call())) continue;
                            if (!pop_ok(&atoms_[c], a)) continue;
                            EcnaTransition tc = t;
                            tc.stack_sym = c;
                            emit(std::move(tc));
                        }
                        break;
                }
            }
        }

        // End edges onto the return-shaped end atoms.
        if (end_eligible(a)) {
            std::vector<uint32_t> phantoms;
            enumerate_atoms_seeded(*cl_, phantom_seeds(*cl_, a), [&](const Atom& ph) {
                for (uint32_t j = 0; j < atoms_.size(); ++j)
                    if (atoms_[j].bits == ph.bits) {
                        phantoms.push_back(j);
                        break;
                    }
                return true;
            });
            for (uint32_t j : phantoms) {
                if (std::find(e.final_states.begin(), e.final_states.end(), j) ==
                    e.final_states.end())
                    continue;
                for (const auto& g : guards) {
                    EcnaTransition t;
                    t.from = i;
                    t.to = j;
                    t.input = symbol[i];
                    t.guard = g;
                    switch (kind) {
                        case SymKind::Call:
                            t.kind = EcnaTransition::Kind::Push;
                            t.stack_sym = i;
                            emit(std::move(t));
                            break;
                        case SymKind::Internal:
                            t.kind = EcnaTransition::Kind::Internal;
                            emit(std::move(t));
                            break;
                        case SymKind::Ret:
                            t.kind = EcnaTransition::Kind::Pop;
                            if (pop_ok(nullptr, a)) {
                                EcnaTransition tb = t;
                                tb.stack_sym = std::nullopt;
                                emit(std::move(tb));
                            }
                            for (uint32_t c = 0; c < atoms_.size(); ++c) {
                                if (!atoms_[c].test((*cl_).idx_call())) continue;
                                if (!pop_ok(&atoms_[c], a)) continue;
                                EcnaTransition tc = t;
                                tc.stack_sym = c;
                                emit(std::move(tc));
                            }
                            break;
                    }
                }
            }
        }
    }
    return e;
}

Ecna project_nonrecursive(FormulaArena& arena, const Ecna& tableau_ecna, FormulaId phi) {
    if (arena.metrics(phi).recursive)
        fail("recursive-formula", "input projection needs a non-recursive formula");
    if (tableau_ecna.alphabet != AlphabetKind::Atoms)
        fail("alphabet-mismatch", "projection applies to a tableau automaton over atoms");
    // Prop members are plain identifiers; everything else is a formula print.
    auto is_prop = [](const std::string& s) {
        if (s.empty() || s == "true" || s == "pinf") return false;
        for (char c : s)
            if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
        return !(s.size() == 2 && (std::isupper(static_cast<unsigned char>(s[0])) != 0));
    };
    Ecna out = tableau_ecna;
    out.alphabet = AlphabetKind::Props;
    for (auto& t : out.transitions) {
        std::vector<std::string> props;
        for (const auto& m : t.input.props)
            if (is_prop(m)) props.push_back(m);
        t.input = PropSet(std::move(props));
    }
    return out;
}

}  // namespace ecnl
