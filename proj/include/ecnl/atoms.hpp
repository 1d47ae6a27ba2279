// Closure, atoms, and Hintikka-sequence checking for the tableau.
//
// The closure of a formula is materialized once; atoms are bitsets over its
// ordered items.  Enumeration walks one independent choice per complementary
// pair with constraint propagation (derived members are computed, never
// guessed), so it never touches the 2^|Cl| raw subsets.
#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ecnl/eval.hpp"
#include "ecnl/formula.hpp"
#include "ecnl/words.hpp"

namespace ecnl {

inline constexpr size_t kMaxClosureItems = 256;

struct AtomBits {
    std::array<uint64_t, kMaxClosureItems / 64> w{};

    bool test(size_t i) const { return (w[i >> 6] >> (i & 63)) & 1; }
    void set(size_t i, bool v = true) {
        if (v)
            w[i >> 6] |= (uint64_t{1} << (i & 63));
        else
            w[i >> 6] &= ~(uint64_t{1} << (i & 63));
    }
    bool operator==(const AtomBits& o) const { return w == o.w; }
    bool operator<(const AtomBits& o) const {  // deterministic search order
        for (size_t k = w.size(); k-- > 0;)
            if (w[k] != o.w[k]) return w[k] < o.w[k];
        return false;
    }
    size_t hash() const {
        size_t h = 0;
        for (uint64_t x : w) h ^= std::hash<uint64_t>{}(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    }
};

class Closure;

struct Atom {
    const Closure* cl = nullptr;
    AtomBits bits;

    bool test(size_t idx) const { return bits.test(idx); }
    bool operator==(const Atom& o) const { return cl == o.cl && bits == o.bits; }
};

struct AtomBitsHash {
    size_t operator()(const AtomBits& b) const { return b.hash(); }
};

// Indexed closure of an ECNTL formula.  `ambient_props` extends the fixed
// proposition set beyond the ones occurring in the formula (the reserved
// call/ret/int and pinf are always present).
class Closure {
  public:
    static Closure build(FormulaArena& arena, FormulaId phi,
                         const std::vector<std::string>& ambient_props = {});

    const FormulaArena& arena() const { return *ar_; }
    FormulaId phi() const { return phi_; }
    size_t size() const { return items_.size(); }
    FormulaId item(size_t idx) const { return items_[idx]; }
    size_t index_of(FormulaId f) const;  // throws mismatched-closure when absent
    bool member(FormulaId f) const { return index_.count(f) != 0; }

    size_t neg(size_t idx) const { return neg_[idx]; }

    // Distinguished items.
    size_t idx_true() const { return idx_true_; }
    size_t idx_call() const { return idx_call_; }
    size_t idx_ret() const { return idx_ret_; }
    size_t idx_int() const { return idx_int_; }
    size_t idx_pinf() const { return idx_pinf_; }
    size_t idx_next_abs_true() const { return idx_next_abs_true_; }
    size_t idx_prev_abs_true() const { return idx_prev_abs_true_; }

    struct Unwind {
        size_t self;    // the until/since item
        size_t a, b;    // argument items
        size_t unwind;  // Next(dir, self) / Prev(dir, self)
        Axis dir;
    };
    struct Step {
        size_t self;  // the next/prev item
        size_t arg;
        Axis dir;
    };
    struct Clock {
        size_t self;  // the nextclock/prevclock item
        size_t arg;
        Axis dir;
        Interval ivl;
        bool predictor;
    };

    const std::vector<Unwind>& untils() const { return untils_; }
    const std::vector<Unwind>& sinces() const { return sinces_; }
    const std::vector<Step>& nexts() const { return nexts_; }  // all dirs
    const std::vector<Step>& prevs() const { return prevs_; }
    const std::vector<Clock>& clocks() const { return clocks_; }
    const std::vector<size_t>& prop_items() const { return props_; }

    // Projection of an atom over Prop (drops pinf and non-propositional items).
    PropSet project(const Atom& a) const;
    SymKind sym_kind(const Atom& a) const;

    std::string render(const Atom& a) const;  // printed member formulas, for documents

  private:
    const FormulaArena* ar_ = nullptr;
    FormulaId phi_ = kNoFormula;
    std::vector<FormulaId> items_;
    std::unordered_map<FormulaId, size_t> index_;
    std::vector<size_t> neg_;
    size_t idx_true_ = 0, idx_call_ = 0, idx_ret_ = 0, idx_int_ = 0, idx_pinf_ = 0;
    size_t idx_next_abs_true_ = 0, idx_prev_abs_true_ = 0;
    std::vector<Unwind> untils_, sinces_;
    std::vector<Step> nexts_, prevs_;
    std::vector<Clock> clocks_;
    std::vector<size_t> props_;

    friend class AtomEnumerator;
};

// All atoms, in deterministic (bitset-lexicographic construction) order.
std::vector<Atom> enumerate_atoms(const Closure& cl);

// Seeded enumeration: seeds[i] in {-1 free, 0 forbidden, 1 required} per item.
// emit returns false to stop early.  Returns true if stopped early.
bool enumerate_atoms_seeded(const Closure& cl, const std::vector<int8_t>& seeds,
                            const std::function<bool(const Atom&)>& emit);

// Full atom-rule check for an arbitrary bitset (used by tests and documents).
bool is_valid_atom(const Closure& cl, const AtomBits& bits);

// NextPrev / AbsNextPrev / Caller of Definition 3's support predicates.
bool next_prev(const Atom& a, const Atom& b);      // throws mismatched-closure
bool abs_next_prev(const Atom& a, const Atom& b);  // includes Caller equality
std::vector<size_t> caller_of(const Atom& a);      // indices of caller-prev items

struct HintikkaWord {
    const Closure* cl = nullptr;
    std::vector<Atom> atoms;
    std::vector<Rat> stamps;

    size_t size() const { return atoms.size(); }
    TimedWord project() const;
    std::vector<SymKind> kinds() const;
};

struct HintikkaDiagnostic {
    bool ok = true;
    int property = 0;  // 0 atom shape, 1..4 the Hintikka properties, 5 terminal
    size_t position = 0;
    std::string message;
};

// Finite-word Hintikka check: Properties 1-4 plus terminal admissibility
// (no asserted global next, and no abstract successor claim, at the end).
HintikkaDiagnostic hintikka_check(const HintikkaWord& hw);

// Untimed fairness over a lasso, decided by inspecting the loop.
bool fairness_check(const std::vector<Atom>& prefix, const std::vector<Atom>& loop);

// The induced Hintikka word of a model: A_i = { psi in Cl : (w,i) |= psi }.
HintikkaWord induce_hintikka(const TimedWord& w, const Closure& cl);

// Terminal admissibility of a single atom (shared with the automaton).
bool terminal_admissible(const Atom& a);

// Clock value over an atom-labelled word: the clock's index is a closure item.
std::optional<Rat> atom_clock_value(const HintikkaWord& hw, const WordStructure& ws, size_t i,
                                    size_t arg_idx, Axis axis, bool predictor);

}  // namespace ecnl
