// Seeded corpus generation and exhaustive desk-scale enumeration.
//
// Everything here is deterministic given the seed; the regression and
// acceptance suites pin their seeds.
#pragma once

#include <functional>
#include <random>
#include <vector>

#include "ecnl/formula.hpp"
#include "ecnl/words.hpp"

namespace ecnl {

using Rng = std::mt19937_64;

// The standard small-word enumeration alphabet {call} {ret} {int} {int,p}.
std::vector<PropSet> small_alphabet();

// The timestamp grid {0, 1/2, 1, 3/2, 2}.
std::vector<Rat> small_grid();

// All untimed words of length exactly `len` over the alphabet.
void enumerate_untimed(const std::vector<PropSet>& alphabet, size_t len,
                       const std::function<void(const std::vector<PropSet>&)>& cb);

// All weakly monotone stamp sequences of length `len` over the grid.
void enumerate_stamps(const std::vector<Rat>& grid, size_t len,
                      const std::function<void(const std::vector<Rat>&)>& cb);

// All timed words with lengths in [1, maxlen]; symbols x monotone grid stamps.
void enumerate_timed_words(const std::vector<PropSet>& alphabet, const std::vector<Rat>& grid,
                           size_t maxlen, const std::function<void(const TimedWord&)>& cb);

struct GenOptions {
    size_t max_depth = 2;
    std::vector<std::string> props = {"p"};
    std::vector<unsigned long> endpoints = {0, 1, 2};
    bool allow_past = true;
    size_t max_closure = 0;  // 0 = no bound; otherwise resample until it fits
};

// Random ECNTL formula (resampled until the closure bound holds).
FormulaId gen_ecntl(FormulaArena& ar, Rng& rng, const GenOptions& opts);

// Random NMTL formula with all intervals in INTS (the NMITL fragment).
FormulaId gen_nmitl(FormulaArena& ar, Rng& rng, const GenOptions& opts);

// Random interval with natural endpoints (never undef, never empty).
Interval gen_interval(Rng& rng, const std::vector<unsigned long>& endpoints);

}  // namespace ecnl
