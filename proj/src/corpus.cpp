#include "ecnl/corpus.hpp"

#include "ecnl/atoms.hpp"

namespace ecnl {

std::vector<PropSet> small_alphabet() {
    return {PropSet{"call"}, PropSet{"ret"}, PropSet{"int"}, PropSet{"int", "p"}};
}

std::vector<Rat> small_grid() {
    return {Rat(0), Rat(1, 2), Rat(1), Rat(3, 2), Rat(2)};
}

void enumerate_untimed(const std::vector<PropSet>& alphabet, size_t len,
                       const std::function<void(const std::vector<PropSet>&)>& cb) {
    std::vector<PropSet> word(len);
    std::function<void(size_t)> rec = [&](size_t k) {
        if (k == len) {
            cb(word);
            return;
        }
        for (const auto& sym : alphabet) {
            word[k] = sym;
            rec(k + 1);
        }
    };
    rec(0);
}

void enumerate_stamps(const std::vector<Rat>& grid, size_t len,
                      const std::function<void(const std::vector<Rat>&)>& cb) {
    std::vector<Rat> stamps(len);
    std::function<void(size_t, size_t)> rec = [&](size_t k, size_t from) {
        if (k == len) {
            cb(stamps);
            return;
        }
        for (size_t g = from; g < grid.size(); ++g) {
            stamps[k] = grid[g];
            rec(k + 1, g);
        }
    };
    rec(0, 0);
}

void enumerate_timed_words(const std::vector<PropSet>& alphabet, const std::vector<Rat>& grid,
                           size_t maxlen, const std::function<void(const TimedWord&)>& cb) {
    for (size_t len = 1; len <= maxlen; ++len) {
        enumerate_untimed(alphabet, len, [&](const std::vector<PropSet>& syms) {
            enumerate_stamps(grid, len, [&](const std::vector<Rat>& stamps) {
                TimedWord w;
                w.syms = syms;
                w.stamps = stamps;
                cb(w);
            });
        });
    }
}

Interval gen_interval(Rng& rng, const std::vector<unsigned long>& endpoints) {
    auto pick = [&](size_t n) { return std::uniform_int_distribution<size_t>(0, n - 1)(rng); };
    unsigned long a = endpoints[pick(endpoints.size())];
    switch (pick(5)) {
        case 0: return Interval::at_least(a);
        case 1: return Interval::greater_than(a);
        default: {
            unsigned long b = endpoints[pick(endpoints.size())];
            if (b < a) std::swap(a, b);
            switch (pick(4)) {
                case 0: return Interval::closed(a, b);
                case 1: return a < b ? Interval::right_open(a, b) : Interval::closed(a, b);
                case 2: return a < b ? Interval::left_open(a, b) : Interval::closed(a, b);
                default: return a < b ? Interval::open(a, b) : Interval::closed(a, b);
            }
        }
    }
}

static Interval gen_ints_interval(Rng& rng, const std::vector<unsigned long>& endpoints) {
    auto pick = [&](size_t n) { return std::uniform_int_distribution<size_t>(0, n - 1)(rng); };
    unsigned long c = endpoints[pick(endpoints.size())];
    if (c == 0) c = 1;  // keep the bounded shapes nonsingular
    switch (pick(5)) {
        case 0: return Interval::at_least(c);      // >= c
        case 1: return Interval::greater_than(c);  // > c
        case 2: return Interval::closed(0, c);     // <= c
        case 3: return Interval::right_open(0, c); // < c
        default: return Interval::all();
    }
}

static FormulaId gen_leaf(FormulaArena& ar, Rng& rng, const GenOptions& opts) {
    auto pick = [&](size_t n) { return std::uniform_int_distribution<size_t>(0, n - 1)(rng); };
    switch (pick(5)) {
        case 0: return ar.tru();
        case 1: return ar.prop("call");
        case 2: return ar.prop("ret");
        case 3: return ar.prop("int");
        default: return ar.prop(opts.props[pick(opts.props.size())]);
    }
}

static FormulaId gen_ecntl_rec(FormulaArena& ar, Rng& rng, const GenOptions& opts, size_t depth) {
    auto pick = [&](size_t n) { return std::uniform_int_distribution<size_t>(0, n - 1)(rng); };
    if (depth == 0) return gen_leaf(ar, rng, opts);
    size_t n_ops = opts.allow_past ? 9 : 6;
    switch (pick(n_ops)) {
        case 0: return gen_leaf(ar, rng, opts);
        case 1:
            return ar.or_(gen_ecntl_rec(ar, rng, opts, depth - 1),
                          gen_ecntl_rec(ar, rng, opts, depth - 1));
        case 2: return ar.not_(gen_ecntl_rec(ar, rng, opts, depth - 1));
        case 3:
            return ar.next(pick(2) ? Axis::Abstract : Axis::Global,
                           gen_ecntl_rec(ar, rng, opts, depth - 1));
        case 4:
            return ar.until(pick(2) ? Axis::Abstract : Axis::Global,
                            gen_ecntl_rec(ar, rng, opts, depth - 1),
                            gen_ecntl_rec(ar, rng, opts, depth - 1));
        case 5:
            return ar.nextclock(pick(2) ? Axis::Abstract : Axis::Global,
                                gen_interval(rng, opts.endpoints),
                                gen_ecntl_rec(ar, rng, opts, depth - 1));
        case 6: {
            Axis d = static_cast<Axis>(pick(3));
            return ar.prev(d, gen_ecntl_rec(ar, rng, opts, depth - 1));
        }
        case 7: {
            Axis d = static_cast<Axis>(pick(3));
            return ar.since(d, gen_ecntl_rec(ar, rng, opts, depth - 1),
                            gen_ecntl_rec(ar, rng, opts, depth - 1));
        }
        default: {
            Axis d = static_cast<Axis>(pick(3));
            return ar.prevclock(d, gen_interval(rng, opts.endpoints),
                                gen_ecntl_rec(ar, rng, opts, depth - 1));
        }
    }
}

FormulaId gen_ecntl(FormulaArena& ar, Rng& rng, const GenOptions& opts) {
    for (int attempt = 0; attempt < 10000; ++attempt) {
        FormulaId f = gen_ecntl_rec(ar, rng, opts, opts.max_depth);
        if (opts.max_closure == 0) return f;
        Closure cl = Closure::build(ar, f);
        if (cl.size() <= opts.max_closure) return f;
    }
    fail("budget-exceeded", "could not sample a formula within the closure bound");
}

static FormulaId gen_nmitl_rec(FormulaArena& ar, Rng& rng, const GenOptions& opts, size_t depth) {
    auto pick = [&](size_t n) { return std::uniform_int_distribution<size_t>(0, n - 1)(rng); };
    if (depth == 0) return gen_leaf(ar, rng, opts);
    size_t n_ops = opts.allow_past ? 5 : 4;
    switch (pick(n_ops)) {
        case 0: return gen_leaf(ar, rng, opts);
        case 1:
            return ar.or_(gen_nmitl_rec(ar, rng, opts, depth - 1),
                          gen_nmitl_rec(ar, rng, opts, depth - 1));
        case 2: return ar.not_(gen_nmitl_rec(ar, rng, opts, depth - 1));
        case 3:
            return ar.tuntil(pick(2) ? Axis::Abstract : Axis::Global,
                             gen_ints_interval(rng, opts.endpoints),
                             gen_nmitl_rec(ar, rng, opts, depth - 1),
                             gen_nmitl_rec(ar, rng, opts, depth - 1));
        default: {
            Axis d = static_cast<Axis>(pick(3));
            return ar.tsince(d, gen_ints_interval(rng, opts.endpoints),
                             gen_nmitl_rec(ar, rng, opts, depth - 1),
                             gen_nmitl_rec(ar, rng, opts, depth - 1));
        }
    }
}

FormulaId gen_nmitl(FormulaArena& ar, Rng& rng, const GenOptions& opts) {
    return gen_nmitl_rec(ar, rng, opts, opts.max_depth);
}

}  // namespace ecnl
