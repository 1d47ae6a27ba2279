#include "ecnl/diff.hpp"

#include <algorithm>
#include <optional>

#include "ecnl/words.hpp"

namespace ecnl {

namespace {

struct Edge {
    uint32_t u, v;
    Rat b;
    bool strict;
};

std::vector<Edge> all_edges(const DiffSystem& sys) {
    std::vector<Edge> es;
    for (const auto& c : sys.constraints) es.push_back({c.u, c.v, c.bound, c.strict});
    for (uint32_t i = 0; i + 1 < sys.n; ++i)
        es.push_back({i + 1, i, Rat(0), false});  // tau_i <= tau_{i+1}
    return es;
}

struct Weight {
    Rat b;
    long m;  // number of strict edges, negated (for lexicographic tightness)
    bool operator<(const Weight& o) const { return b < o.b || (b == o.b && m < o.m); }
};

}  // namespace

bool diff_satisfied(const DiffSystem& sys, const std::vector<Rat>& stamps) {
    if (stamps.size() != sys.n) return false;
    if (sys.n > 0 && sgn(stamps[0]) < 0) return false;
    for (uint32_t i = 0; i + 1 < sys.n; ++i)
        if (stamps[i] > stamps[i + 1]) return false;
    for (const auto& c : sys.constraints) {
        Rat d = stamps[c.v] - stamps[c.u];
        if (c.strict ? !(d < c.bound) : !(d <= c.bound)) return false;
    }
    return true;
}

std::variant<DiffSolution, DiffUnsat> solve_diff(const DiffSystem& sys) {
    const uint32_t n = sys.n;
    if (n == 0) return DiffSolution{};
    auto edges = all_edges(sys);

    // Bellman-Ford from a virtual source connected to every node with (0,0).
    std::vector<Weight> d(n, Weight{Rat(0), 0});
    std::vector<long> pred(n, -1);  // edge index that last improved the node
    bool changed = true;
    for (uint32_t round = 0; round <= n && changed; ++round) {
        changed = false;
        for (size_t e = 0; e < edges.size(); ++e) {
            const auto& ed = edges[e];
            Weight cand{d[ed.u].b + ed.b, d[ed.u].m - (ed.strict ? 1 : 0)};
            if (cand < d[ed.v]) {
                d[ed.v] = cand;
                pred[ed.v] = static_cast<long>(e);
                changed = true;
                if (round == n) {
                    // Walk back n steps to land on the cycle, then collect it.
                    uint32_t x = ed.v;
                    for (uint32_t k = 0; k < n; ++k) x = edges[pred[x]].u;
                    DiffUnsat cert;
                    cert.total = 0;
                    cert.strict = false;
                    uint32_t y = x;
                    do {
                        const auto& ce = edges[pred[y]];
                        cert.cycle.push_back({ce.u, ce.v, ce.b, ce.strict});
                        cert.total += ce.b;
                        cert.strict = cert.strict || ce.strict;
                        y = ce.u;
                    } while (y != x);
                    // The certificate must be genuinely infeasible.
                    if (sgn(cert.total) > 0 || (sgn(cert.total) == 0 && !cert.strict))
                        fail("internal", "bogus infeasibility certificate");
                    return cert;
                }
            }
        }
    }

    // Realize the strictness margin as a concrete rational.
    Rat delta(1);
    for (const auto& ed : edges) {
        Rat slack = d[ed.u].b + ed.b - d[ed.v].b;
        long mdiff = d[ed.v].m - d[ed.u].m + (ed.strict ? 1 : 0);
        if (sgn(slack) > 0 && mdiff > 0) {
            Rat cap = slack / (mdiff + 1);
            if (cap < delta) delta = cap;
        }
    }
    delta /= 2;

    std::vector<Rat> stamps(n);
    Rat low = d[0].b + Rat(d[0].m) * delta;
    for (uint32_t v = 0; v < n; ++v) {
        stamps[v] = d[v].b + Rat(d[v].m) * delta;
        if (stamps[v] < low) low = stamps[v];
    }
    for (auto& s : stamps) s -= low;  // anchor: everything >= 0

    if (!diff_satisfied(sys, stamps)) fail("internal", "difference solution failed re-check");
    return DiffSolution{std::move(stamps)};
}

void simplify_stamps(const DiffSystem& sys, std::vector<Rat>& stamps) {
    if (stamps.size() != sys.n) return;
    for (uint32_t v = 0; v < sys.n; ++v) {
        // Tightest bounds on tau_v with every other stamp fixed.
        Rat lo = (v == 0) ? Rat(0) : stamps[v - 1];
        bool lo_open = false;
        std::optional<Rat> hi;
        bool hi_open = false;
        if (v + 1 < sys.n) hi = stamps[v + 1];
        auto tighten_hi = [&](const Rat& cand, bool open) {
            if (!hi.has_value() || cand < *hi || (cand == *hi && open)) {
                hi = cand;
                hi_open = open;
            }
        };
        auto tighten_lo = [&](const Rat& cand, bool open) {
            if (cand > lo || (cand == lo && open)) {
                lo = cand;
                lo_open = open;
            }
        };
        for (const auto& c : sys.constraints) {
            if (c.u == c.v) continue;
            if (c.v == v) tighten_hi(stamps[c.u] + c.bound, c.strict);
            if (c.u == v) tighten_lo(stamps[c.v] - c.bound, c.strict);
        }
        if (hi.has_value()) {
            if (lo > *hi || (lo == *hi && (lo_open || hi_open))) continue;  // keep as is
            stamps[v] = simplest_in_interval(lo, lo_open, *hi, hi_open);
        } else {
            stamps[v] = simplest_in_interval(lo, lo_open, lo + 1, false);
        }
    }
    if (!diff_satisfied(sys, stamps)) fail("internal", "stamp simplification broke the system");
}

}  // namespace ecnl
