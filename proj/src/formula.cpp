#include "ecnl/formula.hpp"

#include <functional>

namespace ecnl {

FormulaArena::FormulaArena() { tru(); }

std::string FormulaArena::key(const FNode& n) const {
    std::string k;
    k += static_cast<char>('A' + static_cast<int>(n.op));
    k += static_cast<char>('g' + static_cast<int>(n.dir));
    k += n.ivl.to_string();
    k += '#';
    k += std::to_string(n.a);
    k += '#';
    k += std::to_string(n.b);
    k += '#';
    k += n.name;
    return k;
}

FormulaId FormulaArena::intern(FNode n) {
    std::string k = key(n);
    auto it = table_.find(k);
    if (it != table_.end()) return it->second;
    FormulaId id = static_cast<FormulaId>(nodes_.size());
    nodes_.push_back(std::move(n));
    table_.emplace(std::move(k), id);
    return id;
}

FormulaId FormulaArena::tru() { return intern(FNode{FOp::True}); }

FormulaId FormulaArena::falsum() { return not_(tru()); }

FormulaId FormulaArena::prop(const std::string& name) {
    FNode n;
    n.op = FOp::Prop;
    n.name = name;
    return intern(std::move(n));
}

FormulaId FormulaArena::or_(FormulaId a, FormulaId b) {
    FNode n;
    n.op = FOp::Or;
    n.a = a;
    n.b = b;
    return intern(std::move(n));
}

FormulaId FormulaArena::not_(FormulaId a) {
    if (nodes_[a].op == FOp::Not) return nodes_[a].a;  // collapse double negation
    FNode n;
    n.op = FOp::Not;
    n.a = a;
    return intern(std::move(n));
}

static void require_dir(Axis dir, bool caller_ok, const char* what) {
    if (!caller_ok && dir == Axis::Caller)
        fail("illegal-combination", std::string(what) + " does not admit the caller direction");
}

static void require_formula_interval(const Interval& ivl, const char* what) {
    if (ivl.is_undef())
        fail("illegal-combination",
             std::string(what) + ": the undef singleton is not a formula interval");
    if (!ivl.nonempty()) fail("illegal-combination", std::string(what) + ": empty interval");
}

FormulaId FormulaArena::next(Axis dir, FormulaId a) {
    require_dir(dir, false, "next");
    FNode n;
    n.op = FOp::Next;
    n.dir = dir;
    n.a = a;
    return intern(std::move(n));
}

FormulaId FormulaArena::prev(Axis dir, FormulaId a) {
    FNode n;
    n.op = FOp::Prev;
    n.dir = dir;
    n.a = a;
    return intern(std::move(n));
}

FormulaId FormulaArena::until(Axis dir, FormulaId a, FormulaId b) {
    require_dir(dir, false, "until");
    FNode n;
    n.op = FOp::Until;
    n.dir = dir;
    n.a = a;
    n.b = b;
    return intern(std::move(n));
}

FormulaId FormulaArena::since(Axis dir, FormulaId a, FormulaId b) {
    FNode n;
    n.op = FOp::Since;
    n.dir = dir;
    n.a = a;
    n.b = b;
    return intern(std::move(n));
}

FormulaId FormulaArena::nextclock(Axis dir, const Interval& ivl, FormulaId a) {
    require_dir(dir, false, "nextclock");
    require_formula_interval(ivl, "nextclock");
    FNode n;
    n.op = FOp::NextClock;
    n.dir = dir;
    n.ivl = ivl;
    n.a = a;
    return intern(std::move(n));
}

FormulaId FormulaArena::prevclock(Axis dir, const Interval& ivl, FormulaId a) {
    require_formula_interval(ivl, "prevclock");
    FNode n;
    n.op = FOp::PrevClock;
    n.dir = dir;
    n.ivl = ivl;
    n.a = a;
    return intern(std::move(n));
}

FormulaId FormulaArena::tuntil(Axis dir, const Interval& ivl, FormulaId a, FormulaId b) {
    require_dir(dir, false, "timed until");
    require_formula_interval(ivl, "timed until");
    FNode n;
    n.op = FOp::TUntil;
    n.dir = dir;
    n.ivl = ivl;
    n.a = a;
    n.b = b;
    return intern(std::move(n));
}

FormulaId FormulaArena::tsince(Axis dir, const Interval& ivl, FormulaId a, FormulaId b) {
    require_formula_interval(ivl, "timed since");
    FNode n;
    n.op = FOp::TSince;
    n.dir = dir;
    n.ivl = ivl;
    n.a = a;
    n.b = b;
    return intern(std::move(n));
}

FormulaId FormulaArena::negation_of(FormulaId a) {
    return not_(a);  // not_ already collapses
}

template <typename Fn>
static void walk(const FormulaArena& ar, FormulaId root, Fn&& visit) {
    std::vector<FormulaId> stack{root};
    std::vector<bool> seen(ar.size(), false);
    while (!stack.empty()) {
        FormulaId id = stack.back();
        stack.pop_back();
        if (seen[id]) continue;
        seen[id] = true;
        visit(id);
        const FNode& n = ar.node(id);
        if (n.a != kNoFormula) stack.push_back(n.a);
        if (n.b != kNoFormula) stack.push_back(n.b);
    }
}

FormulaMetrics FormulaArena::metrics(FormulaId id) const {
    FormulaMetrics m;
    walk(*this, id, [&](FormulaId f) {
        ++m.size;
        const FNode& n = nodes_[f];
        if (n.op == FOp::NextClock || n.op == FOp::PrevClock || n.op == FOp::TUntil ||
            n.op == FOp::TSince) {
            if (!n.ivl.is_undef()) {
                if (n.ivl.lo > 0 || n.ivl.lo_strict) m.constants.insert(n.ivl.lo);
                if (n.ivl.hi.has_value()) m.constants.insert(*n.ivl.hi);
            }
        }
        if ((n.op == FOp::NextClock || n.op == FOp::PrevClock) &&
            nodes_[n.a].op != FOp::Prop)
            m.recursive = true;
    });
    return m;
}

bool FormulaArena::is_ecntl(FormulaId id) const {
    bool ok = true;
    walk(*this, id, [&](FormulaId f) {
        FOp op = nodes_[f].op;
        if (op == FOp::TUntil || op == FOp::TSince) ok = false;
    });
    return ok;
}

bool FormulaArena::is_nmtl(FormulaId id) const {
    bool ok = true;
    walk(*this, id, [&](FormulaId f) {
        switch (nodes_[f].op) {
            case FOp::True:
            case FOp::Prop:
            case FOp::Or:
            case FOp::Not:
            case FOp::TUntil:
            case FOp::TSince:
                break;
            default:
                ok = false;
        }
    });
    return ok;
}

bool FormulaArena::future_only(FormulaId id) const {
    bool ok = true;
    walk(*this, id, [&](FormulaId f) {
        switch (nodes_[f].op) {
            case FOp::Prev:
            case FOp::Since:
            case FOp::PrevClock:
            case FOp::TSince:
                ok = false;
                break;
            default:
                break;
        }
    });
    return ok;
}

std::vector<std::string> FormulaArena::props_of(FormulaId id) const {
    std::set<std::string> set;
    walk(*this, id, [&](FormulaId f) {
        if (nodes_[f].op == FOp::Prop) set.insert(nodes_[f].name);
    });
    return {set.begin(), set.end()};
}

// ---------------------------------------------------------------------------
// Printer.  Precedence: prefix operators > until/since (right assoc) > or.
// '&' and '->' are parser sugar and never printed.
// ---------------------------------------------------------------------------

namespace {
enum Prec { kPrecOr = 1, kPrecUntil = 2, kPrecPrefix = 3 };

const char* dir_letter(Axis d) {
    switch (d) {
        case Axis::Global: return "g";
        case Axis::Abstract: return "a";
        case Axis::Caller: return "c";
    }
    return "?";
}
}  // namespace

static void print_rec(const FormulaArena& ar, FormulaId id, int parent, std::string& out) {
    const FNode& n = ar.node(id);
    auto wrap = [&](int mine, auto&& body) {
        bool paren = mine < parent;
        if (paren) out += '(';
        body();
        if (paren) out += ')';
    };
    switch (n.op) {
        case FOp::True: out += "true"; break;
        case FOp::Prop: out += n.name; break;
        case FOp::Not:
            if (ar.node(n.a).op == FOp::True) {
                out += "false";
                break;
            }
            out += '!';
            print_rec(ar, n.a, kPrecPrefix + 1, out);
            break;
        case FOp::Or:
            wrap(kPrecOr, [&] {
                print_rec(ar, n.a, kPrecOr, out);
                out += " | ";
                print_rec(ar, n.b, kPrecOr + 1, out);
            });
            break;
        case FOp::Next:
            out += 'X';
            out += dir_letter(n.dir);
            out += ' ';
            print_rec(ar, n.a, kPrecPrefix + 1, out);
            break;
        case FOp::Prev:
            out += 'P';
            out += dir_letter(n.dir);
            out += ' ';
            print_rec(ar, n.a, kPrecPrefix + 1, out);
            break;
        case FOp::NextClock:
            out += 'N';
            out += dir_letter(n.dir);
            out += n.ivl.to_string();
            out += ' ';
            print_rec(ar, n.a, kPrecPrefix + 1, out);
            break;
        case FOp::PrevClock:
            out += 'B';
            out += dir_letter(n.dir);
            out += n.ivl.to_string();
            out += ' ';
            print_rec(ar, n.a, kPrecPrefix + 1, out);
            break;
        case FOp::Until:
        case FOp::Since:
        case FOp::TUntil:
        case FOp::TSince:
            wrap(kPrecUntil, [&] {
                print_rec(ar, n.a, kPrecUntil + 1, out);
                out += ' ';
                out += (n.op == FOp::Until || n.op == FOp::TUntil) ? 'U' : 'S';
                out += dir_letter(n.dir);
                if (n.op == FOp::TUntil || n.op == FOp::TSince) out += n.ivl.to_string();
                out += ' ';
                print_rec(ar, n.b, kPrecUntil, out);  // right associative
            });
            break;
    }
}

std::string FormulaArena::print(FormulaId id) const {
    std::string out;
    print_rec(*this, id, 0, out);
    return out;
}

}  // namespace ecnl
