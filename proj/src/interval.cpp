#include "ecnl/interval.hpp"

#include <cctype>

namespace ecnl {

bool Interval::nonempty() const {
    if (undef) return true;
    if (!hi.has_value()) return true;
    if (lo < *hi) return true;
    return lo == *hi && !lo_strict && !hi_strict;
}

bool Interval::contains(const Rat& v) const {
    if (undef) return false;
    int cl = cmp(v, static_cast<unsigned long>(lo));
    if (cl < 0 || (cl == 0 && lo_strict)) return false;
    if (hi.has_value()) {
        int ch = cmp(v, static_cast<unsigned long>(*hi));
        if (ch > 0 || (ch == 0 && hi_strict)) return false;
    }
    return true;
}

std::vector<Interval> Interval::complement_pieces() const {
    std::vector<Interval> out;
    if (undef) {
        out.push_back(Interval::all());
        return out;
    }
    // Below piece: [0, lo] when the lower bound is strict, [0, lo) otherwise.
    Interval below{false, 0, false, lo, !lo_strict};
    if (below.nonempty()) out.push_back(below);
    if (hi.has_value()) {
        // Above piece: (hi, inf) when the upper bound is weak, [hi, inf) otherwise.
        Interval above{false, *hi, !hi_strict, std::nullopt, false};
        out.push_back(above);
    }
    return out;
}

bool Interval::operator==(const Interval& o) const {
    if (undef != o.undef) return false;
    if (undef) return true;
    if (lo != o.lo || lo_strict != o.lo_strict) return false;
    if (hi.has_value() != o.hi.has_value()) return false;
    if (hi.has_value() && (*hi != *o.hi || hi_strict != o.hi_strict)) return false;
    return true;
}

std::string Interval::to_string() const {
    if (undef) return "undef";
    std::string s;
    s += lo_strict ? '(' : '[';
    s += std::to_string(lo);
    s += ',';
    if (hi.has_value()) {
        s += std::to_string(*hi);
        s += hi_strict ? ')' : ']';
    } else {
        s += "inf)";
    }
    return s;
}

std::optional<Interval> Interval::parse(const std::string& text) {
    if (text == "undef") return Interval::undef_singleton();
    if (text.size() < 5) return std::nullopt;
    char open = text.front();
    char close = text.back();
    if (open != '[' && open != '(') return std::nullopt;
    if (close != ']' && close != ')') return std::nullopt;
    std::string body = text.substr(1, text.size() - 2);
    auto comma = body.find(',');
    if (comma == std::string::npos) return std::nullopt;
    std::string a = body.substr(0, comma);
    std::string b = body.substr(comma + 1);
    if (a.empty() || b.empty()) return std::nullopt;
    for (char c : a)
        if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
    Interval iv;
    iv.lo = std::stoul(a);
    iv.lo_strict = (open == '(');
    if (b == "inf") {
        if (close != ')') return std::nullopt;
        iv.hi = std::nullopt;
    } else {
        for (char c : b)
            if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
        iv.hi = std::stoul(b);
        iv.hi_strict = (close == ')');
    }
    if (!iv.nonempty()) return std::nullopt;
    return iv;
}

std::string ClockId::to_string() const {
    std::string s;
    s += predictor ? 'y' : 'x';
    switch (axis) {
        case Axis::Global: s += 'g'; break;
        case Axis::Abstract: s += 'a'; break;
        case Axis::Caller: s += 'c'; break;
    }
    s += ':';
    s += index;
    return s;
}

std::optional<ClockId> ClockId::parse(const std::string& text) {
    if (text.size() < 4 || text[2] != ':') return std::nullopt;
    ClockId id;
    if (text[0] == 'x')
        id.predictor = false;
    else if (text[0] == 'y')
        id.predictor = true;
    else
        return std::nullopt;
    switch (text[1]) {
        case 'g': id.axis = Axis::Global; break;
        case 'a': id.axis = Axis::Abstract; break;
        case 'c': id.axis = Axis::Caller; break;
        default: return std::nullopt;
    }
    if (id.axis == Axis::Caller && id.predictor) return std::nullopt;  // no yc clock
    id.index = text.substr(3);
    if (id.index.empty()) return std::nullopt;
    return id;
}

}  // namespace ecnl
