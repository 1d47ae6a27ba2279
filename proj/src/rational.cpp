#include "ecnl/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace ecnl {

std::optional<Rat> parse_rat(const std::string& text) {
    if (text.empty()) return std::nullopt;
    std::string s = text;
    // Reject whitespace and anything but digits, '-', '/', '.'.
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c)) && c != '-' && c != '/' && c != '.')
            return std::nullopt;
    }
    auto slash = s.find('/');
    auto dot = s.find('.');
    if (slash != std::string::npos && dot != std::string::npos) return std::nullopt;
    try {
        if (dot != std::string::npos) {
            std::string whole = s.substr(0, dot);
            std::string frac = s.substr(dot + 1);
            if (frac.empty()) return std::nullopt;
            for (char c : frac)
                if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
            bool neg = !whole.empty() && whole[0] == '-';
            if (neg) whole = whole.substr(1);
            if (whole.empty()) whole = "0";
            mpz_class num(whole);
            mpz_class den(1);
            for (size_t k = 0; k < frac.size(); ++k) den *= 10;
            num = num * den + mpz_class(frac);
            Rat r(num, den);
            r.canonicalize();
            if (neg) r = -r;
            return r;
        }
        Rat r(s);
        if (r.get_den() == 0) return std::nullopt;
        r.canonicalize();
        return r;
    } catch (const std::invalid_argument&) {
        return std::nullopt;
    }
}

std::string rat_to_string(const Rat& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rat rat_floor(const Rat& r) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    return Rat(q);
}

Rat rat_ceil(const Rat& r) {
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    return Rat(q);
}

Rat simplest_in_interval(const Rat& lo, bool lo_open, const Rat& hi, bool hi_open) {
    if (lo == hi) {
        if (lo_open || hi_open) throw std::invalid_argument("empty interval");
        return lo;
    }
    if (lo > hi) throw std::invalid_argument("empty interval");
    // Smallest admissible integer, if any.
    Rat z = rat_ceil(lo);
    if (lo_open && z == lo) z += 1;
    if (z < hi || (z == hi && !hi_open)) return z;
    // No integer inside: all candidates live in (n, n+1) with n = floor(lo).
    // Map x -> 1/(x - n), which flips the interval and the open flags.
    Rat n = rat_floor(lo);
    Rat a = lo - n;  // >= 0, < 1
    Rat b = hi - n;  // <= 1
    if (a == 0) {
        // lo is the integer n itself (necessarily open here): candidates are
        // 1/m for the smallest admissible integer m >= 1/b.
        Rat q = 1 / b;
        Rat m = rat_floor(q);
        if (m < q)
            m += 1;
        else if (hi_open)
            m += 1;
        return n + 1 / m;
    }
    Rat inner = simplest_in_interval(1 / b, hi_open, 1 / a, lo_open);
    return n + 1 / inner;
}

}  // namespace ecnl
