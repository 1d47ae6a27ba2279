#include "ecnl/parser.hpp"

#include <cctype>

namespace ecnl {

namespace {

enum class Tok {
    End,
    Ident,     // proposition
    True,
    False,
    Bang,
    Amp,
    Pipe,
    Arrow,
    LParen,
    RParen,
    Prefix,    // Xg Xa Pg Pa Pc Ng Na Bg Ba Bc (dir + kind in fields)
    Binary,    // Ug Ua Sg Sa Sc
};

struct Token {
    Tok kind = Tok::End;
    std::string text;
    char op = 0;    // 'X','P','N','B','U','S'
    Axis dir = Axis::Global;
    size_t pos = 0;
};

struct Lexer {
    const std::string& src;
    size_t at = 0;

    explicit Lexer(const std::string& s) : src(s) {}

    [[noreturn]] void error(size_t pos, const std::string& msg) const {
        size_t line = 1, col = 1;
        for (size_t k = 0; k < pos && k < src.size(); ++k) {
            if (src[k] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        fail("syntax", std::to_string(line) + ":" + std::to_string(col) + ": " + msg);
    }

    void skip_ws() {
        while (at < src.size() && std::isspace(static_cast<unsigned char>(src[at]))) ++at;
    }

    Token next() {
        skip_ws();
        Token t;
        t.pos = at;
        if (at >= src.size()) return t;
        char c = src[at];
        if (c == '!') {
            ++at;
            t.kind = Tok::Bang;
            return t;
        }
        if (c == '&') {
            ++at;
            t.kind = Tok::Amp;
            return t;
        }
        if (c == '|') {
            ++at;
            t.kind = Tok::Pipe;
            return t;
        }
        if (c == '-' && at + 1 < src.size() && src[at + 1] == '>') {
            at += 2;
            t.kind = Tok::Arrow;
            return t;
        }
        if (c == '(') {
            ++at;
            t.kind = Tok::LParen;
            return t;
        }
        if (c == ')') {
            ++at;
            t.kind = Tok::RParen;
            return t;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = at;
            while (at < src.size() &&
                   (std::isalnum(static_cast<unsigned char>(src[at])) || src[at] == '_'))
                ++at;
            t.text = src.substr(start, at - start);
            if (t.text == "true") {
                t.kind = Tok::True;
                return t;
            }
            if (t.text == "false") {
                t.kind = Tok::False;
                return t;
            }
            if (t.text.size() == 2) {
                char o = t.text[0];
                char d = t.text[1];
                Axis dir;
                bool dir_ok = true;
                switch (d) {
                    case 'g': dir = Axis::Global; break;
                    case 'a': dir = Axis::Abstract; break;
                    case 'c': dir = Axis::Caller; break;
                    default: dir_ok = false; dir = Axis::Global;
                }
                if (dir_ok && (o == 'X' || o == 'P' || o == 'N' || o == 'B')) {
                    t.kind = Tok::Prefix;
                    t.op = o;
                    t.dir = dir;
                    return t;
                }
                if (dir_ok && (o == 'U' || o == 'S')) {
                    t.kind = Tok::Binary;
                    t.op = o;
                    t.dir = dir;
                    return t;
                }
            }
            t.kind = Tok::Ident;
            return t;
        }
        error(at, std::string("unexpected character '") + c + "'");
    }
};

struct Parser {
    FormulaArena& ar;
    Lexer lex;
    Token cur;

    Parser(FormulaArena& a, const std::string& s) : ar(a), lex(s) { cur = lex.next(); }

    void advance() { cur = lex.next(); }

    [[noreturn]] void error(const std::string& msg) { lex.error(cur.pos, msg); }

    // Interval literal immediately after a clock/timed operator keyword.
    Interval interval() {
        lex.skip_ws();
        size_t start = lex.at;
        if (lex.src.compare(start, 5, "undef") == 0)
            lex.error(start, "the undef singleton is not allowed in formula intervals");
        if (start >= lex.src.size() || (lex.src[start] != '[' && lex.src[start] != '('))
            lex.error(start, "expected an interval like [a,b] or [a,inf)");
        size_t end = start;
        while (end < lex.src.size() && lex.src[end] != ']' && lex.src[end] != ')') ++end;
        if (end >= lex.src.size()) lex.error(start, "unterminated interval");
        std::string text = lex.src.substr(start, end - start + 1);
        auto iv = Interval::parse(text);
        if (!iv) lex.error(start, "malformed interval '" + text + "'");
        if (iv->is_undef())
            lex.error(start, "the undef singleton is not allowed in formula intervals");
        lex.at = end + 1;
        cur = lex.next();
        return *iv;
    }

    FormulaId primary() {
        switch (cur.kind) {
            case Tok::True: advance(); return ar.tru();
            case Tok::False: advance(); return ar.falsum();
            case Tok::Ident: {
                std::string name = cur.text;
                advance();
                return ar.prop(name);
            }
            case Tok::LParen: {
                advance();
                FormulaId f = implies_level();
                if (cur.kind != Tok::RParen) error("expected ')'");
                advance();
                return f;
            }
            default: error("expected a formula");
        }
    }

    FormulaId prefix() {
        if (cur.kind == Tok::Bang) {
            advance();
            return ar.not_(prefix());
        }
        if (cur.kind == Tok::Prefix) {
            char op = cur.op;
            Axis dir = cur.dir;
            size_t pos = cur.pos;
            if (op == 'X' && dir == Axis::Caller) lex.error(pos, "there is no caller next (Xc)");
            if (op == 'N' && dir == Axis::Caller)
                lex.error(pos, "there is no caller predictor clock (Nc)");
            if (op == 'N' || op == 'B') {
                Interval iv = interval();
                FormulaId arg = prefix();
                return op == 'N' ? ar.nextclock(dir, iv, arg) : ar.prevclock(dir, iv, arg);
            }
            advance();
            FormulaId arg = prefix();
            return op == 'X' ? ar.next(dir, arg) : ar.prev(dir, arg);
        }
        return primary();
    }

    FormulaId until_level() {
        FormulaId left = prefix();
        if (cur.kind == Tok::Binary) {
            char op = cur.op;
            Axis dir = cur.dir;
            size_t pos = cur.pos;
            if (op == 'U' && dir == Axis::Caller) lex.error(pos, "there is no caller until (Uc)");
            // An interval may follow directly (timed until/since of NMTL).
            lex.skip_ws();
            bool timed = lex.at < lex.src.size() && (lex.src[lex.at] == '[' || lex.src[lex.at] == '(');
            // '(' could also start a parenthesised right operand; disambiguate by
            // looking for a digit right after.
            if (timed && lex.src[lex.at] == '(') {
                size_t k = lex.at + 1;
                while (k < lex.src.size() && std::isspace(static_cast<unsigned char>(lex.src[k]))) ++k;
                timed = k < lex.src.size() && std::isdigit(static_cast<unsigned char>(lex.src[k]));
            }
            if (timed) {
                Interval iv = interval();
                FormulaId right = until_level();  // right associative
                return op == 'U' ? ar.tuntil(dir, iv, left, right)
                                 : ar.tsince(dir, iv, left, right);
            }
            advance();
            FormulaId right = until_level();
            return op == 'U' ? ar.until(dir, left, right) : ar.since(dir, left, right);
        }
        return left;
    }

    FormulaId and_level() {
        FormulaId left = until_level();
        while (cur.kind == Tok::Amp) {
            advance();
            FormulaId right = until_level();
            left = ar.and_(left, right);
        }
        return left;
    }

    FormulaId or_level() {
        FormulaId left = and_level();
        while (cur.kind == Tok::Pipe) {
            advance();
            FormulaId right = and_level();
            left = ar.or_(left, right);
        }
        return left;
    }

    FormulaId implies_level() {
        FormulaId left = or_level();
        if (cur.kind == Tok::Arrow) {
            advance();
            FormulaId right = implies_level();  // right associative
            return ar.implies(left, right);
        }
        return left;
    }

    FormulaId parse() {
        FormulaId f = implies_level();
        if (cur.kind != Tok::End) error("trailing input after formula");
        return f;
    }
};

}  // namespace

FormulaId parse_formula(FormulaArena& arena, const std::string& text) {
    Parser p(arena, text);
    return p.parse();
}

}  // namespace ecnl
