#include "ecnl/words.hpp"

#include <algorithm>

#include <json.hpp>

namespace ecnl {

void fail(std::string kind, std::string message) {
    throw Error{std::move(kind), std::move(message)};
}

PropSet::PropSet(std::initializer_list<std::string> names) : props(names) {
    std::sort(props.begin(), props.end());
    props.erase(std::unique(props.begin(), props.end()), props.end());
}

PropSet::PropSet(std::vector<std::string> names) : props(std::move(names)) {
    std::sort(props.begin(), props.end());
    props.erase(std::unique(props.begin(), props.end()), props.end());
}

bool PropSet::contains(std::string_view name) const {
    return std::binary_search(props.begin(), props.end(), name,
                              [](std::string_view a, std::string_view b) { return a < b; });
}

std::string PropSet::to_string() const {
    std::string s = "{";
    for (size_t k = 0; k < props.size(); ++k) {
        if (k) s += ",";
        s += props[k];
    }
    s += "}";
    return s;
}

std::optional<SymKind> classify_opt(const PropSet& sym) {
    int found = 0;
    SymKind kind = SymKind::Internal;
    if (sym.contains(kCall)) {
        ++found;
        kind = SymKind::Call;
    }
    if (sym.contains(kRet)) {
        ++found;
        kind = SymKind::Ret;
    }
    if (sym.contains(kInt)) {
        ++found;
        kind = SymKind::Internal;
    }
    if (found != 1) return std::nullopt;
    return kind;
}

SymKind classify(const PropSet& sym) {
    auto k = classify_opt(sym);
    if (!k) fail("malformed-symbol", "symbol " + sym.to_string() +
                                         " must contain exactly one of call/ret/int");
    return *k;
}

WordDiagnostic validate_word(const TimedWord& w) {
    if (w.syms.size() != w.stamps.size())
        return {false, 0, "symbol and timestamp sequences differ in length"};
    for (size_t i = 0; i < w.size(); ++i) {
        if (!classify_opt(w.syms[i]))
            return {false, i, "malformed symbol (exactly one of call/ret/int required)"};
        if (w.syms[i].contains(kPinf))
            return {false, i, "reserved proposition pinf may not appear in input words"};
        if (sgn(w.stamps[i]) < 0) return {false, i, "negative timestamp"};
        if (i > 0 && w.stamps[i] < w.stamps[i - 1]) return {false, i, "non-monotone timestamp"};
    }
    return {};
}

WordStructure WordStructure::build(std::span<const SymKind> kinds) {
    WordStructure ws;
    const size_t n = kinds.size();
    ws.kinds.assign(kinds.begin(), kinds.end());
    ws.match.assign(n, kNoPos);
    ws.caller.assign(n, kNoPos);
    ws.abs_succ.assign(n, kNoPos);
    ws.abs_pred.assign(n, kNoPos);

    std::vector<size_t> pending;  // call positions whose return has not been read
    for (size_t i = 0; i < n; ++i) {
        switch (kinds[i]) {
            case SymKind::Call:
                ws.caller[i] = pending.empty() ? kNoPos : static_cast<long>(pending.back());
                pending.push_back(i);
                break;
            case SymKind::Ret:
                if (!pending.empty()) {
                    size_t c = pending.back();
                    pending.pop_back();
                    ws.match[c] = static_cast<long>(i);
                    ws.match[i] = static_cast<long>(c);
                    ws.caller[i] = ws.caller[c];
                } else {
                    ws.caller[i] = kNoPos;  // unmatched return: no pending call
                }
                break;
            case SymKind::Internal:
                ws.caller[i] = pending.empty() ? kNoPos : static_cast<long>(pending.back());
                break;
        }
    }
    for (size_t i = 0; i < n; ++i) {
        if (kinds[i] == SymKind::Call) {
            ws.abs_succ[i] = ws.match[i];  // matching return or none
        } else if (i + 1 < n && kinds[i + 1] != SymKind::Ret) {
            ws.abs_succ[i] = static_cast<long>(i + 1);
        }
        if (ws.abs_succ[i] != kNoPos) ws.abs_pred[ws.abs_succ[i]] = static_cast<long>(i);
    }
    return ws;
}

std::vector<SymKind> kinds_of(const TimedWord& w) {
    std::vector<SymKind> ks;
    ks.reserve(w.size());
    for (const auto& s : w.syms) ks.push_back(classify(s));
    return ks;
}

static void check_pos(const WordStructure& ws, size_t i) {
    if (i >= ws.size()) fail("out-of-range", "position " + std::to_string(i) + " out of range");
}

std::optional<size_t> matching_return(const WordStructure& ws, size_t i) {
    check_pos(ws, i);
    if (ws.kinds[i] != SymKind::Call)
        fail("not-a-call", "position " + std::to_string(i) + " is not a call");
    if (ws.match[i] == kNoPos) return std::nullopt;
    return static_cast<size_t>(ws.match[i]);
}

std::optional<size_t> successor(Axis kind, const WordStructure& ws, size_t i) {
    check_pos(ws, i);
    switch (kind) {
        case Axis::Global:
            if (i + 1 < ws.size()) return i + 1;
            return std::nullopt;
        case Axis::Abstract:
            if (ws.abs_succ[i] == kNoPos) return std::nullopt;
            return static_cast<size_t>(ws.abs_succ[i]);
        case Axis::Caller:
            if (ws.caller[i] == kNoPos) return std::nullopt;
            return static_cast<size_t>(ws.caller[i]);
    }
    return std::nullopt;
}

std::vector<size_t> positions(Axis kind, const WordStructure& ws, size_t i) {
    check_pos(ws, i);
    std::vector<size_t> out;
    switch (kind) {
        case Axis::Global:
            out.resize(ws.size());
            for (size_t k = 0; k < ws.size(); ++k) out[k] = k;
            break;
        case Axis::Abstract: {
            size_t start = i;
            while (ws.abs_pred[start] != kNoPos) start = static_cast<size_t>(ws.abs_pred[start]);
            long p = static_cast<long>(start);
            while (p != kNoPos) {
                out.push_back(static_cast<size_t>(p));
                p = ws.abs_succ[p];
            }
            break;
        }
        case Axis::Caller: {
            long p = static_cast<long>(i);
            while (p != kNoPos) {
                out.push_back(static_cast<size_t>(p));
                p = ws.caller[p];
            }
            std::reverse(out.begin(), out.end());
            break;
        }
    }
    return out;
}

std::optional<Rat> clock_value(const WordStructure& ws, std::span<const Rat> stamps,
                               const std::function<bool(size_t)>& occurs, size_t i, Axis axis,
                               bool predictor) {
    check_pos(ws, i);
    if (axis == Axis::Caller && predictor)
        fail("caller-predictor-requested", "there is no caller predictor clock");
    std::vector<size_t> path = positions(axis, ws, i);
    if (!predictor) {
        // Nearest earlier path position carrying the index.
        std::optional<size_t> witness;
        for (size_t p : path) {
            if (p >= i) break;
            if (occurs(p)) witness = p;
        }
        if (!witness) return std::nullopt;
        return Rat(stamps[i] - stamps[*witness]);
    }
    for (size_t p : path) {
        if (p <= i) continue;
        if (occurs(p)) return Rat(stamps[p] - stamps[i]);
    }
    return std::nullopt;
}

std::optional<Rat> clock_value(const TimedWord& w, const WordStructure& ws, size_t i,
                               const ClockId& clock) {
    return clock_value(ws, w.stamps, [&](size_t p) { return w.syms[p].contains(clock.index); },
                       i, clock.axis, clock.predictor);
}

std::optional<Rat> clock_value(const TimedWord& w, size_t i, const ClockId& clock) {
    WordStructure ws = WordStructure::build(kinds_of(w));
    return clock_value(w, ws, i, clock);
}

bool constraint_sat(const std::function<std::optional<Rat>(const ClockId&)>& val,
                    const ClockConstraint& theta) {
    for (const auto& atom : theta) {
        auto v = val(atom.clock);
        if (!v.has_value()) {
            if (!atom.interval.is_undef()) return false;
        } else {
            if (!atom.interval.contains(*v)) return false;
        }
    }
    return true;
}

bool constraint_sat(const ClockValuation& val, const ClockConstraint& theta) {
    return constraint_sat([&](const ClockId& c) { return val(c); }, theta);
}

std::string word_to_json(const TimedWord& w, bool pretty) {
    nlohmann::json arr = nlohmann::json::array();
    for (size_t i = 0; i < w.size(); ++i) {
        nlohmann::json rec;
        rec["props"] = w.syms[i].props;
        rec["t"] = rat_to_string(w.stamps[i]);
        arr.push_back(rec);
    }
    return pretty ? arr.dump(2) : arr.dump();
}

TimedWord word_from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        fail("schema", std::string("word file: ") + e.what());
    }
    if (!doc.is_array()) fail("schema", "word file: expected a JSON array of records");
    TimedWord w;
    for (size_t i = 0; i < doc.size(); ++i) {
        const auto& rec = doc[i];
        std::string at = "[" + std::to_string(i) + "]";
        if (!rec.is_object()) fail("schema", "word file: " + at + " is not an object");
        if (!rec.contains("props") || !rec["props"].is_array())
            fail("schema", "word file: " + at + ".props missing or not an array");
        if (!rec.contains("t")) fail("schema", "word file: " + at + ".t missing");
        std::vector<std::string> names;
        for (const auto& p : rec["props"]) {
            if (!p.is_string()) fail("schema", "word file: " + at + ".props entries must be strings");
            names.push_back(p.get<std::string>());
        }
        std::string t = rec["t"].is_string() ? rec["t"].get<std::string>() : rec["t"].dump();
        auto r = parse_rat(t);
        if (!r) fail("schema", "word file: " + at + ".t is not a rational");
        w.syms.emplace_back(std::move(names));
        w.stamps.push_back(*r);
    }
    return w;
}

}  // namespace ecnl
