#include "ecnl/ecna.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

namespace ecnl {

uint32_t Ecna::add_state(const std::string& name) {
    for (uint32_t i = 0; i < states.size(); ++i)
        if (states[i] == name) return i;
    states.push_back(name);
    return static_cast<uint32_t>(states.size() - 1);
}

uint32_t Ecna::add_stack_sym(const std::string& name) {
    for (uint32_t i = 0; i < stack_syms.size(); ++i)
        if (stack_syms[i] == name) return i;
    stack_syms.push_back(name);
    return static_cast<uint32_t>(stack_syms.size() - 1);
}

namespace {

struct CfgHash {
    size_t operator()(const Configuration& c) const {
        size_t h = std::hash<uint32_t>{}(c.state);
        for (uint32_t s : c.stack) h ^= std::hash<uint32_t>{}(s) + 0x9e3779b9 + (h << 6) + (h >> 2);
        return h;
    }
};

// Word access shared between plain and atom-labelled inputs.
struct WordView {
    size_t n = 0;
    std::vector<SymKind> kinds;
    WordStructure ws;
    std::function<bool(size_t, const PropSet&)> matches;
    std::function<std::optional<Rat>(size_t, const ClockId&)> clock;
};

// Filled in place: the closures capture addresses inside the view itself, so
// the object must not move after construction.
void make_view(const TimedWord& w, WordView& v) {
    v.n = w.size();
    v.kinds = kinds_of(w);
    v.ws = WordStructure::build(v.kinds);
    v.matches = [&w](size_t i, const PropSet& input) { return w.syms[i] == input; };
    v.clock = [&w, &v](size_t i, const ClockId& c) { return clock_value(w, v.ws, i, c); };
}

// Atom-labelled input: transition inputs are rendered atoms (sets of positive
// member formulas); clock indices are printed closure formulas.
struct AtomView {
    std::vector<PropSet> rendered;                       // per position
    std::unordered_map<std::string, size_t> formula_at;  // printed formula -> item
};

void make_view(const HintikkaWord& hw, AtomView& aux, WordView& v) {
    const Closure& cl = *hw.cl;
    for (size_t k = 0; k < cl.size(); ++k) aux.formula_at[cl.arena().print(cl.item(k))] = k;
    for (const auto& a : hw.atoms) {
        std::vector<std::string> names;
        for (size_t k = 0; k < cl.size(); ++k) {
            if (!a.test(k)) continue;
            if (cl.arena().node(cl.item(k)).op == FOp::Not) continue;
            names.push_back(cl.arena().print(cl.item(k)));
        }
        aux.rendered.emplace_back(std::move(names));
    }
    v.n = hw.size();
    v.kinds = hw.kinds();
    v.ws = WordStructure::build(v.kinds);
    v.matches = [&aux](size_t i, const PropSet& input) { return aux.rendered[i] == input; };
    v.clock = [&hw, &v, &aux](size_t i, const ClockId& c) -> std::optional<Rat> {
        auto it = aux.formula_at.find(c.index);
        if (it == aux.formula_at.end()) return std::nullopt;
        return atom_clock_value(hw, v.ws, i, it->second, c.axis, c.predictor);
    };
}

std::vector<Configuration> step_view(const Ecna& a, const WordView& v, const Configuration& cfg,
                                     size_t i) {
    std::vector<Configuration> out;
    SymKind kind = v.kinds[i];
    for (const auto& t : a.transitions) {
        if (t.from != cfg.state) continue;
        if (!v.matches(i, t.input)) continue;
        if (!constraint_sat([&](const ClockId& c) { return v.clock(i, c); }, t.guard)) continue;
        switch (t.kind) {
            case EcnaTransition::Kind::Push: {
                if (kind != SymKind::Call) continue;
                Configuration next{t.to, cfg.stack};
                next.stack.push_back(*t.stack_sym);
                out.push_back(std::move(next));
                break;
            }
            case EcnaTransition::Kind::Pop: {
                if (kind != SymKind::Ret) continue;
                if (t.stack_sym.has_value()) {
                    if (cfg.stack.empty() || cfg.stack.back() != *t.stack_sym) continue;
                    Configuration next{t.to, cfg.stack};
                    next.stack.pop_back();
                    out.push_back(std::move(next));
                } else {
                    // bottom: read but not removed
                    if (!cfg.stack.empty()) continue;
                    out.push_back(Configuration{t.to, {}});
                }
                break;
            }
            case EcnaTransition::Kind::Internal: {
                if (kind != SymKind::Internal) continue;
                out.push_back(Configuration{t.to, cfg.stack});
                break;
            }
        }
    }
    return out;
}

bool accepts_view(const Ecna& a, const WordView& v) {
    std::vector<std::unordered_set<Configuration, CfgHash>> seen(v.n + 1);
    std::function<bool(const Configuration&, size_t)> dfs = [&](const Configuration& cfg,
                                                                size_t i) -> bool {
        if (!seen[i].insert(cfg).second) return false;
        if (i == v.n)
            return std::find(a.final_states.begin(), a.final_states.end(), cfg.state) !=
                   a.final_states.end();
        for (const auto& next : step_view(a, v, cfg, i))
            if (dfs(next, i + 1)) return true;
        return false;
    };
    for (uint32_t q0 : a.initial)
        if (dfs(Configuration{q0, {}}, 0)) return true;
    return false;
}

}  // namespace

std::vector<Configuration> step(const Ecna& a, const Configuration& cfg, const TimedWord& w,
                                size_t i) {
    if (i >= w.size()) fail("out-of-range", "step position " + std::to_string(i));
    WordView v;
    make_view(w, v);
    return step_view(a, v, cfg, i);
}

bool accepts(const Ecna& a, const TimedWord& w) {
    if (a.alphabet != AlphabetKind::Props)
        fail("alphabet-mismatch", "automaton reads atoms, got a plain timed word");
    WordView v;
    make_view(w, v);
    return accepts_view(a, v);
}

bool accepts(const Ecna& a, const HintikkaWord& hw) {
    if (a.alphabet != AlphabetKind::Atoms)
        fail("alphabet-mismatch", "automaton reads plain symbols, got an atom word");
    AtomView aux;
    WordView v;
    make_view(hw, aux, v);
    return accepts_view(a, v);
}

Ecna product(const Ecna& a, const Ecna& b) {
    if (a.alphabet != b.alphabet) fail("alphabet-mismatch", "product of different alphabets");
    Ecna p;
    p.alphabet = a.alphabet;
    std::unordered_map<uint64_t, uint32_t> smap, gmap;
    auto state_of = [&](uint32_t i, uint32_t j) {
        uint64_t k = (static_cast<uint64_t>(i) << 32) | j;
        auto it = smap.find(k);
        if (it != smap.end()) return it->second;
        uint32_t id = p.add_state(a.states[i] + "|" + b.states[j]);
        smap.emplace(k, id);
        return id;
    };
    auto sym_of = [&](uint32_t i, uint32_t j) {
        uint64_t k = (static_cast<uint64_t>(i) << 32) | j;
        auto it = gmap.find(k);
        if (it != gmap.end()) return it->second;
        uint32_t id = p.add_stack_sym(a.stack_syms[i] + "|" + b.stack_syms[j]);
        gmap.emplace(k, id);
        return id;
    };
    for (uint32_t i = 0; i < a.states.size(); ++i)
        for (uint32_t j = 0; j < b.states.size(); ++j) state_of(i, j);
    for (uint32_t i : a.initial)
        for (uint32_t j : b.initial) p.initial.push_back(state_of(i, j));
    for (uint32_t i : a.final_states)
        for (uint32_t j : b.final_states) p.final_states.push_back(state_of(i, j));

    for (const auto& ta : a.transitions) {
        for (const auto& tb : b.transitions) {
            if (ta.kind != tb.kind) continue;
            if (!(ta.input == tb.input)) continue;
            EcnaTransition t;
            t.kind = ta.kind;
            t.from = state_of(ta.from, tb.from);
            t.input = ta.input;
            t.guard = ta.guard;
            t.guard.insert(t.guard.end(), tb.guard.begin(), tb.guard.end());
            t.to = state_of(ta.to, tb.to);
            if (ta.kind == EcnaTransition::Kind::Push) {
                t.stack_sym = sym_of(*ta.stack_sym, *tb.stack_sym);
            } else if (ta.kind == EcnaTransition::Kind::Pop) {
                // Height synchronization: the two tops reach bottom together.
                if (ta.stack_sym.has_value() != tb.stack_sym.has_value()) continue;
                if (ta.stack_sym.has_value()) t.stack_sym = sym_of(*ta.stack_sym, *tb.stack_sym);
            }
            p.transitions.push_back(std::move(t));
        }
    }
    return p;
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

std::string ecna_to_json(const Ecna& a, bool pretty) {
    nlohmann::json doc;
    doc["alphabet"] = a.alphabet == AlphabetKind::Props ? "props" : "atoms";
    doc["states"] = a.states;
    nlohmann::json init = nlohmann::json::array(), fin = nlohmann::json::array();
    for (uint32_t q : a.initial) init.push_back(a.states[q]);
    for (uint32_t q : a.final_states) fin.push_back(a.states[q]);
    doc["initial"] = init;
    doc["final"] = fin;
    doc["stack"] = a.stack_syms;
    nlohmann::json ts = nlohmann::json::array();
    for (const auto& t : a.transitions) {
        nlohmann::json j;
        switch (t.kind) {
            case EcnaTransition::Kind::Push: j["kind"] = "push"; break;
            case EcnaTransition::Kind::Pop: j["kind"] = "pop"; break;
            case EcnaTransition::Kind::Internal: j["kind"] = "internal"; break;
        }
        j["from"] = a.states[t.from];
        j["input"] = t.input.props;
        nlohmann::json guard = nlohmann::json::array();
        for (const auto& atom : t.guard) {
            nlohmann::json g;
            g["clock"] = atom.clock.to_string();
            g["interval"] = atom.interval.to_string();
            guard.push_back(g);
        }
        j["guard"] = guard;
        j["to"] = a.states[t.to];
        if (t.kind == EcnaTransition::Kind::Push)
            j["stack_sym"] = a.stack_syms[*t.stack_sym];
        else if (t.kind == EcnaTransition::Kind::Pop)
            j["stack_sym"] = t.stack_sym.has_value() ? nlohmann::json(a.stack_syms[*t.stack_sym])
                                                     : nlohmann::json(nullptr);
        ts.push_back(j);
    }
    doc["transitions"] = ts;
    return pretty ? doc.dump(2) : doc.dump();
}

Ecna ecna_from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        fail("schema", std::string("automaton: ") + e.what());
    }
    auto need = [&](const nlohmann::json& j, const char* field,
                    const std::string& path) -> const nlohmann::json& {
        if (!j.contains(field)) fail("schema", "automaton: missing " + path + "." + field);
        return j[field];
    };
    Ecna a;
    std::string alpha = need(doc, "alphabet", "$").get<std::string>();
    if (alpha == "props")
        a.alphabet = AlphabetKind::Props;
    else if (alpha == "atoms")
        a.alphabet = AlphabetKind::Atoms;
    else
        fail("schema", "automaton: $.alphabet must be \"props\" or \"atoms\"");

    std::unordered_map<std::string, uint32_t> sidx, gidx;
    for (const auto& s : need(doc, "states", "$")) {
        if (!s.is_string()) fail("schema", "automaton: $.states entries must be strings");
        std::string name = s.get<std::string>();
        if (sidx.count(name)) fail("schema", "automaton: duplicate state " + name);
        sidx[name] = a.add_state(name);
    }
    for (const auto& s : need(doc, "stack", "$")) {
        std::string name = s.get<std::string>();
        if (gidx.count(name)) fail("schema", "automaton: duplicate stack symbol " + name);
        gidx[name] = a.add_stack_sym(name);
    }
    auto state_ref = [&](const nlohmann::json& j, const std::string& path) {
        if (!j.is_string() || !sidx.count(j.get<std::string>()))
            fail("schema", "automaton: " + path + " is not a declared state");
        return sidx[j.get<std::string>()];
    };
    for (const auto& s : need(doc, "initial", "$")) a.initial.push_back(state_ref(s, "$.initial[]"));
    for (const auto& s : need(doc, "final", "$"))
        a.final_states.push_back(state_ref(s, "$.final[]"));

    size_t ti = 0;
    for (const auto& j : need(doc, "transitions", "$")) {
        std::string path = "$.transitions[" + std::to_string(ti++) + "]";
        EcnaTransition t;
        std::string kind = need(j, "kind", path).get<std::string>();
        if (kind == "push")
            t.kind = EcnaTransition::Kind::Push;
        else if (kind == "pop")
            t.kind = EcnaTransition::Kind::Pop;
        else if (kind == "internal")
            t.kind = EcnaTransition::Kind::Internal;
        else
            fail("schema", "automaton: " + path + ".kind must be push/pop/internal");
        t.from = state_ref(need(j, "from", path), path + ".from");
        t.to = state_ref(need(j, "to", path), path + ".to");
        std::vector<std::string> props;
        for (const auto& p : need(j, "input", path)) props.push_back(p.get<std::string>());
        t.input = PropSet(std::move(props));
        size_t gi = 0;
        for (const auto& g : need(j, "guard", path)) {
            std::string gpath = path + ".guard[" + std::to_string(gi++) + "]";
            auto clock = ClockId::parse(need(g, "clock", gpath).get<std::string>());
            if (!clock)
                fail("schema", "automaton: " + gpath + ".clock is malformed (note: yc does not exist)");
            auto ivl = Interval::parse(need(g, "interval", gpath).get<std::string>());
            if (!ivl) fail("schema", "automaton: " + gpath + ".interval is malformed");
            t.guard.push_back({*clock, *ivl});
        }
        if (t.kind == EcnaTransition::Kind::Push) {
            const auto& s = need(j, "stack_sym", path);
            if (!s.is_string() || !gidx.count(s.get<std::string>()))
                fail("schema", "automaton: " + path + ".stack_sym must name a stack symbol");
            t.stack_sym = gidx[s.get<std::string>()];
        } else if (t.kind == EcnaTransition::Kind::Pop) {
            const auto& s = need(j, "stack_sym", path);
            if (s.is_null())
                t.stack_sym = std::nullopt;  // bottom
            else if (s.is_string() && gidx.count(s.get<std::string>()))
                t.stack_sym = gidx[s.get<std::string>()];
            else
                fail("schema", "automaton: " + path + ".stack_sym must be null or a stack symbol");
        }
        a.transitions.push_back(std::move(t));
    }
    return a;
}

}  // namespace ecnl
