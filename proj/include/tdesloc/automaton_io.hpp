// automaton_io.hpp -- text serialization of automata. parse(serialize(a)) is
// structurally identical to a; all output is byte-deterministic.

#pragma once

#include <sstream>

#include "tdesloc/automaton.hpp"

namespace tdesloc {

inline std::string serialize_automaton(const TimedAutomaton& aut, const std::string& name) {
    std::ostringstream os;
    os << "automaton " << name << "\n";
    os << "alphabet";
    for (const auto& ev : aut.alphabet().names()) os << " " << ev;
    os << "\n";
    os << "states " << aut.state_count() << "\n";
    if (!aut.empty()) {
        os << "initial " << aut.initial() << "\n";
        os << "marked";
        for (StateId s = 0; s < aut.state_count(); ++s)
            if (aut.marked(s)) os << " " << s;
        os << "\n";
        for (StateId s = 0; s < aut.state_count(); ++s)
            for (const auto& [e, dst] : aut.out(s))
                os << "trans " << s << " " << aut.alphabet().name(e) << " " << dst << "\n";
        if (aut.has_labels())
            for (StateId s = 0; s < aut.state_count(); ++s)
                if (!aut.label(s).empty()) os << "label " << s << " " << aut.label(s) << "\n";
    }
    os << "end\n";
    return os.str();
}

struct NamedAutomaton {
    std::string name;
    TimedAutomaton automaton;
};

inline NamedAutomaton parse_automaton(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    std::size_t lineno = 0;

    NamedAutomaton out;
    std::optional<Alphabet> alphabet;
    std::optional<std::uint32_t> num_states;
    std::optional<StateId> initial;
    std::vector<StateId> marked;
    std::vector<std::tuple<StateId, std::string, StateId>> transitions;
    std::vector<std::pair<StateId, std::string>> labels;
    bool saw_header = false, saw_end = false;

    auto fail = [&](const std::string& what) -> void {
        throw Error("automaton file, line " + std::to_string(lineno) + ": " + what);
    };

    while (std::getline(is, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw)) continue;
        if (saw_end) fail("content after 'end'");
        if (kw == "automaton") {
            if (!(ls >> out.name)) fail("missing name");
            saw_header = true;
        } else if (kw == "alphabet") {
            std::vector<std::string> names;
            std::string ev;
            while (ls >> ev) names.push_back(ev);
            alphabet = Alphabet(std::move(names));
        } else if (kw == "states") {
            std::uint32_t n;
            if (!(ls >> n)) fail("bad state count");
            num_states = n;
        } else if (kw == "initial") {
            StateId s;
            if (!(ls >> s)) fail("bad initial state");
            initial = s;
        } else if (kw == "marked") {
            StateId s;
            while (ls >> s) marked.push_back(s);
        } else if (kw == "trans") {
            StateId src, dst;
            std::string ev;
            if (!(ls >> src >> ev >> dst)) fail("bad transition");
            transitions.emplace_back(src, ev, dst);
        } else if (kw == "label") {
            StateId s;
            if (!(ls >> s)) fail("bad label");
            std::string rest;
            std::getline(ls, rest);
            if (!rest.empty() && rest.front() == ' ') rest.erase(0, 1);
            labels.emplace_back(s, rest);
        } else if (kw == "end") {
            saw_end = true;
        } else {
            fail("unknown directive '" + kw + "'");
        }
    }
    if (!saw_header) throw Error("automaton file: missing 'automaton' header");
    if (!saw_end) throw Error("automaton file: missing 'end'");
    if (!alphabet || !num_states) throw Error("automaton file: missing alphabet or states");

    if (*num_states == 0) {
        out.automaton = TimedAutomaton::empty_automaton(*alphabet);
        return out;
    }
    if (!initial) throw Error("automaton file: missing initial state");
    TimedAutomaton aut(*alphabet, *num_states, *initial);
    for (StateId s : marked) aut.set_marked(s, true);
    for (const auto& [src, ev, dst] : transitions)
        aut.add_transition(src, aut.alphabet().index_of(ev), dst);
    for (const auto& [s, l] : labels) aut.set_label(s, l);
    out.automaton = std::move(aut);
    return out;
}

}  // namespace tdesloc
