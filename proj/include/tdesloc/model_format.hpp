// model_format.hpp -- line-oriented text format for plant agents and
// specification automata.
//
//   # comment
//   agent NAME
//     activities idle busy ...
//     initial idle
//     marked idle ...
//     event NAME lower N upper (N|inf) [prohibitible] [forcible]
//     trans SRC EVENT DST
//   end
//
//   spec NAME
//     states N                  (states are 0 .. N-1)
//     initial K
//     marked all | K1 K2 ...
//     trans I EVENT J
//     selfloop (all | I1 I2 | I..J) : EVENT...
//   end
//
// Spec blocks declare plain automata; the selfloop directive encodes the
// "irrelevant events loop on these states" convention compactly.

#pragma once

#include <charconv>
#include <sstream>

#include "tdesloc/activity.hpp"
#include "tdesloc/automaton.hpp"

namespace tdesloc {

struct SpecAutomaton {
    std::string name;
    TimedAutomaton automaton;
};

struct ParsedModel {
    std::vector<ActivityModel> agents;
    std::vector<SpecAutomaton> specs;
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

namespace detail {

inline std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

inline std::optional<std::uint32_t> parse_u32(const std::string& s) {
    std::uint32_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
    return v;
}

// Raw spec block under construction; converted to a TimedAutomaton once the
// state count and all referenced events are known.
struct SpecBuilder {
    std::string name;
    std::uint32_t num_states = 0;
    std::optional<std::uint32_t> initial;
    std::vector<std::uint32_t> marked;
    bool marked_all = false;
    std::vector<std::tuple<std::uint32_t, std::string, std::uint32_t>> transitions;
    std::vector<std::pair<std::vector<std::uint32_t>, std::string>> selfloops;
};

inline std::vector<std::uint32_t> parse_state_list(const std::vector<std::string>& toks,
                                                   std::size_t from, std::size_t to,
                                                   std::uint32_t num_states, std::size_t lineno) {
    std::vector<std::uint32_t> states;
    for (std::size_t i = from; i < to; ++i) {
        const std::string& t = toks[i];
        if (t == "all") {
            for (std::uint32_t s = 0; s < num_states; ++s) states.push_back(s);
            continue;
        }
        auto dots = t.find("..");
        if (dots != std::string::npos) {
            auto lo = parse_u32(t.substr(0, dots));
            auto hi = parse_u32(t.substr(dots + 2));
            if (!lo || !hi || *lo > *hi)
                throw ParseError(lineno, "bad state range '" + t + "'");
            for (std::uint32_t s = *lo; s <= *hi; ++s) states.push_back(s);
            continue;
        }
        auto v = parse_u32(t);
        if (!v) throw ParseError(lineno, "bad state index '" + t + "'");
        states.push_back(*v);
    }
    for (auto s : states)
        if (s >= num_states)
            throw ParseError(lineno, "state " + std::to_string(s) + " out of range");
    return states;
}

inline TimedAutomaton finish_spec(const SpecBuilder& b, std::size_t lineno) {
    if (b.num_states == 0) throw ParseError(lineno, "spec '" + b.name + "': no states");
    if (!b.initial) throw ParseError(lineno, "spec '" + b.name + "': missing initial");

    std::vector<std::string> events;
    for (const auto& [src, ev, dst] : b.transitions) events.push_back(ev);
    for (const auto& [states, ev] : b.selfloops) events.push_back(ev);
    std::sort(events.begin(), events.end());
    events.erase(std::unique(events.begin(), events.end()), events.end());
    Alphabet alphabet(std::move(events));

    TimedAutomaton aut(alphabet, b.num_states, *b.initial);
    if (b.marked_all)
        for (StateId s = 0; s < b.num_states; ++s) aut.set_marked(s, true);
    for (auto s : b.marked) aut.set_marked(s, true);
    for (const auto& [src, ev, dst] : b.transitions)
        aut.add_transition(src, alphabet.index_of(ev), dst);
    for (const auto& [states, ev] : b.selfloops)
        for (auto s : states) aut.add_transition(s, alphabet.index_of(ev), s);
    return aut;
}

}  // namespace detail

inline ParsedModel parse_model(const std::string& text) {
    using detail::parse_u32;
    ParsedModel result;

    enum class Section { kTop, kAgent, kSpec };
    Section section = Section::kTop;
    ActivityModel agent;
    std::optional<std::string> agent_initial;
    std::vector<std::string> agent_marked;
    detail::SpecBuilder spec;

    std::istringstream is(text);
    std::string line;
    std::size_t lineno = 0;

    auto finish_agent = [&](std::size_t at) {
        if (!agent_initial) throw ParseError(at, "agent '" + agent.name + "': missing initial");
        auto init = agent.activity_index(*agent_initial);
        if (!init) throw ParseError(at, "agent '" + agent.name + "': unknown initial activity '" +
                                            *agent_initial + "'");
        agent.initial = *init;
        agent.marked.assign(agent.activities.size(), false);
        for (const auto& m : agent_marked) {
            auto idx = agent.activity_index(m);
            if (!idx) throw ParseError(at, "agent '" + agent.name + "': unknown marked activity '" +
                                               m + "'");
            agent.marked[*idx] = true;
        }
        try {
            agent.validate();
        } catch (const Error& err) {
            throw ParseError(at, err.what());
        }
        result.agents.push_back(std::move(agent));
        agent = ActivityModel{};
        agent_initial.reset();
        agent_marked.clear();
    };

    while (std::getline(is, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto toks = detail::split_ws(line);
        if (toks.empty()) continue;
        const std::string& kw = toks[0];

        if (section == Section::kTop) {
            if (kw == "agent" && toks.size() == 2) {
                agent.name = toks[1];
                section = Section::kAgent;
            } else if (kw == "spec" && toks.size() == 2) {
                spec = detail::SpecBuilder{};
                spec.name = toks[1];
                section = Section::kSpec;
            } else {
                throw ParseError(lineno, "expected 'agent NAME' or 'spec NAME', got '" + kw + "'");
            }
            continue;
        }

        if (kw == "end" && toks.size() == 1) {
            if (section == Section::kAgent)
                finish_agent(lineno);
            else
                result.specs.push_back({spec.name, detail::finish_spec(spec, lineno)});
            section = Section::kTop;
            continue;
        }

        if (section == Section::kAgent) {
            if (kw == "activities" && toks.size() >= 2) {
                agent.activities.assign(toks.begin() + 1, toks.end());
            } else if (kw == "initial" && toks.size() == 2) {
                agent_initial = toks[1];
            } else if (kw == "marked" && toks.size() >= 2) {
                agent_marked.assign(toks.begin() + 1, toks.end());
            } else if (kw == "event" && toks.size() >= 6) {
                EventAttr attr;
                if (toks[2] != "lower" || toks[4] != "upper")
                    throw ParseError(lineno, "event syntax: event NAME lower N upper N|inf ...");
                auto lo = parse_u32(toks[3]);
                if (!lo) throw ParseError(lineno, "bad lower bound '" + toks[3] + "'");
                attr.bounds.lower = *lo;
                if (toks[5] == "inf") {
                    attr.bounds.upper = kInfinity;
                } else {
                    auto hi = parse_u32(toks[5]);
                    if (!hi) throw ParseError(lineno, "bad upper bound '" + toks[5] + "'");
                    attr.bounds.upper = *hi;
                }
                for (std::size_t i = 6; i < toks.size(); ++i) {
                    if (toks[i] == "prohibitible")
                        attr.prohibitible = true;
                    else if (toks[i] == "forcible")
                        attr.forcible = true;
                    else
                        throw ParseError(lineno, "unknown event flag '" + toks[i] + "'");
                }
                if (toks[1] == kTick) throw ParseError(lineno, "'tick' cannot be declared");
                if (!agent.events.emplace(toks[1], attr).second)
                    throw ParseError(lineno, "duplicate event '" + toks[1] + "'");
            } else if (kw == "trans" && toks.size() == 4) {
                auto src = agent.activity_index(toks[1]);
                auto dst = agent.activity_index(toks[3]);
                if (!src) throw ParseError(lineno, "unknown activity '" + toks[1] + "'");
                if (!dst) throw ParseError(lineno, "unknown activity '" + toks[3] + "'");
                if (!agent.transitions.emplace(std::pair{*src, toks[2]}, *dst).second)
                    throw ParseError(lineno, "duplicate transition (determinism)");
            } else {
                throw ParseError(lineno, "unknown agent directive '" + kw + "'");
            }
            continue;
        }

        // spec section
        if (kw == "states" && toks.size() == 2) {
            auto n = parse_u32(toks[1]);
            if (!n || *n == 0) throw ParseError(lineno, "bad state count '" + toks[1] + "'");
            spec.num_states = *n;
        } else if (kw == "initial" && toks.size() == 2) {
            auto v = parse_u32(toks[1]);
            if (!v || *v >= spec.num_states) throw ParseError(lineno, "bad initial state");
            spec.initial = *v;
        } else if (kw == "marked" && toks.size() >= 2) {
            if (toks.size() == 2 && toks[1] == "all")
                spec.marked_all = true;
            else
                spec.marked = detail::parse_state_list(toks, 1, toks.size(), spec.num_states, lineno);
        } else if (kw == "trans" && toks.size() == 4) {
            auto src = parse_u32(toks[1]);
            auto dst = parse_u32(toks[3]);
            if (!src || *src >= spec.num_states) throw ParseError(lineno, "bad source state");
            if (!dst || *dst >= spec.num_states) throw ParseError(lineno, "bad target state");
            spec.transitions.emplace_back(*src, toks[2], *dst);
        } else if (kw == "selfloop" && toks.size() >= 4) {
            auto colon = std::find(toks.begin(), toks.end(), ":");
            if (colon == toks.end() || colon == toks.begin() + 1 || colon + 1 == toks.end())
                throw ParseError(lineno, "selfloop syntax: selfloop STATES : EVENTS");
            std::size_t colon_at = static_cast<std::size_t>(colon - toks.begin());
            auto states =
                detail::parse_state_list(toks, 1, colon_at, spec.num_states, lineno);
            for (std::size_t i = colon_at + 1; i < toks.size(); ++i)
                spec.selfloops.emplace_back(states, toks[i]);
        } else {
            throw ParseError(lineno, "unknown spec directive '" + kw + "'");
        }
    }

    if (section != Section::kTop) throw ParseError(lineno, "unterminated block (missing 'end')");
    if (result.agents.empty()) throw ParseError(lineno, "no agent block");
    return result;
}

}  // namespace tdesloc
