// automaton.hpp -- deterministic finite automata over named event alphabets.
//
// The event set of every automaton may contain the distinguished event
// "tick" (the global clock); automata whose alphabet contains tick but whose
// states carry no timer information are generalized TDES and are handled
// uniformly here.

#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tdesloc {

using StateId = std::uint32_t;
using EventIdx = std::uint32_t;

inline constexpr std::string_view kTick = "tick";

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Finite ordered set of event names. Order is lexicographic and stable, so
// every iteration over events is deterministic. Indices are relative to one
// Alphabet instance; automata with different alphabets are aligned by name.
class Alphabet {
public:
    Alphabet() = default;

    explicit Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
        std::sort(names_.begin(), names_.end());
        for (std::size_t i = 0; i < names_.size(); ++i) {
            if (names_[i].empty())
                throw Error("alphabet: empty event name");
            if (i > 0 && names_[i] == names_[i - 1])
                throw Error("alphabet: duplicate event name '" + names_[i] + "'");
        }
    }

    std::size_t size() const { return names_.size(); }
    bool empty() const { return names_.empty(); }

    const std::string& name(EventIdx i) const { return names_.at(i); }

    std::optional<EventIdx> index(std::string_view n) const {
        auto it = std::lower_bound(names_.begin(), names_.end(), n);
        if (it == names_.end() || *it != n) return std::nullopt;
        return static_cast<EventIdx>(it - names_.begin());
    }

    EventIdx index_of(std::string_view n) const {
        auto i = index(n);
        if (!i) throw Error("alphabet: unknown event '" + std::string(n) + "'");
        return *i;
    }

    bool contains(std::string_view n) const { return index(n).has_value(); }

    bool is_subset_of(const Alphabet& other) const {
        return std::includes(other.names_.begin(), other.names_.end(),
                             names_.begin(), names_.end());
    }

    static Alphabet unite(std::span<const Alphabet> parts) {
        std::vector<std::string> all;
        for (const auto& a : parts)
            all.insert(all.end(), a.names_.begin(), a.names_.end());
        std::sort(all.begin(), all.end());
        all.erase(std::unique(all.begin(), all.end()), all.end());
        return Alphabet(std::move(all));
    }

    const std::vector<std::string>& names() const { return names_; }

    bool operator==(const Alphabet&) const = default;

private:
    std::vector<std::string> names_;  // sorted, unique
};

// Deterministic automaton G = (Q, Sigma, delta, q0, Qm). States are dense
// integer indices. The zero-state automaton is the canonical representation
// of the empty language; it has no initial state.
//
// Values are immutable once built (the mutators below are for construction
// only); all operations on them are pure functions.
class TimedAutomaton {
public:
    TimedAutomaton() = default;

    TimedAutomaton(Alphabet alphabet, std::uint32_t num_states, StateId initial)
        : alphabet_(std::move(alphabet)),
          num_states_(num_states),
          initial_(initial),
          out_(num_states),
          marked_(num_states, false) {
        if (num_states == 0)
            throw Error("automaton: zero states; use the default constructor for the empty automaton");
        if (initial >= num_states)
            throw Error("automaton: initial state out of range");
    }

    static TimedAutomaton empty_automaton(Alphabet alphabet) {
        TimedAutomaton a;
        a.alphabet_ = std::move(alphabet);
        return a;
    }

    bool empty() const { return num_states_ == 0; }
    std::uint32_t state_count() const { return num_states_; }

    std::size_t transition_count() const {
        std::size_t n = 0;
        for (const auto& row : out_) n += row.size();
        return n;
    }

    const Alphabet& alphabet() const { return alphabet_; }

    StateId initial() const {
        if (empty()) throw Error("automaton: empty automaton has no initial state");
        return initial_;
    }

    bool marked(StateId s) const { return marked_.at(s); }

    void set_marked(StateId s, bool m) { marked_.at(s) = m; }

    std::size_t marked_count() const {
        return static_cast<std::size_t>(std::count(marked_.begin(), marked_.end(), true));
    }

    void add_transition(StateId src, EventIdx event, StateId dst) {
        check_state(src);
        check_state(dst);
        if (event >= alphabet_.size())
            throw Error("automaton: event index out of range");
        auto& row = out_[src];
        auto it = std::lower_bound(row.begin(), row.end(), event,
                                   [](const auto& p, EventIdx e) { return p.first < e; });
        if (it != row.end() && it->first == event)
            throw Error("automaton: duplicate transition on '" + alphabet_.name(event) +
                        "' from state " + std::to_string(src) + " (determinism)");
        row.insert(it, {event, dst});
    }

    std::optional<StateId> successor(StateId src, EventIdx event) const {
        check_state(src);
        const auto& row = out_[src];
        auto it = std::lower_bound(row.begin(), row.end(), event,
                                   [](const auto& p, EventIdx e) { return p.first < e; });
        if (it == row.end() || it->first != event) return std::nullopt;
        return it->second;
    }

    bool defined(StateId src, EventIdx event) const { return successor(src, event).has_value(); }

    // Out-transitions of a state, sorted by event index.
    const std::vector<std::pair<EventIdx, StateId>>& out(StateId s) const {
        check_state(s);
        return out_[s];
    }

    // Runs the automaton on a string of event names. Returns the reached
    // state, or nullopt if the string leaves the closed behavior.
    std::optional<StateId> walk(std::span<const std::string> word) const {
        if (empty()) return std::nullopt;
        StateId s = initial_;
        for (const auto& ev : word) {
            auto e = alphabet_.index(ev);
            if (!e) return std::nullopt;
            auto nxt = successor(s, *e);
            if (!nxt) return std::nullopt;
            s = *nxt;
        }
        return s;
    }

    bool accepts(std::span<const std::string> word) const {
        auto s = walk(word);
        return s && marked(*s);
    }

    void set_label(StateId s, std::string label) {
        check_state(s);
        if (labels_.empty()) labels_.resize(num_states_);
        labels_[s] = std::move(label);
    }

    bool has_labels() const { return !labels_.empty(); }

    std::string label(StateId s) const {
        check_state(s);
        return labels_.empty() ? std::string() : labels_[s];
    }

private:
    void check_state(StateId s) const {
        if (s >= num_states_) throw Error("automaton: state index out of range");
    }

    Alphabet alphabet_;
    std::uint32_t num_states_ = 0;
    StateId initial_ = 0;
    std::vector<std::vector<std::pair<EventIdx, StateId>>> out_;
    std::vector<bool> marked_;
    std::vector<std::string> labels_;  // empty, or one per state
};

// Events with a defined transition at the given state (Elig at that state);
// by determinism this equals the eligible set of any string reaching it.
inline std::vector<EventIdx> eligible(const TimedAutomaton& aut, StateId state) {
    std::vector<EventIdx> evs;
    for (const auto& [e, dst] : aut.out(state)) evs.push_back(e);
    return evs;
}

inline std::vector<std::string> eligible_names(const TimedAutomaton& aut, StateId state) {
    std::vector<std::string> names;
    for (const auto& [e, dst] : aut.out(state)) names.push_back(aut.alphabet().name(e));
    return names;
}

}  // namespace tdesloc
