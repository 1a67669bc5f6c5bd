// ops.hpp -- language-level algebra on deterministic automata: reachability,
// trim, synchronous product, natural projection, language comparison.

#pragma once

#include <deque>
#include <map>
#include <set>

#include "tdesloc/automaton.hpp"

namespace tdesloc {

namespace detail {

// Restriction of an automaton to a subset of its states, renumbered in
// breadth-first discovery order from the initial state. States outside the
// mask and anything reachable only through them are dropped. Returns the
// empty automaton when the initial state is excluded.
inline TimedAutomaton restrict_bfs(const TimedAutomaton& aut, const std::vector<bool>& keep) {
    if (aut.empty() || !keep[aut.initial()])
        return TimedAutomaton::empty_automaton(aut.alphabet());

    std::vector<StateId> order;
    std::vector<StateId> remap(aut.state_count(), UINT32_MAX);
    std::deque<StateId> queue;
    remap[aut.initial()] = 0;
    order.push_back(aut.initial());
    queue.push_back(aut.initial());
    while (!queue.empty()) {
        StateId s = queue.front();
        queue.pop_front();
        for (const auto& [e, dst] : aut.out(s)) {
            if (!keep[dst] || remap[dst] != UINT32_MAX) continue;
            remap[dst] = static_cast<StateId>(order.size());
            order.push_back(dst);
            queue.push_back(dst);
        }
    }

    TimedAutomaton result(aut.alphabet(), static_cast<std::uint32_t>(order.size()), 0);
    for (StateId ns = 0; ns < order.size(); ++ns) {
        StateId os = order[ns];
        result.set_marked(ns, aut.marked(os));
        if (aut.has_labels()) result.set_label(ns, aut.label(os));
        for (const auto& [e, dst] : aut.out(os))
            if (keep[dst]) result.add_transition(ns, e, remap[dst]);
    }
    return result;
}

inline std::vector<bool> reachable_mask(const TimedAutomaton& aut) {
    std::vector<bool> seen(aut.state_count(), false);
    if (aut.empty()) return seen;
    std::deque<StateId> queue{aut.initial()};
    seen[aut.initial()] = true;
    while (!queue.empty()) {
        StateId s = queue.front();
        queue.pop_front();
        for (const auto& [e, dst] : aut.out(s))
            if (!seen[dst]) {
                seen[dst] = true;
                queue.push_back(dst);
            }
    }
    return seen;
}

inline std::vector<bool> coreachable_mask(const TimedAutomaton& aut) {
    // Backward closure from the marked states.
    std::vector<std::vector<StateId>> pred(aut.state_count());
    for (StateId s = 0; s < aut.state_count(); ++s)
        for (const auto& [e, dst] : aut.out(s)) pred[dst].push_back(s);
    std::vector<bool> seen(aut.state_count(), false);
    std::deque<StateId> queue;
    for (StateId s = 0; s < aut.state_count(); ++s)
        if (aut.marked(s)) {
            seen[s] = true;
            queue.push_back(s);
        }
    while (!queue.empty()) {
        StateId s = queue.front();
        queue.pop_front();
        for (StateId p : pred[s])
            if (!seen[p]) {
                seen[p] = true;
                queue.push_back(p);
            }
    }
    return seen;
}

}  // namespace detail

// Restriction to the states reachable from the initial state. Languages are
// unchanged; state numbering becomes canonical breadth-first order.
inline TimedAutomaton reachable(const TimedAutomaton& aut) {
    if (aut.empty()) return aut;
    return detail::restrict_bfs(aut, detail::reachable_mask(aut));
}

// Restriction to states both reachable and coreachable. The result is
// nonblocking: closure(Lm) = L.
inline TimedAutomaton trim(const TimedAutomaton& aut) {
    if (aut.empty()) return aut;
    return detail::restrict_bfs(aut, detail::coreachable_mask(aut));
}

inline bool is_nonblocking(const TimedAutomaton& aut) {
    auto reach = detail::reachable_mask(aut);
    auto coreach = detail::coreachable_mask(aut);
    for (StateId s = 0; s < aut.state_count(); ++s)
        if (reach[s] && !coreach[s]) return false;
    return true;
}

// One marked state with a selfloop for every event: the identity element of
// the synchronous product over the given alphabet.
inline TimedAutomaton universal_automaton(const Alphabet& alphabet) {
    TimedAutomaton u(alphabet, 1, 0);
    u.set_marked(0, true);
    for (EventIdx e = 0; e < alphabet.size(); ++e) u.add_transition(0, e, 0);
    return u;
}

// Synchronous product over the union alphabet: a shared event fires iff every
// component whose alphabet contains it can fire it; private events interleave.
// L(result) = intersection of the inverse projections of the component
// languages, and likewise for the marked languages. Result is reachable with
// canonical breadth-first numbering.
inline TimedAutomaton sync_product(std::span<const TimedAutomaton> auts) {
    if (auts.empty()) throw Error("sync_product: empty input list");

    std::vector<Alphabet> alphas;
    for (const auto& a : auts) alphas.push_back(a.alphabet());
    Alphabet uni = Alphabet::unite(alphas);

    for (const auto& a : auts)
        if (a.empty()) return TimedAutomaton::empty_automaton(uni);

    const std::size_t k = auts.size();
    // Per component: union event index -> local event index (or none).
    std::vector<std::vector<std::optional<EventIdx>>> local(k);
    for (std::size_t i = 0; i < k; ++i) {
        local[i].resize(uni.size());
        for (EventIdx e = 0; e < uni.size(); ++e)
            local[i][e] = auts[i].alphabet().index(uni.name(e));
    }

    std::map<std::vector<StateId>, StateId> ids;
    std::vector<std::vector<StateId>> tuples;
    std::deque<StateId> queue;

    std::vector<StateId> init(k);
    for (std::size_t i = 0; i < k; ++i) init[i] = auts[i].initial();
    ids.emplace(init, 0);
    tuples.push_back(init);
    queue.push_back(0);

    std::vector<std::tuple<StateId, EventIdx, StateId>> transitions;
    while (!queue.empty()) {
        StateId sid = queue.front();
        queue.pop_front();
        std::vector<StateId> tup = tuples[sid];
        for (EventIdx e = 0; e < uni.size(); ++e) {
            std::vector<StateId> nxt(k);
            bool enabled = true;
            for (std::size_t i = 0; i < k && enabled; ++i) {
                if (!local[i][e]) {
                    nxt[i] = tup[i];  // private elsewhere: component stays put
                    continue;
                }
                auto dst = auts[i].successor(tup[i], *local[i][e]);
                if (!dst)
                    enabled = false;
                else
                    nxt[i] = *dst;
            }
            if (!enabled) continue;
            auto [it, inserted] = ids.emplace(nxt, static_cast<StateId>(tuples.size()));
            if (inserted) {
                tuples.push_back(nxt);
                queue.push_back(it->second);
            }
            transitions.emplace_back(sid, e, it->second);
        }
    }

    TimedAutomaton result(uni, static_cast<std::uint32_t>(tuples.size()), 0);
    for (StateId s = 0; s < tuples.size(); ++s) {
        bool m = true;
        for (std::size_t i = 0; i < k; ++i) m = m && auts[i].marked(tuples[s][i]);
        result.set_marked(s, m);
    }
    for (const auto& [src, e, dst] : transitions) result.add_transition(src, e, dst);
    return result;
}

inline TimedAutomaton sync_product(const TimedAutomaton& a, const TimedAutomaton& b) {
    TimedAutomaton arr[2] = {a, b};
    return sync_product(std::span<const TimedAutomaton>(arr, 2));
}

// Natural projection onto a subalphabet, by subset construction (erasing an
// event can introduce nondeterminism, which the construction removes again).
// L(result) = P(L(aut)), Lm(result) = P(Lm(aut)). State labels of the result
// are the canonical sorted subsets of the argument's state indices.
inline TimedAutomaton natural_projection(const TimedAutomaton& aut, const Alphabet& sub) {
    if (!sub.is_subset_of(aut.alphabet()))
        throw Error("natural_projection: projection alphabet is not a subset");
    if (aut.empty()) return TimedAutomaton::empty_automaton(sub);

    std::vector<bool> erased(aut.alphabet().size(), true);
    std::vector<EventIdx> sub_to_full(sub.size());
    for (EventIdx e = 0; e < sub.size(); ++e) {
        EventIdx f = aut.alphabet().index_of(sub.name(e));
        erased[f] = false;
        sub_to_full[e] = f;
    }

    auto closure = [&](std::set<StateId> s) {
        std::deque<StateId> queue(s.begin(), s.end());
        while (!queue.empty()) {
            StateId q = queue.front();
            queue.pop_front();
            for (const auto& [e, dst] : aut.out(q))
                if (erased[e] && s.insert(dst).second) queue.push_back(dst);
        }
        return s;
    };

    std::map<std::set<StateId>, StateId> ids;
    std::vector<std::set<StateId>> subsets;
    std::deque<StateId> queue;

    std::set<StateId> init = closure({aut.initial()});
    ids.emplace(init, 0);
    subsets.push_back(init);
    queue.push_back(0);

    std::vector<std::tuple<StateId, EventIdx, StateId>> transitions;
    while (!queue.empty()) {
        StateId sid = queue.front();
        queue.pop_front();
        std::set<StateId> cur = subsets[sid];
        for (EventIdx e = 0; e < sub.size(); ++e) {
            std::set<StateId> img;
            for (StateId q : cur)
                if (auto dst = aut.successor(q, sub_to_full[e])) img.insert(*dst);
            if (img.empty()) continue;
            img = closure(std::move(img));
            auto [it, inserted] = ids.emplace(img, static_cast<StateId>(subsets.size()));
            if (inserted) {
                subsets.push_back(img);
                queue.push_back(it->second);
            }
            transitions.emplace_back(sid, e, it->second);
        }
    }

    TimedAutomaton result(sub, static_cast<std::uint32_t>(subsets.size()), 0);
    for (StateId s = 0; s < subsets.size(); ++s) {
        bool m = false;
        std::string label = "{";
        bool first = true;
        for (StateId q : subsets[s]) {
            m = m || aut.marked(q);
            if (!first) label += ",";
            label += std::to_string(q);
            first = false;
        }
        label += "}";
        result.set_marked(s, m);
        result.set_label(s, label);
    }
    for (const auto& [src, e, dst] : transitions) result.add_transition(src, e, dst);
    return result;
}

struct SubsetReport {
    bool holds = true;
    // Shortest witness when the inclusion fails: a string in the left
    // language (closed or marked) that the right side lacks.
    std::vector<std::string> witness;
};

// One-sided language inclusion: L(a) subset of L(b) and Lm(a) subset of
// Lm(b), by synchronized breadth-first traversal of the pair graph (b is
// implicitly completed with a dead state). Requires equal alphabets.
inline SubsetReport language_subset(const TimedAutomaton& a, const TimedAutomaton& b) {
    if (a.alphabet() != b.alphabet())
        throw Error("language_subset: alphabet mismatch");
    if (a.empty()) return {};

    constexpr StateId kDead = UINT32_MAX;
    auto rebuild_path = [&](const std::map<std::pair<StateId, StateId>,
                                           std::tuple<StateId, StateId, EventIdx>>& parent,
                            std::pair<StateId, StateId> at) {
        std::vector<std::string> path;
        while (true) {
            auto it = parent.find(at);
            if (it == parent.end()) break;
            auto [ps, pb, e] = it->second;
            path.push_back(a.alphabet().name(e));
            at = {ps, pb};
        }
        std::reverse(path.begin(), path.end());
        return path;
    };

    std::map<std::pair<StateId, StateId>, std::tuple<StateId, StateId, EventIdx>> parent;
    std::set<std::pair<StateId, StateId>> seen;
    std::deque<std::pair<StateId, StateId>> queue;
    std::pair<StateId, StateId> start{a.initial(), b.empty() ? kDead : b.initial()};
    seen.insert(start);
    queue.push_back(start);

    while (!queue.empty()) {
        auto [sa, sb] = queue.front();
        queue.pop_front();
        if (a.marked(sa) && (sb == kDead || !b.marked(sb))) {
            SubsetReport r;
            r.holds = false;
            r.witness = rebuild_path(parent, {sa, sb});
            return r;
        }
        for (const auto& [e, da] : a.out(sa)) {
            StateId db = kDead;
            if (sb != kDead)
                if (auto d = b.successor(sb, e)) db = *d;
            if (db == kDead) {
                SubsetReport r;
                r.holds = false;
                r.witness = rebuild_path(parent, {sa, sb});
                r.witness.push_back(a.alphabet().name(e));
                return r;
            }
            if (seen.insert({da, db}).second) {
                parent[{da, db}] = {sa, sb, e};
                queue.push_back({da, db});
            }
        }
    }
    return {};
}

inline bool language_equal(const TimedAutomaton& a, const TimedAutomaton& b) {
    return language_subset(a, b).holds && language_subset(b, a).holds;
}

}  // namespace tdesloc
