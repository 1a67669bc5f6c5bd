// tdes.hpp -- explicit timed transition graph construction: activity model
// plus countdown timers to a reachable automaton over Sigma_act + {tick}.

#pragma once

#include <deque>
#include <map>
#include <numeric>

#include "tdesloc/activity.hpp"
#include "tdesloc/ops.hpp"

namespace tdesloc {

namespace detail {

struct TimedState {
    std::uint32_t activity;
    std::vector<std::uint32_t> timers;  // one per event, in alphabet order

    auto operator<=>(const TimedState&) const = default;
};

}  // namespace detail

// Builds the timed transition graph of one activity model. States are
// (activity, timer vector) pairs; the label of each state is the canonical
// string "activity|t1,t2,..." with timers in event-name order.
//
// Transition rules:
//   - an activity event sigma is defined at (a, t) iff delta_act(a, sigma) is
//     defined and its timer allows it: 0 <= t <= u-l for prospective events,
//     t = 0 for remote ones; firing resets t_sigma to its default, carries
//     t_alpha for events defined both before and after, and resets the rest;
//   - tick is defined iff no enabled prospective event has timer zero; it
//     leaves the activity unchanged, counts enabled timers down (remote
//     timers stop at zero) and holds disabled timers at their defaults.
inline TimedAutomaton build_tdes(const ActivityModel& model) {
    model.validate();

    std::vector<std::string> event_names;
    for (const auto& [ev, attr] : model.events) event_names.push_back(ev);
    std::vector<std::string> all = event_names;
    all.emplace_back(kTick);
    Alphabet alphabet((std::vector<std::string>(all)));

    const std::size_t n_ev = event_names.size();
    std::vector<EventAttr> attr(n_ev);
    for (std::size_t i = 0; i < n_ev; ++i) attr[i] = model.events.at(event_names[i]);

    auto enabled = [&](std::uint32_t act, std::size_t ei) {
        return model.step(act, event_names[ei]).has_value();
    };

    detail::TimedState init;
    init.activity = model.initial;
    init.timers.resize(n_ev);
    for (std::size_t i = 0; i < n_ev; ++i) init.timers[i] = default_timer(attr[i].bounds);

    std::map<detail::TimedState, StateId> ids;
    std::vector<detail::TimedState> states;
    std::deque<StateId> queue;
    ids.emplace(init, 0);
    states.push_back(init);
    queue.push_back(0);

    std::vector<std::tuple<StateId, EventIdx, StateId>> transitions;
    auto intern = [&](const detail::TimedState& s) {
        auto [it, inserted] = ids.emplace(s, static_cast<StateId>(states.size()));
        if (inserted) {
            states.push_back(s);
            queue.push_back(it->second);
        }
        return it->second;
    };

    while (!queue.empty()) {
        StateId sid = queue.front();
        queue.pop_front();
        detail::TimedState cur = states[sid];

        // activity events
        for (std::size_t i = 0; i < n_ev; ++i) {
            auto nxt_act = model.step(cur.activity, event_names[i]);
            if (!nxt_act) continue;
            const TimeBounds& b = attr[i].bounds;
            bool timer_ok = b.prospective() ? cur.timers[i] <= b.upper - b.lower
                                            : cur.timers[i] == 0;
            if (!timer_ok) continue;

            detail::TimedState nxt;
            nxt.activity = *nxt_act;
            nxt.timers.resize(n_ev);
            for (std::size_t j = 0; j < n_ev; ++j) {
                if (j == i) {
                    nxt.timers[j] = default_timer(attr[j].bounds);
                } else if (enabled(cur.activity, j) && enabled(nxt.activity, j)) {
                    nxt.timers[j] = cur.timers[j];  // carries over
                } else {
                    nxt.timers[j] = default_timer(attr[j].bounds);
                }
            }
            transitions.emplace_back(sid, alphabet.index_of(event_names[i]), intern(nxt));
        }

        // tick
        bool tick_ok = true;
        for (std::size_t i = 0; i < n_ev && tick_ok; ++i)
            if (attr[i].bounds.prospective() && enabled(cur.activity, i) && cur.timers[i] == 0)
                tick_ok = false;
        if (tick_ok) {
            detail::TimedState nxt;
            nxt.activity = cur.activity;
            nxt.timers.resize(n_ev);
            for (std::size_t j = 0; j < n_ev; ++j) {
                if (!enabled(cur.activity, j))
                    nxt.timers[j] = default_timer(attr[j].bounds);
                else if (attr[j].bounds.prospective())
                    nxt.timers[j] = cur.timers[j] - 1;
                else
                    nxt.timers[j] = cur.timers[j] == 0 ? 0 : cur.timers[j] - 1;
            }
            transitions.emplace_back(sid, alphabet.index_of(std::string(kTick)), intern(nxt));
        }
    }

    TimedAutomaton aut(alphabet, static_cast<std::uint32_t>(states.size()), 0);
    for (StateId s = 0; s < states.size(); ++s) {
        aut.set_marked(s, model.marked[states[s].activity]);
        std::string label = model.activities[states[s].activity] + "|";
        for (std::size_t j = 0; j < n_ev; ++j) {
            if (j) label += ",";
            label += std::to_string(states[s].timers[j]);
        }
        aut.set_label(s, label);
    }
    for (const auto& [src, e, dst] : transitions) aut.add_transition(src, e, dst);
    return reachable(aut);  // construction already explores reachably; renumber canonically
}

// State-size bound from the timer defaults: |A| * product of the defaults.
// Meaningful only when every default is positive.
inline std::uint64_t footnote_state_bound(const ActivityModel& model) {
    std::uint64_t bound = model.activities.size();
    for (const auto& [ev, attr] : model.events) {
        std::uint64_t d = default_timer(attr.bounds);
        if (bound > 0 && d > UINT64_MAX / std::max<std::uint64_t>(bound, 1)) return UINT64_MAX;
        bound *= d;
    }
    return bound;
}

// Composition of a multi-agent plant: synchronous product of the individual
// timed graphs, with tick shared by every component. Shared activity events
// must carry identical bounds and flags across components.
inline TimedAutomaton compose_tdes(std::span<const ActivityModel> models) {
    if (models.empty()) throw Error("compose_tdes: no models");
    classify(models);  // validates shared-event bounds and flags
    std::vector<TimedAutomaton> parts;
    for (const auto& m : models) parts.push_back(build_tdes(m));
    if (parts.size() == 1) return parts[0];
    return sync_product(parts);
}

}  // namespace tdesloc
