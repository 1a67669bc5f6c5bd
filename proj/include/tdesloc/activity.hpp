// activity.hpp -- untimed activity models with per-event time bounds and
// control attributes, and the controllable/uncontrollable event partition.

#pragma once

#include <cstdint>
#include <map>
#include <span>

#include "tdesloc/automaton.hpp"

namespace tdesloc {

inline constexpr std::uint32_t kInfinity = UINT32_MAX;

// Lower/upper time bounds of an event. upper == kInfinity encodes an
// unbounded (remote) event; any finite upper bound makes it prospective.
struct TimeBounds {
    std::uint32_t lower = 0;
    std::uint32_t upper = kInfinity;

    bool remote() const { return upper == kInfinity; }
    bool prospective() const { return !remote(); }
};

struct EventAttr {
    TimeBounds bounds;
    bool prohibitible = false;
    bool forcible = false;
};

// Default (reset) value of an event timer: the upper bound for prospective
// events, the lower bound for remote ones.
inline std::uint32_t default_timer(const TimeBounds& b) {
    return b.prospective() ? b.upper : b.lower;
}

// Activity model: a finite automaton over activity events, plus time bounds
// and control flags per event. Activities and events are identified by name;
// build_tdes turns this into the explicit timed transition graph.
struct ActivityModel {
    std::string name;
    std::vector<std::string> activities;            // unique names
    std::map<std::string, EventAttr> events;        // sorted by name
    // delta_act: (activity index, event name) -> activity index, partial
    std::map<std::pair<std::uint32_t, std::string>, std::uint32_t> transitions;
    std::uint32_t initial = 0;
    std::vector<bool> marked;                       // per activity

    std::optional<std::uint32_t> activity_index(std::string_view a) const {
        for (std::uint32_t i = 0; i < activities.size(); ++i)
            if (activities[i] == a) return i;
        return std::nullopt;
    }

    std::optional<std::uint32_t> step(std::uint32_t activity, const std::string& event) const {
        auto it = transitions.find({activity, event});
        if (it == transitions.end()) return std::nullopt;
        return it->second;
    }

    void validate() const {
        if (activities.empty())
            throw Error("model '" + name + "': no activities");
        for (std::size_t i = 0; i < activities.size(); ++i)
            for (std::size_t j = i + 1; j < activities.size(); ++j)
                if (activities[i] == activities[j])
                    throw Error("model '" + name + "': duplicate activity '" + activities[i] + "'");
        if (initial >= activities.size())
            throw Error("model '" + name + "': initial activity out of range");
        if (marked.size() != activities.size())
            throw Error("model '" + name + "': marked vector size mismatch");
        for (const auto& [ev, attr] : events) {
            if (ev == kTick)
                throw Error("model '" + name + "': 'tick' cannot be an activity event");
            if (attr.bounds.upper != kInfinity && attr.bounds.lower > attr.bounds.upper)
                throw Error("model '" + name + "': event '" + ev + "' has lower bound " +
                            std::to_string(attr.bounds.lower) + " > upper bound " +
                            std::to_string(attr.bounds.upper));
            if (attr.prohibitible && !attr.bounds.remote())
                throw Error("model '" + name + "': prohibitible event '" + ev +
                            "' must be remote (infinite upper bound)");
        }
        for (const auto& [key, dst] : transitions) {
            const auto& [src, ev] = key;
            if (src >= activities.size() || dst >= activities.size())
                throw Error("model '" + name + "': transition endpoint out of range");
            if (!events.count(ev))
                throw Error("model '" + name + "': transition on undeclared event '" + ev + "'");
        }
    }
};

// Partition of the full event set Sigma = Sigma_act + {tick}:
//   prospective + remote = activity events,
//   controllable = prohibitible + {tick},
//   uncontrollable = prospective + (remote - prohibitible).
struct EventClassification {
    std::vector<std::string> prospective;
    std::vector<std::string> remote;
    std::vector<std::string> prohibitible;
    std::vector<std::string> forcible;

    static bool in(const std::vector<std::string>& v, std::string_view e) {
        return std::binary_search(v.begin(), v.end(), e);
    }

    bool is_prospective(std::string_view e) const { return in(prospective, e); }
    bool is_remote(std::string_view e) const { return in(remote, e); }
    bool is_prohibitible(std::string_view e) const { return in(prohibitible, e); }
    bool is_forcible(std::string_view e) const { return in(forcible, e); }

    bool is_controllable(std::string_view e) const {
        return e == kTick || is_prohibitible(e);
    }
    bool is_uncontrollable(std::string_view e) const { return !is_controllable(e); }
};

// Event partition of one or more activity models (Sigma_for and Sigma_hib are
// the unions over the components). Flag or bound conflicts between models
// sharing an event name are errors.
inline EventClassification classify(std::span<const ActivityModel> models) {
    std::map<std::string, EventAttr> merged;
    for (const auto& m : models) {
        for (const auto& [ev, attr] : m.events) {
            auto it = merged.find(ev);
            if (it == merged.end()) {
                merged.emplace(ev, attr);
                continue;
            }
            const EventAttr& prev = it->second;
            if (prev.bounds.lower != attr.bounds.lower || prev.bounds.upper != attr.bounds.upper)
                throw Error("classify: shared event '" + ev + "' has conflicting bounds");
            if (prev.prohibitible != attr.prohibitible || prev.forcible != attr.forcible)
                throw Error("classify: shared event '" + ev + "' has conflicting control flags");
        }
    }
    EventClassification cls;
    for (const auto& [ev, attr] : merged) {
        (attr.bounds.prospective() ? cls.prospective : cls.remote).push_back(ev);
        if (attr.prohibitible) cls.prohibitible.push_back(ev);
        if (attr.forcible) cls.forcible.push_back(ev);
    }
    return cls;  // map iteration is sorted, so all vectors are sorted
}

}  // namespace tdesloc
