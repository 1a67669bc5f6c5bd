// localization.hpp -- decomposition of the monolithic supervisor into one
// local preemptor per forcible event and one local controller per
// prohibitible event, via consistency relations and congruences, with an
// executable control-equivalence check.

#pragma once

#include <deque>
#include <map>
#include <set>

#include "tdesloc/activity.hpp"
#include "tdesloc/ops.hpp"

namespace tdesloc {

// Per-state booleans of the supervisor, computed over the synchronized walk
// of SUP and the plant:
//   e_tick(x)    tick defined at x in SUP;
//   plant_tick(x) tick defined in G at some plant state paired with x;
//   f[alpha](x)  alpha defined at x, tick not defined at x, and tick defined
//                in G after some string reaching x (alpha preempts tick);
//   e_hib[beta](x) beta defined at x in SUP;
//   d_hib[beta](x) beta not defined at x but defined in G after some string
//                reaching x (beta must be disabled);
//   m(x)         x marked in SUP;
//   t(x)         some paired plant state marked in G.
struct StateFlags {
    std::vector<bool> e_tick;
    std::vector<bool> plant_tick;
    std::map<std::string, std::vector<bool>> f;
    std::map<std::string, std::vector<bool>> e_hib;
    std::map<std::string, std::vector<bool>> d_hib;
    std::vector<bool> m;
    std::vector<bool> t;
};

inline StateFlags compute_flags(const TimedAutomaton& sup, const TimedAutomaton& g,
                                const EventClassification& cls) {
    if (sup.empty()) throw Error("compute_flags: empty supervisor");
    if (!(sup.alphabet() == g.alphabet()))
        throw Error("compute_flags: supervisor and plant alphabets differ");

    const Alphabet& alpha = sup.alphabet();
    const std::uint32_t n = sup.state_count();
    EventIdx tick = alpha.index_of(std::string(kTick));

    StateFlags flags;
    flags.e_tick.resize(n);
    flags.plant_tick.assign(n, false);
    flags.m.resize(n);
    flags.t.assign(n, false);
    for (const auto& ev : cls.forcible) flags.f[ev].assign(n, false);
    for (const auto& ev : cls.prohibitible) {
        flags.e_hib[ev].assign(n, false);
        flags.d_hib[ev].assign(n, false);
    }

    for (StateId x = 0; x < n; ++x) {
        flags.e_tick[x] = sup.defined(x, tick);
        flags.m[x] = sup.marked(x);
    }

    // Existential data over paired plant states: enumerate reachable
    // (x, q) pairs of the product of SUP and G.
    std::map<std::string, std::vector<bool>> plant_elig;  // per prohibitible event
    for (const auto& ev : cls.prohibitible) plant_elig[ev].assign(n, false);

    std::set<std::pair<StateId, StateId>> seen;
    std::deque<std::pair<StateId, StateId>> queue;
    seen.emplace(sup.initial(), g.initial());
    queue.emplace_back(sup.initial(), g.initial());
    while (!queue.empty()) {
        auto [x, q] = queue.front();
        queue.pop_front();
        if (g.marked(q)) flags.t[x] = true;
        if (g.defined(q, tick)) flags.plant_tick[x] = true;
        for (auto& [ev, vec] : plant_elig)
            if (g.defined(q, alpha.index_of(ev))) vec[x] = true;
        for (const auto& [e, dx] : sup.out(x)) {
            auto dq = g.successor(q, e);
            if (!dq)
                throw Error("compute_flags: supervisor string not accepted by the plant "
                            "(corrupted inputs)");
            if (seen.emplace(dx, *dq).second) queue.emplace_back(dx, *dq);
        }
    }

    for (const auto& ev : cls.forcible) {
        EventIdx e = alpha.index_of(ev);
        auto& vec = flags.f[ev];
        for (StateId x = 0; x < n; ++x)
            vec[x] = sup.defined(x, e) && !flags.e_tick[x] && flags.plant_tick[x];
    }
    for (const auto& ev : cls.prohibitible) {
        EventIdx e = alpha.index_of(ev);
        auto& evec = flags.e_hib[ev];
        auto& dvec = flags.d_hib[ev];
        for (StateId x = 0; x < n; ++x) {
            evec[x] = sup.defined(x, e);
            dvec[x] = !evec[x] && plant_elig[ev][x];
        }
    }
    return flags;
}

// Two states may share a preemption-cover cell iff neither has tick defined
// while the other preempts tick through alpha.
inline bool preemption_consistent(StateId x, StateId y, const std::string& alpha,
                                  const StateFlags& flags) {
    const auto& f = flags.f.at(alpha);
    return !(flags.e_tick[x] && f[y]) && !(flags.e_tick[y] && f[x]);
}

// Two states may share a control-cover cell iff beta is never enabled at one
// while it must be disabled at the other, and their supervisor markings agree
// whenever their plant markings do.
inline bool control_consistent(StateId x, StateId y, const std::string& beta,
                               const StateFlags& flags) {
    const auto& e = flags.e_hib.at(beta);
    const auto& d = flags.d_hib.at(beta);
    if ((e[x] && d[y]) || (e[y] && d[x])) return false;
    if (flags.t[x] == flags.t[y] && flags.m[x] != flags.m[y]) return false;
    return true;
}

enum class CongruenceKind { kPreemption, kControl };

// A partition of the supervisor state set whose cells are pairwise consistent
// (for the kind's relation) and forward-closed: for every cell and event, all
// successors of cell members lie in one common cell.
struct Congruence {
    CongruenceKind kind = CongruenceKind::kPreemption;
    std::string event;
    std::vector<std::vector<StateId>> cells;  // cells sorted by least member

    StateId cell_of(StateId x) const {
        for (StateId c = 0; c < cells.size(); ++c)
            if (std::binary_search(cells[c].begin(), cells[c].end(), x)) return c;
        throw Error("congruence: state not covered");
    }
};

inline bool cell_pair_consistent(StateId x, StateId y, const Congruence& cong,
                                 const StateFlags& flags) {
    return cong.kind == CongruenceKind::kPreemption
               ? preemption_consistent(x, y, cong.event, flags)
               : control_consistent(x, y, cong.event, flags);
}

// Validates all congruence invariants: disjoint nonempty cells covering the
// state set, pairwise consistency inside every cell, and forward closure.
inline bool congruence_valid(const TimedAutomaton& sup, const StateFlags& flags,
                             const Congruence& cong, std::string* why = nullptr) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    std::vector<int> owner(sup.state_count(), -1);
    for (StateId c = 0; c < cong.cells.size(); ++c) {
        if (cong.cells[c].empty()) return fail("empty cell");
        for (StateId x : cong.cells[c]) {
            if (x >= sup.state_count()) return fail("state out of range");
            if (owner[x] != -1) return fail("state " + std::to_string(x) + " in two cells");
            owner[x] = static_cast<int>(c);
        }
    }
    for (StateId x = 0; x < sup.state_count(); ++x)
        if (owner[x] == -1) return fail("state " + std::to_string(x) + " not covered");

    for (const auto& cell : cong.cells)
        for (std::size_t i = 0; i < cell.size(); ++i)
            for (std::size_t j = i + 1; j < cell.size(); ++j)
                if (!cell_pair_consistent(cell[i], cell[j], cong, flags))
                    return fail("cell pair (" + std::to_string(cell[i]) + "," +
                                std::to_string(cell[j]) + ") inconsistent");

    for (const auto& cell : cong.cells)
        for (EventIdx e = 0; e < sup.alphabet().size(); ++e) {
            int target = -1;
            for (StateId x : cell)
                if (auto dst = sup.successor(x, e)) {
                    if (target == -1)
                        target = owner[*dst];
                    else if (target != owner[*dst])
                        return fail("forward closure violated on '" + sup.alphabet().name(e) + "'");
                }
        }
    return true;
}

namespace detail {

// Union-find partition with per-cell consistency aggregates. A cell is
// internally consistent iff it never holds both an E_tick state and an
// F_alpha state (preemption), and never both an enabled and a
// must-disable state nor two plant-marked states with different supervisor
// marking (control).
struct MergePartition {
    CongruenceKind kind;
    std::vector<StateId> parent;
    // aggregates indexed by root
    std::vector<std::uint32_t> cnt_a;  // E_tick count / E_beta count
    std::vector<std::uint32_t> cnt_b;  // F_alpha count / D_beta count
    std::vector<std::uint32_t> cnt_tm;   // control only: T=1, M=1 states
    std::vector<std::uint32_t> cnt_tnm;  // control only: T=1, M=0 states

    static MergePartition singletons(CongruenceKind kind, const std::string& event,
                                     const StateFlags& flags) {
        MergePartition p;
        p.kind = kind;
        std::uint32_t n = static_cast<std::uint32_t>(flags.e_tick.size());
        p.parent.resize(n);
        p.cnt_a.assign(n, 0);
        p.cnt_b.assign(n, 0);
        p.cnt_tm.assign(n, 0);
        p.cnt_tnm.assign(n, 0);
        for (StateId x = 0; x < n; ++x) {
            p.parent[x] = x;
            if (kind == CongruenceKind::kPreemption) {
                p.cnt_a[x] = flags.e_tick[x] ? 1 : 0;
                p.cnt_b[x] = flags.f.at(event)[x] ? 1 : 0;
            } else {
                p.cnt_a[x] = flags.e_hib.at(event)[x] ? 1 : 0;
                p.cnt_b[x] = flags.d_hib.at(event)[x] ? 1 : 0;
                p.cnt_tm[x] = (flags.t[x] && flags.m[x]) ? 1 : 0;
                p.cnt_tnm[x] = (flags.t[x] && !flags.m[x]) ? 1 : 0;
            }
        }
        return p;
    }

    StateId find(StateId x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }

    // Unions two cells; false iff the merged cell would be inconsistent.
    bool merge(StateId x, StateId y) {
        StateId rx = find(x), ry = find(y);
        if (rx == ry) return true;
        if (ry < rx) std::swap(rx, ry);  // min-index representative
        std::uint32_t a = cnt_a[rx] + cnt_a[ry];
        std::uint32_t b = cnt_b[rx] + cnt_b[ry];
        std::uint32_t tm = cnt_tm[rx] + cnt_tm[ry];
        std::uint32_t tnm = cnt_tnm[rx] + cnt_tnm[ry];
        if (a > 0 && b > 0) return false;
        if (kind == CongruenceKind::kControl && tm > 0 && tnm > 0) return false;
        parent[ry] = rx;
        cnt_a[rx] = a;
        cnt_b[rx] = b;
        cnt_tm[rx] = tm;
        cnt_tnm[rx] = tnm;
        return true;
    }

    // Forward closure by merging: for every cell and event, all successors of
    // cell members must share a cell; union them until stable. False iff a
    // forced union hits an inconsistency.
    bool propagate_closure(const TimedAutomaton& sup) {
        bool changed = true;
        while (changed) {
            changed = false;
            std::map<std::pair<StateId, EventIdx>, StateId> target;
            for (StateId x = 0; x < sup.state_count(); ++x) {
                StateId rx = find(x);
                for (const auto& [e, dst] : sup.out(x)) {
                    StateId rd = find(dst);
                    auto key = std::make_pair(rx, e);
                    auto it = target.find(key);
                    if (it == target.end()) {
                        target.emplace(key, rd);
                    } else if (find(it->second) != rd) {
                        if (!merge(it->second, rd)) return false;
                        changed = true;
                    }
                }
                if (changed) break;  // roots moved; rescan from a clean slate
            }
        }
        return true;
    }

    std::vector<std::vector<StateId>> cells() {
        std::map<StateId, std::vector<StateId>> by_root;
        for (StateId x = 0; x < parent.size(); ++x) by_root[find(x)].push_back(x);
        std::vector<std::vector<StateId>> out;
        for (auto& [root, cell] : by_root) out.push_back(std::move(cell));
        return out;  // map order == least-member order (min-index representatives)
    }
};

// Preemption congruences: partition refinement. Seed with the two-block
// partition {F_alpha states, rest} (always pairwise consistent, since
// F_alpha(x) = 1 forces E_tick(x) = 0), then split cells until forward
// closure holds. States with no transition on the splitting event join the
// largest fragment (ties to the fragment with the smallest successor cell).
inline std::vector<std::vector<StateId>> refine_congruence(const TimedAutomaton& sup,
                                                           const std::vector<bool>& in_seed_cell) {
    std::vector<std::vector<StateId>> cells;
    {
        std::vector<StateId> a, b;
        for (StateId x = 0; x < sup.state_count(); ++x)
            (in_seed_cell[x] ? a : b).push_back(x);
        if (!a.empty()) cells.push_back(std::move(a));
        if (!b.empty()) cells.push_back(std::move(b));
    }

    auto sort_cells = [&]() {
        std::sort(cells.begin(), cells.end(),
                  [](const auto& l, const auto& r) { return l.front() < r.front(); });
    };
    sort_cells();

    bool stable = false;
    while (!stable) {
        stable = true;
        std::vector<StateId> cell_of(sup.state_count());
        for (StateId c = 0; c < cells.size(); ++c)
            for (StateId x : cells[c]) cell_of[x] = c;

        for (std::size_t c = 0; c < cells.size() && stable; ++c) {
            for (EventIdx e = 0; e < sup.alphabet().size() && stable; ++e) {
                // group defined members by successor cell
                std::map<StateId, std::vector<StateId>> groups;
                std::vector<StateId> undefined;
                for (StateId x : cells[c]) {
                    if (auto dst = sup.successor(x, e))
                        groups[cell_of[*dst]].push_back(x);
                    else
                        undefined.push_back(x);
                }
                if (groups.size() <= 1) continue;

                // split: undefined states join the largest group
                StateId host = groups.begin()->first;
                for (const auto& [key, members] : groups)
                    if (members.size() > groups[host].size()) host = key;
                auto& host_group = groups[host];
                host_group.insert(host_group.end(), undefined.begin(), undefined.end());
                std::sort(host_group.begin(), host_group.end());

                std::vector<std::vector<StateId>> pieces;
                for (auto& [key, members] : groups) pieces.push_back(std::move(members));
                cells.erase(cells.begin() + static_cast<std::ptrdiff_t>(c));
                for (auto& piece : pieces) cells.push_back(std::move(piece));
                sort_cells();
                stable = false;
            }
        }
    }
    return cells;
}

// Control congruences: event collapse followed by pairwise coarsening.
// Collapse tries, event by event in alphabet order (skipping the target
// event), to merge every source with its successor so the event becomes a
// pure selfloop of the quotient; an event whose collapse breaks consistency
// is kept observable. Coarsening then greedily merges remaining cell pairs
// in least-member order. Both phases re-establish forward closure after
// every tentative merge and roll back on inconsistency.
inline std::vector<std::vector<StateId>> collapse_congruence(const TimedAutomaton& sup,
                                                             const std::string& event,
                                                             const StateFlags& flags,
                                                             CongruenceKind kind) {
    MergePartition part = MergePartition::singletons(kind, event, flags);
    EventIdx target = sup.alphabet().index_of(event);

    for (EventIdx e = 0; e < sup.alphabet().size(); ++e) {
        if (e == target) continue;
        MergePartition attempt = part;
        bool ok = true;
        for (StateId x = 0; x < sup.state_count() && ok; ++x)
            if (auto dst = sup.successor(x, e)) ok = attempt.merge(x, *dst);
        if (ok) ok = attempt.propagate_closure(sup);
        if (ok) part = std::move(attempt);
    }

    bool merged_any = true;
    while (merged_any) {
        merged_any = false;
        auto cells = part.cells();
        for (std::size_t i = 0; i < cells.size() && !merged_any; ++i)
            for (std::size_t j = i + 1; j < cells.size() && !merged_any; ++j) {
                MergePartition attempt = part;
                if (!attempt.merge(cells[i].front(), cells[j].front())) continue;
                if (!attempt.propagate_closure(sup)) continue;
                part = std::move(attempt);
                merged_any = true;
            }
    }
    return part.cells();
}

}  // namespace detail

// Computes a preemption or control congruence for the given event. The
// result is a valid congruence but not necessarily state-minimal (minimal
// covers are NP-hard); the construction is deterministic, so repeated runs
// give identical partitions.
inline Congruence compute_congruence(const TimedAutomaton& sup, const StateFlags& flags,
                                     const std::string& event, CongruenceKind kind) {
    if (sup.empty()) throw Error("compute_congruence: empty supervisor");
    Congruence cong;
    cong.kind = kind;
    cong.event = event;
    if (kind == CongruenceKind::kPreemption) {
        const auto& f = flags.f.at(event);
        std::vector<bool> seed(sup.state_count());
        for (StateId x = 0; x < sup.state_count(); ++x) seed[x] = f[x];
        cong.cells = detail::refine_congruence(sup, seed);
    } else {
        cong.cells = detail::collapse_congruence(sup, event, flags, kind);
    }
    std::string why;
    if (!congruence_valid(sup, flags, cong, &why))
        throw Error("compute_congruence: produced invalid congruence: " + why);
    return cong;
}

enum class UnitKind { kPreemptor, kController };

// An extracted local preemptor or local controller. States are the cells of
// the congruence it was built from; the alphabet is the target event (plus
// tick for preemptors) together with every event that is not a pure selfloop
// of the quotient transition function.
struct LocalUnit {
    UnitKind kind = UnitKind::kPreemptor;
    std::string event;
    TimedAutomaton automaton;
    std::vector<std::vector<StateId>> cells;  // supervisor states per unit state

    std::string name() const {
        return (kind == UnitKind::kPreemptor ? std::string("loc_p_") : std::string("loc_c_")) +
               event;
    }
};

inline LocalUnit extract_local(const TimedAutomaton& sup, const Congruence& cong,
                               const std::string& event, UnitKind kind) {
    const Alphabet& alpha = sup.alphabet();
    const std::uint32_t n_cells = static_cast<std::uint32_t>(cong.cells.size());

    std::vector<StateId> cell_of(sup.state_count());
    for (StateId c = 0; c < n_cells; ++c)
        for (StateId x : cong.cells[c]) cell_of[x] = c;

    // quotient transition function over the full alphabet, with the
    // single-valuedness of the congruence re-checked defensively
    std::map<std::pair<StateId, EventIdx>, StateId> quotient;
    for (StateId x = 0; x < sup.state_count(); ++x)
        for (const auto& [e, dst] : sup.out(x)) {
            auto key = std::make_pair(cell_of[x], e);
            auto it = quotient.find(key);
            if (it == quotient.end())
                quotient.emplace(key, cell_of[dst]);
            else if (it->second != cell_of[dst])
                throw Error("extract_local: cover condition violated on '" + alpha.name(e) + "'");
        }

    std::vector<std::string> unit_events{event};
    if (kind == UnitKind::kPreemptor) unit_events.emplace_back(kTick);
    for (EventIdx e = 0; e < alpha.size(); ++e) {
        bool non_selfloop = false;
        for (const auto& [key, dst] : quotient)
            if (key.second == e && key.first != dst) non_selfloop = true;
        if (non_selfloop) unit_events.push_back(alpha.name(e));
    }
    std::sort(unit_events.begin(), unit_events.end());
    unit_events.erase(std::unique(unit_events.begin(), unit_events.end()), unit_events.end());
    Alphabet unit_alpha(std::move(unit_events));

    StateId initial_cell = cell_of[sup.initial()];
    TimedAutomaton aut(unit_alpha, n_cells, initial_cell);
    for (StateId c = 0; c < n_cells; ++c) {
        bool m = false;
        std::string label = "{";
        for (std::size_t i = 0; i < cong.cells[c].size(); ++i) {
            m = m || sup.marked(cong.cells[c][i]);
            if (i) label += ",";
            label += std::to_string(cong.cells[c][i]);
        }
        label += "}";
        aut.set_marked(c, m);
        aut.set_label(c, label);
    }
    for (const auto& [key, dst] : quotient) {
        auto local = unit_alpha.index(alpha.name(key.second));
        if (local) aut.add_transition(key.first, *local, dst);
    }

    LocalUnit unit;
    unit.kind = kind;
    unit.event = event;
    unit.automaton = std::move(aut);
    unit.cells = cong.cells;
    return unit;
}

struct EquivalenceReport {
    bool equivalent = true;
    std::vector<std::string> witness;  // string separating the two behaviors
    std::string detail;
};

// Theorem-level check: the joint behavior of the local units, synchronized
// with the plant, must reproduce the supervisor exactly:
//   L(G) meet L(LOC) = L(SUP)  and  Lm(G) meet Lm(LOC) = Lm(SUP),
// where LOC is the synchronous product of all unit automata (units over
// subalphabets act through inverse projection).
inline EquivalenceReport verify_control_equivalence(const TimedAutomaton& g,
                                                    const TimedAutomaton& sup,
                                                    std::span<const LocalUnit> units) {
    for (const auto& u : units)
        if (!u.automaton.alphabet().is_subset_of(g.alphabet()))
            throw Error("verify_control_equivalence: unit '" + u.name() +
                        "' ranges outside the plant alphabet");

    std::vector<TimedAutomaton> parts{g};
    for (const auto& u : units) parts.push_back(u.automaton);
    TimedAutomaton joint = sync_product(parts);

    TimedAutomaton sup_cmp = sup;
    if (sup.empty()) sup_cmp = TimedAutomaton::empty_automaton(g.alphabet());
    if (!(joint.alphabet() == sup_cmp.alphabet()))
        throw Error("verify_control_equivalence: supervisor alphabet mismatch");

    EquivalenceReport report;
    auto fwd = language_subset(joint, sup_cmp);
    if (!fwd.holds) {
        report.equivalent = false;
        report.witness = fwd.witness;
        report.detail = "joint behavior admits a string the supervisor forbids";
        return report;
    }
    auto bwd = language_subset(sup_cmp, joint);
    if (!bwd.holds) {
        report.equivalent = false;
        report.witness = bwd.witness;
        report.detail = "joint behavior misses a string the supervisor allows";
        return report;
    }
    return report;
}

// Full localization: one preemptor per forcible event and one controller per
// prohibitible event, with control equivalence verified on the result.
inline std::vector<LocalUnit> localize_all(const TimedAutomaton& g, const TimedAutomaton& sup,
                                           const EventClassification& cls) {
    if (sup.empty())
        throw Error("localize_all: empty supervisor (closure of Lm(SUP) must be nonempty)");
    StateFlags flags = compute_flags(sup, g, cls);

    std::vector<LocalUnit> units;
    for (const auto& ev : cls.forcible) {
        auto cong = compute_congruence(sup, flags, ev, CongruenceKind::kPreemption);
        units.push_back(extract_local(sup, cong, ev, UnitKind::kPreemptor));
    }
    for (const auto& ev : cls.prohibitible) {
        auto cong = compute_congruence(sup, flags, ev, CongruenceKind::kControl);
        units.push_back(extract_local(sup, cong, ev, UnitKind::kController));
    }

    auto report = verify_control_equivalence(g, sup, units);
    if (!report.equivalent) {
        std::string w;
        for (const auto& s : report.witness) w += (w.empty() ? "" : ".") + s;
        throw Error("localize_all: control equivalence failed (" + report.detail +
                    "; witness '" + w + "')");
    }
    return units;
}

// Walks the reachable joint states of the plant synchronized with every unit
// and reports refusals:
//   - a preemptor refusing tick (while tick is plant-eligible) must have its
//     own forcible event defined at the refusing unit state;
//   - an event a controller refuses (while plant-eligible and in its
//     alphabet) must be the controller's own event.
// Returns human-readable violation descriptions; empty means the per-unit
// conditions hold along the joint behavior.
inline std::vector<std::string> unit_condition_violations(const TimedAutomaton& g,
                                                          std::span<const LocalUnit> units) {
    std::vector<std::string> violations;
    if (g.empty()) return violations;
    const Alphabet& alpha = g.alphabet();
    EventIdx tick = alpha.index_of(std::string(kTick));

    const std::size_t k = units.size();
    std::vector<std::vector<std::optional<EventIdx>>> local(k);
    for (std::size_t i = 0; i < k; ++i) {
        local[i].resize(alpha.size());
        for (EventIdx e = 0; e < alpha.size(); ++e)
            local[i][e] = units[i].automaton.alphabet().index(alpha.name(e));
    }

    std::set<std::vector<StateId>> seen;
    std::deque<std::vector<StateId>> queue;
    std::vector<StateId> init(k + 1);
    init[0] = g.initial();
    for (std::size_t i = 0; i < k; ++i) init[i + 1] = units[i].automaton.initial();
    seen.insert(init);
    queue.push_back(init);

    auto note = [&](const std::string& msg) {
        if (std::find(violations.begin(), violations.end(), msg) == violations.end())
            violations.push_back(msg);
    };

    while (!queue.empty()) {
        std::vector<StateId> tup = queue.front();
        queue.pop_front();

        for (std::size_t i = 0; i < k; ++i) {
            const auto& ua = units[i].automaton;
            StateId y = tup[i + 1];
            if (units[i].kind == UnitKind::kPreemptor) {
                if (g.defined(tup[0], tick) && local[i][tick] && !ua.defined(y, *local[i][tick])) {
                    EventIdx own = *local[i][alpha.index_of(units[i].event)];
                    if (!ua.defined(y, own))
                        note("preemptor " + units[i].name() + " refuses tick at unit state " +
                             std::to_string(y) + " without offering " + units[i].event);
                }
            } else {
                for (const auto& [e, dst] : g.out(tup[0])) {
                    if (!local[i][e] || ua.defined(y, *local[i][e])) continue;
                    if (alpha.name(e) != units[i].event)
                        note("controller " + units[i].name() + " refuses '" + alpha.name(e) +
                             "' at unit state " + std::to_string(y));
                }
            }
        }

        for (EventIdx e = 0; e < alpha.size(); ++e) {
            std::vector<StateId> nxt(k + 1);
            auto gd = g.successor(tup[0], e);
            if (!gd) continue;
            nxt[0] = *gd;
            bool enabled = true;
            for (std::size_t i = 0; i < k && enabled; ++i) {
                if (!local[i][e]) {
                    nxt[i + 1] = tup[i + 1];
                    continue;
                }
                auto dst = units[i].automaton.successor(tup[i + 1], *local[i][e]);
                if (!dst)
                    enabled = false;
                else
                    nxt[i + 1] = *dst;
            }
            if (enabled && seen.insert(nxt).second) queue.push_back(nxt);
        }
    }
    return violations;
}

}  // namespace tdesloc
