// synthesis.hpp -- TDES controllability and supremal controllable
// sublanguage synthesis (the monolithic supervisor).

#pragma once

#include <deque>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "tdesloc/activity.hpp"
#include "tdesloc/ops.hpp"

namespace tdesloc {

enum class ControlViolation { kUncontrollableEvent, kTickWithoutForcible };

struct ControllabilityReport {
    bool controllable = true;
    std::vector<std::string> witness_string;  // string reaching the violation
    std::string witness_event;
    ControlViolation violation = ControlViolation::kUncontrollableEvent;
};

namespace detail {

// Pair walk of two automata over the same alphabet, visiting the reachable
// (f, g) pairs in breadth-first order together with the shortest string
// reaching each pair.
template <typename Visit>
inline void walk_pairs(const TimedAutomaton& f, const TimedAutomaton& g, Visit visit) {
    if (f.empty() || g.empty()) return;
    std::map<std::pair<StateId, StateId>, std::tuple<StateId, StateId, EventIdx>> parent;
    std::set<std::pair<StateId, StateId>> seen;
    std::deque<std::pair<StateId, StateId>> queue;

    auto path_to = [&](std::pair<StateId, StateId> at) {
        std::vector<std::string> path;
        while (true) {
            auto it = parent.find(at);
            if (it == parent.end()) break;
            auto [pf, pg, e] = it->second;
            path.push_back(f.alphabet().name(e));
            at = {pf, pg};
        }
        std::reverse(path.begin(), path.end());
        return path;
    };

    std::pair<StateId, StateId> start{f.initial(), g.initial()};
    seen.insert(start);
    queue.push_back(start);
    while (!queue.empty()) {
        auto cur = queue.front();
        queue.pop_front();
        if (!visit(cur.first, cur.second, path_to)) return;
        for (const auto& [e, df] : f.out(cur.first)) {
            auto dg = g.successor(cur.second, e);
            if (!dg) continue;  // f-strings outside L(g) are not followed
            std::pair<StateId, StateId> nxt{df, *dg};
            if (seen.insert(nxt).second) {
                parent[nxt] = {cur.first, cur.second, e};
                queue.push_back(nxt);
            }
        }
    }
}

}  // namespace detail

// TDES controllability of L(f) with respect to g: along the synchronized
// walk of f and g, every g-eligible uncontrollable event must be f-eligible,
// and tick may be absent from f only when some forcible event is f-eligible.
inline ControllabilityReport is_controllable(const TimedAutomaton& f, const TimedAutomaton& g,
                                             const EventClassification& cls) {
    if (!f.empty() && !g.empty() && f.alphabet() != g.alphabet())
        throw Error("is_controllable: alphabet mismatch");
    ControllabilityReport report;
    if (f.empty()) return report;  // condition is vacuous on the empty language

    const Alphabet& alpha = f.alphabet();
    detail::walk_pairs(f, g, [&](StateId xf, StateId qg, auto path_to) {
        bool forcible_in_f = false;
        for (const auto& [e, dst] : f.out(xf))
            if (cls.is_forcible(alpha.name(e))) forcible_in_f = true;
        for (const auto& [e, dst] : g.out(qg)) {
            const std::string& name = alpha.name(e);
            if (f.defined(xf, e)) continue;
            if (cls.is_uncontrollable(name)) {
                report.controllable = false;
                report.witness_string = path_to({xf, qg});
                report.witness_event = name;
                report.violation = ControlViolation::kUncontrollableEvent;
                return false;
            }
            if (name == kTick && !forcible_in_f) {
                report.controllable = false;
                report.witness_string = path_to({xf, qg});
                report.witness_event = name;
                report.violation = ControlViolation::kTickWithoutForcible;
                return false;
            }
        }
        return true;
    });
    return report;
}

// Synthesis trace: states deleted per fixpoint pass, for the optional log.
struct SupconTrace {
    struct Pass {
        std::size_t controllability_deletions = 0;
        std::size_t blocking_deletions = 0;
    };
    std::vector<Pass> passes;
    std::size_t product_states = 0;

    std::string to_text() const {
        std::ostringstream os;
        os << "product states: " << product_states << "\n";
        for (std::size_t i = 0; i < passes.size(); ++i)
            os << "pass " << (i + 1) << ": deleted " << passes[i].controllability_deletions
               << " uncontrollable, " << passes[i].blocking_deletions << " blocking\n";
        return os.str();
    }
};

// Supremal controllable sublanguage of E intersected with Lm(G), realized as
// a trim deterministic supervisor over the union alphabet. The specification
// may range over a subalphabet; absent events are unconstrained (synchronous
// product semantics). Fixpoint: delete product states where an uncontrollable
// event is G-eligible but absent, or where tick is G-eligible and absent with
// no forcible event present; trim; repeat until stable. Deletion order within
// a pass is by ascending state index. The result carries canonical
// breadth-first numbering; the empty automaton realizes the empty language.
inline TimedAutomaton supcon(const TimedAutomaton& g, const TimedAutomaton& e,
                             const EventClassification& cls, SupconTrace* trace = nullptr) {
    TimedAutomaton pair[2] = {g, e};
    TimedAutomaton product = sync_product(std::span<const TimedAutomaton>(pair, 2));
    const Alphabet& alpha = product.alphabet();
    if (!g.empty() && !(g.alphabet() == alpha))
        throw Error("supcon: specification alphabet is not contained in the plant alphabet");

    if (trace) trace->product_states = product.state_count();
    if (product.empty()) return product;

    // Each product state needs its paired G-state for the eligibility tests.
    // Recompute the pairing by a forward walk (the product language is a
    // subset of L(G), so the walk is total).
    auto pair_with_g = [&](const TimedAutomaton& p) {
        std::vector<StateId> gstate(p.state_count(), UINT32_MAX);
        std::deque<StateId> queue;
        gstate[p.initial()] = g.initial();
        queue.push_back(p.initial());
        while (!queue.empty()) {
            StateId s = queue.front();
            queue.pop_front();
            for (const auto& [ev, dst] : p.out(s)) {
                if (gstate[dst] != UINT32_MAX) continue;
                auto gd = g.successor(gstate[s], ev);
                if (!gd) throw Error("supcon: product string not accepted by the plant");
                gstate[dst] = *gd;
                queue.push_back(dst);
            }
        }
        return gstate;
    };

    std::vector<bool> forcible(alpha.size()), uncontrollable(alpha.size());
    EventIdx tick = alpha.index_of(std::string(kTick));
    for (EventIdx ev = 0; ev < alpha.size(); ++ev) {
        forcible[ev] = cls.is_forcible(alpha.name(ev));
        uncontrollable[ev] = cls.is_uncontrollable(alpha.name(ev));
    }

    TimedAutomaton current = product;
    while (!current.empty()) {
        std::vector<StateId> gstate = pair_with_g(current);
        SupconTrace::Pass pass;

        std::vector<bool> keep(current.state_count(), true);
        for (StateId s = 0; s < current.state_count(); ++s) {
            bool has_forcible = false;
            for (const auto& [ev, dst] : current.out(s))
                if (forcible[ev]) has_forcible = true;
            for (const auto& [ev, dst] : g.out(gstate[s])) {
                if (current.defined(s, ev)) continue;
                if (uncontrollable[ev] || (ev == tick && !has_forcible)) {
                    keep[s] = false;
                    ++pass.controllability_deletions;
                    break;
                }
            }
        }

        TimedAutomaton next = pass.controllability_deletions
                                  ? detail::restrict_bfs(current, keep)
                                  : current;
        std::size_t before_trim = next.state_count();
        next = trim(next);
        pass.blocking_deletions = before_trim - next.state_count();

        bool changed = pass.controllability_deletions > 0 || pass.blocking_deletions > 0;
        if (trace && changed) trace->passes.push_back(pass);
        current = std::move(next);
        if (!changed) break;
    }
    return current;
}

}  // namespace tdesloc
