#include "pwe/equilibrium.hpp"

#include "pwe/errors.hpp"
#include "pwe/flow.hpp"
#include "pwe/lp.hpp"
#include "pwe/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>

namespace pwe {

namespace {

// One round of the flow construction works on the still-unfixed subgraph.
struct Subgraph {
    std::vector<char> state_alive;
    std::vector<char> signal_alive;
};

}  // namespace

EquilibriumResult compute_equilibrium(const Instance& inst) {
    const int n = inst.num_states();
    const int m = inst.num_signals();

    EquilibriumResult result;
    result.phi.mass.assign(inst.num_edges(), Rational(0));
    result.psi.accept_prob.assign(m, Rational(0));
    result.psi.deterministic = true;

    Subgraph live{std::vector<char>(n, 1), std::vector<char>(m, 1)};

    auto any_live_state = [&] {
        return std::any_of(live.state_alive.begin(), live.state_alive.end(), [](char c) { return c != 0; });
    };

    while (any_live_state()) {
        // Nodes: states, then signals, then source, sink.
        FlowNetwork net;
        net.num_nodes = n + m + 2;
        net.source = n + m;
        net.sink = n + m + 1;
        std::vector<int> source_arc(n, -1), sink_arc(n, -1);
        std::vector<int> edge_arc(inst.num_edges(), -1);
        for (int s = 0; s < n; ++s) {
            if (!live.state_alive[s]) continue;
            if (inst.states[s].acceptable)
                source_arc[s] = net.add_arc(net.source, s, inst.states[s].q);
            else
                sink_arc[s] = net.add_arc(s, net.sink, inst.states[s].q);
        }
        for (int e = 0; e < inst.num_edges(); ++e) {
            const auto [s, g] = inst.edges[e];
            if (!live.state_alive[s] || !live.signal_alive[g]) continue;
            edge_arc[e] = inst.states[s].acceptable ? net.add_uncapped_arc(s, n + g)
                                                    : net.add_uncapped_arc(n + g, s);
        }

        const MaxFlowResult flow = max_flow(net);

        int start_state = -1;  // canonically-first acceptable state with slack
        bool all_saturated = true;
        for (int s = 0; s < n; ++s) {
            if (source_arc[s] >= 0 && flow.flow[source_arc[s]] != inst.states[s].q) {
                all_saturated = false;
                if (start_state < 0) start_state = s;
            }
            if (sink_arc[s] >= 0 && flow.flow[sink_arc[s]] != inst.states[s].q) all_saturated = false;
        }

        if (all_saturated) {
            // phi = f and rejecting everywhere is a mutual best response.
            EquilibriumIteration it;
            it.kind = "all-saturated";
            for (int e = 0; e < inst.num_edges(); ++e)
                if (edge_arc[e] >= 0) result.phi.mass[e] = flow.flow[edge_arc[e]];
            for (int s = 0; s < n; ++s)
                if (live.state_alive[s]) {
                    (inst.states[s].acceptable ? it.removed_accept_states : it.removed_reject_states)
                        .push_back(s);
                    live.state_alive[s] = 0;
                }
            for (int g = 0; g < m; ++g)
                if (live.signal_alive[g]) {
                    it.fixed_signals.push_back(g);
                    live.signal_alive[g] = 0;
                }
            result.trace.push_back(std::move(it));
            break;
        }

        if (start_state >= 0) {
            // Accept region: residual reachability from the slack state.
            std::vector<char> reach_state(n, 0), reach_signal(m, 0);
            reach_state[start_state] = 1;
            std::deque<int> queue = {start_state};  // states and signals, signals offset by n
            while (!queue.empty()) {
                const int v = queue.front();
                queue.pop_front();
                if (v < n) {
                    const int s = v;
                    if (inst.states[s].acceptable) {
                        for (int e : inst.state_edges[s]) {  // forward uncapped arcs
                            const int g = inst.edges[e].second;
                            if (edge_arc[e] >= 0 && !reach_signal[g]) {
                                reach_signal[g] = 1;
                                queue.push_back(n + g);
                            }
                        }
                    } else {
                        for (int e : inst.state_edges[s]) {  // backward arcs need flow
                            const int g = inst.edges[e].second;
                            if (edge_arc[e] >= 0 && flow.flow[edge_arc[e]] > 0 && !reach_signal[g]) {
                                reach_signal[g] = 1;
                                queue.push_back(n + g);
                            }
                        }
                    }
                } else {
                    const int g = v - n;
                    for (int e : inst.signal_edges[g]) {
                        const int s = inst.edges[e].first;
                        if (edge_arc[e] < 0 || reach_state[s]) continue;
                        const bool traversable = inst.states[s].acceptable
                                                     ? flow.flow[edge_arc[e]] > 0  // reverse of state->signal
                                                     : true;                       // forward uncapped
                        if (traversable) {
                            reach_state[s] = 1;
                            queue.push_back(s);
                        }
                    }
                }
            }

            EquilibriumIteration it;
            it.kind = "accept-region";
            for (int g = 0; g < m; ++g)
                if (reach_signal[g]) {
                    result.psi.accept_prob[g] = 1;
                    it.fixed_signals.push_back(g);
                }

            // Rejectable states in the region get their rows from the flow.
            for (int s = 0; s < n; ++s) {
                if (!reach_state[s] || inst.states[s].acceptable) continue;
                for (int e : inst.state_edges[s])
                    if (edge_arc[e] >= 0 && reach_signal[inst.edges[e].second])
                        result.phi.mass[e] = flow.flow[edge_arc[e]];
                it.removed_reject_states.push_back(s);
            }

            // Acceptable states incident to the region move all mass inside.
            for (int s = 0; s < n; ++s) {
                if (!live.state_alive[s] || !inst.states[s].acceptable) continue;
                int first_inside = -1;
                for (int g : inst.state_signals[s])
                    if (reach_signal[g]) {
                        first_inside = g;
                        break;
                    }
                if (first_inside < 0) continue;
                Rational assigned = 0;
                for (int e : inst.state_edges[s]) {
                    const int g = inst.edges[e].second;
                    if (edge_arc[e] < 0 || !reach_signal[g]) continue;
                    result.phi.mass[e] = flow.flow[edge_arc[e]];
                    assigned += flow.flow[edge_arc[e]];
                }
                const int e0 = inst.edge_index(s, first_inside);
                result.phi.mass[e0] += inst.states[s].q - assigned;
                it.removed_accept_states.push_back(s);
            }

            for (int s : it.removed_accept_states) live.state_alive[s] = 0;
            for (int s : it.removed_reject_states) live.state_alive[s] = 0;
            for (int g : it.fixed_signals) live.signal_alive[g] = 0;
            result.trace.push_back(std::move(it));
            continue;
        }

        // Reject tail: source edges are saturated, some sink edges are not.
        EquilibriumIteration it;
        it.kind = "reject-tail";
        for (int e = 0; e < inst.num_edges(); ++e)
            if (edge_arc[e] >= 0) result.phi.mass[e] = flow.flow[edge_arc[e]];
        for (int s = 0; s < n; ++s) {
            if (!live.state_alive[s]) continue;
            if (!inst.states[s].acceptable && sink_arc[s] >= 0) {
                const Rational deficit = inst.states[s].q - flow.flow[sink_arc[s]];
                if (deficit > 0) {
                    int first = -1;
                    for (int g : inst.state_signals[s])
                        if (live.signal_alive[g]) {
                            first = g;
                            break;
                        }
                    result.phi.mass[inst.edge_index(s, first)] += deficit;
                }
            }
            (inst.states[s].acceptable ? it.removed_accept_states : it.removed_reject_states).push_back(s);
            live.state_alive[s] = 0;
        }
        for (int g = 0; g < m; ++g)
            if (live.signal_alive[g]) {
                it.fixed_signals.push_back(g);
                live.signal_alive[g] = 0;
            }
        result.trace.push_back(std::move(it));
        break;
    }

    return result;
}

namespace {

// Feasibility-plus-extremes LP for a fixed deterministic psi: sender mass is
// confined to argmax signals and every signal satisfies the receiver's weak
// inequality in the direction psi prescribes.
struct PsiAnalysis {
    bool feasible = false;
    Rational receiver_min, receiver_max;
};

PsiAnalysis analyze_psi(const Instance& inst, std::uint32_t accept_mask) {
    LinearProgram lp;
    std::vector<int> edge_var(inst.num_edges(), -1);

    auto accepts = [&](int g) { return (accept_mask >> g) & 1u; };

    for (int s = 0; s < inst.num_states(); ++s) {
        bool has_accept = false;
        for (int g : inst.state_signals[s])
            if (accepts(g)) has_accept = true;
        std::vector<std::pair<int, Rational>> row;
        for (int e : inst.state_edges[s]) {
            const int g = inst.edges[e].second;
            if (has_accept && !accepts(g)) continue;  // not a best response
            edge_var[e] = lp.add_var(Rational(0));
            row.push_back({edge_var[e], Rational(1)});
        }
        lp.add_row(std::move(row), RowSense::EQ, inst.states[s].q);
    }

    for (int g = 0; g < inst.num_signals(); ++g) {
        std::vector<std::pair<int, Rational>> row;
        for (int e : inst.signal_edges[g]) {
            if (edge_var[e] < 0) continue;
            const bool acc = inst.states[inst.edges[e].first].acceptable;
            // accept signal: mass_R - mass_A <= 0; reject: mass_A - mass_R <= 0
            const Rational coef = accepts(g) ? (acc ? -1 : 1) : (acc ? 1 : -1);
            row.push_back({edge_var[e], coef});
        }
        if (!row.empty()) lp.add_row(std::move(row), RowSense::LE, Rational(0));
    }

    // Receiver utility objective.
    for (int e = 0; e < inst.num_edges(); ++e) {
        if (edge_var[e] < 0) continue;
        const auto [s, g] = inst.edges[e];
        const bool counts = accepts(g) == inst.states[s].acceptable;
        if (counts) lp.objective[edge_var[e]] = 1;
    }

    PsiAnalysis out;
    const LpSolution max_side = lp_solve_exact(lp);
    if (max_side.status != LpStatus::Optimal) return out;
    out.feasible = true;
    out.receiver_max = max_side.value;
    for (auto& c : lp.objective) c = -c;
    const LpSolution min_side = lp_solve_exact(lp);
    out.receiver_min = -min_side.value;
    return out;
}

}  // namespace

std::vector<EnumeratedEquilibrium> enumerate_deterministic_equilibria(const Instance& inst) {
    const int m = inst.num_signals();
    if (m > 20) throw PreconditionError("equilibrium enumeration capped at 20 signals");

    std::vector<EnumeratedEquilibrium> found;
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << m); ++mask) {
        const PsiAnalysis analysis = analyze_psi(inst, mask);
        if (!analysis.feasible) continue;
        EnumeratedEquilibrium eq;
        eq.psi.deterministic = true;
        eq.psi.accept_prob.assign(m, Rational(0));
        for (int g = 0; g < m; ++g)
            if ((mask >> g) & 1u) eq.psi.accept_prob[g] = 1;
        eq.sender_utility = 0;
        for (int s = 0; s < inst.num_states(); ++s)
            for (int g : inst.state_signals[s])
                if ((mask >> g) & 1u) {
                    eq.sender_utility += inst.states[s].q;
                    break;
                }
        eq.receiver_utility_min = analysis.receiver_min;
        eq.receiver_utility_max = analysis.receiver_max;
        found.push_back(std::move(eq));
    }
    return found;
}

PriceReport price_report(const Instance& inst) {
    PriceReport report;
    report.receiver_optimum = delegation_oracle(inst).utility;
    report.sender_optimum = persuasion_oracle(inst).utility;

    const auto equilibria = enumerate_deterministic_equilibria(inst);
    Rational rec_worst, rec_best, send_worst, send_best;
    bool first = true;
    for (const auto& eq : equilibria) {
        if (first) {
            rec_worst = eq.receiver_utility_min;
            rec_best = eq.receiver_utility_max;
            send_worst = send_best = eq.sender_utility;
            first = false;
            continue;
        }
        rec_worst = std::min(rec_worst, eq.receiver_utility_min);
        rec_best = std::max(rec_best, eq.receiver_utility_max);
        send_worst = std::min(send_worst, eq.sender_utility);
        send_best = std::max(send_best, eq.sender_utility);
    }
    if (first) throw PreconditionError("no deterministic equilibrium found");

    auto ratio = [](const Rational& opt, const Rational& eq) -> std::optional<Rational> {
        if (eq == 0) {
            if (opt == 0) return Rational(1);
            return std::nullopt;  // infinity
        }
        return Rational(opt / eq);
    };
    report.receiver_poa = ratio(report.receiver_optimum, rec_worst);
    report.receiver_pos = ratio(report.receiver_optimum, rec_best);
    report.sender_poa = ratio(report.sender_optimum, send_worst);
    report.sender_pos = ratio(report.sender_optimum, send_best);
    return report;
}

}  // namespace pwe
