#include "pwe/persuasion.hpp"

#include "pwe/errors.hpp"

#include <algorithm>
#include <cmath>

namespace pwe {

namespace {

// Canonical filler: every listed state puts its full mass on its first
// alive signal. Used for the always-feasible empty-accept fallback.
void canonical_rows(const Instance& inst, const std::vector<char>& state_alive,
                    const std::vector<char>& signal_alive, SignalingScheme& phi) {
    for (int s = 0; s < inst.num_states(); ++s) {
        if (!state_alive[s]) continue;
        for (int g : inst.state_signals[s])
            if (signal_alive[g]) {
                phi.mass[inst.edge_index(s, g)] = inst.states[s].q;
                break;
            }
    }
}

struct SubLpResult {
    bool feasible = false;
    Rational value;  // mass landing on accept signals
    std::vector<std::pair<int, Rational>> edge_mass;
};

// Partition LP restricted to an induced subgraph (used componentwise by the
// laminar-states solver; full instance otherwise). States of degree 1 are
// folded into the signal rows as constants.
SubLpResult partition_lp(const Instance& inst, const std::vector<char>& accept,
                         const std::vector<char>& state_alive, const std::vector<char>& signal_alive) {
    SubLpResult out;

    std::vector<Rational> fixed_acc(inst.num_signals(), Rational(0));
    std::vector<Rational> fixed_rej(inst.num_signals(), Rational(0));
    std::vector<std::pair<int, Rational>> fixed_edges;
    Rational fixed_value = 0;

    LinearProgram lp;
    std::vector<int> edge_var(inst.num_edges(), -1);
    std::vector<int> var_edge;

    for (int s = 0; s < inst.num_states(); ++s) {
        if (!state_alive[s]) continue;
        int alive_deg = 0, only_edge = -1;
        for (int e : inst.state_edges[s])
            if (signal_alive[inst.edges[e].second]) {
                ++alive_deg;
                only_edge = e;
            }
        if (alive_deg == 1) {
            const int g = inst.edges[only_edge].second;
            (inst.states[s].acceptable ? fixed_acc : fixed_rej)[g] += inst.states[s].q;
            fixed_edges.push_back({only_edge, inst.states[s].q});
            if (accept[g]) fixed_value += inst.states[s].q;
            continue;
        }
        std::vector<std::pair<int, Rational>> row;
        for (int e : inst.state_edges[s]) {
            const int g = inst.edges[e].second;
            if (!signal_alive[g]) continue;
            const int v = lp.add_var(accept[g] ? Rational(1) : Rational(0));
            edge_var[e] = v;
            var_edge.push_back(e);
            row.push_back({v, Rational(1)});
        }
        lp.add_row(std::move(row), RowSense::EQ, inst.states[s].q);
    }
    lp.objective_constant = fixed_value;

    for (int g = 0; g < inst.num_signals(); ++g) {
        if (!signal_alive[g]) continue;
        // accept: mass_R - mass_A <= 0; reject: mass_A - mass_R <= 0.
        std::vector<std::pair<int, Rational>> row;
        for (int e : inst.signal_edges[g]) {
            if (edge_var[e] < 0) continue;
            const bool acc_state = inst.states[inst.edges[e].first].acceptable;
            row.push_back({edge_var[e], accept[g] ? (acc_state ? Rational(-1) : Rational(1))
                                                  : (acc_state ? Rational(1) : Rational(-1))});
        }
        const Rational rhs = accept[g] ? Rational(fixed_acc[g] - fixed_rej[g])
                                       : Rational(fixed_rej[g] - fixed_acc[g]);
        if (row.empty()) {
            if (rhs < 0) return out;  // constants alone violate the preference
            continue;
        }
        lp.add_row(std::move(row), RowSense::LE, rhs);
    }

    const LpSolution sol = lp_solve_exact(lp);
    if (sol.status != LpStatus::Optimal) return out;
    out.feasible = true;
    out.value = sol.value;
    out.edge_mass = std::move(fixed_edges);
    for (size_t v = 0; v < var_edge.size(); ++v)
        if (sol.x[v] != 0) out.edge_mass.push_back({var_edge[v], sol.x[v]});
    return out;
}

std::vector<char> accept_flags(const Instance& inst, const std::vector<int>& accept) {
    std::vector<char> flags(inst.num_signals(), 0);
    for (int g : accept) flags[g] = 1;
    return flags;
}

}  // namespace

GeneralPersuasionSpec two_action_spec(const Instance& inst) {
    GeneralPersuasionSpec spec;
    spec.num_actions = 2;  // action 0 = reject, action 1 = accept
    spec.u_sender.assign(2, std::vector<Rational>(inst.num_states(), Rational(0)));
    spec.u_receiver.assign(2, std::vector<Rational>(inst.num_states(), Rational(0)));
    for (int s = 0; s < inst.num_states(); ++s) {
        spec.u_sender[1][s] = 1;
        spec.u_receiver[1][s] = inst.states[s].acceptable ? 1 : 0;
        spec.u_receiver[0][s] = inst.states[s].acceptable ? 0 : 1;
    }
    return spec;
}

LinearProgram build_partition_lp(const Instance& inst, const std::vector<int>& action_of_signal,
                                 const GeneralPersuasionSpec& spec, std::vector<int>* edge_var_out) {
    LinearProgram lp;
    std::vector<int> edge_var(inst.num_edges());
    for (int e = 0; e < inst.num_edges(); ++e) {
        const auto [s, g] = inst.edges[e];
        edge_var[e] = lp.add_var(spec.u_sender[action_of_signal[g]][s]);
    }
    for (int s = 0; s < inst.num_states(); ++s) {
        std::vector<std::pair<int, Rational>> row;
        for (int e : inst.state_edges[s]) row.push_back({edge_var[e], Rational(1)});
        lp.add_row(std::move(row), RowSense::EQ, inst.states[s].q);
    }
    for (int g = 0; g < inst.num_signals(); ++g) {
        const int a = action_of_signal[g];
        for (int other = 0; other < spec.num_actions; ++other) {
            if (other == a) continue;
            std::vector<std::pair<int, Rational>> row;
            for (int e : inst.signal_edges[g]) {
                const int s = inst.edges[e].first;
                const Rational diff = spec.u_receiver[a][s] - spec.u_receiver[other][s];
                if (diff != 0) row.push_back({edge_var[e], diff});
            }
            if (!row.empty()) lp.add_row(std::move(row), RowSense::GE, Rational(0));
        }
    }
    if (edge_var_out) *edge_var_out = std::move(edge_var);
    return lp;
}

std::optional<PersuasionResult> optimal_for_partition(const Instance& inst,
                                                      const SignalPartition& partition) {
    const std::vector<char> all(inst.num_states(), 1);
    const std::vector<char> all_sig(inst.num_signals(), 1);
    PersuasionResult result;
    result.phi.mass.assign(inst.num_edges(), Rational(0));
    if (partition.accept.empty()) {
        canonical_rows(inst, all, all_sig, result.phi);
        result.utility = 0;
        return result;
    }
    const SubLpResult sub = partition_lp(inst, accept_flags(inst, partition.accept), all, all_sig);
    if (!sub.feasible) return std::nullopt;
    for (const auto& [e, v] : sub.edge_mass) result.phi.mass[e] = v;
    result.utility = sub.value;
    return result;
}

PersuasionResult approx_2n(const Instance& inst) {
    PersuasionResult best;
    best.phi.mass.assign(inst.num_edges(), Rational(0));
    const std::vector<char> all(inst.num_states(), 1);
    const std::vector<char> all_sig(inst.num_signals(), 1);
    canonical_rows(inst, all, all_sig, best.phi);
    best.utility = evaluate(inst, best.phi, receiver_best_response(inst, best.phi)).sender;

    for (int g = 0; g < inst.num_signals(); ++g) {
        Rational accept_mass = 0;
        for (int s : inst.signal_states[g])
            if (inst.states[s].acceptable) accept_mass += inst.states[s].q;
        Rational forced = 0;
        for (int s : inst.signal_states[g])
            if (!inst.states[s].acceptable && inst.state_signals[s].size() == 1)
                forced += inst.states[s].q;
        if (forced > accept_mass) continue;  // sigma cannot be made an accept signal

        SignalingScheme phi;
        phi.mass.assign(inst.num_edges(), Rational(0));
        Rational room = accept_mass - forced;
        for (int s = 0; s < inst.num_states(); ++s) {
            const bool neighbor = inst.edge_index(s, g) >= 0;
            if (inst.states[s].acceptable) {
                if (neighbor)
                    phi.mass[inst.edge_index(s, g)] = inst.states[s].q;
                else
                    phi.mass[inst.state_edges[s].front()] = inst.states[s].q;
                continue;
            }
            if (!neighbor) {
                phi.mass[inst.state_edges[s].front()] = inst.states[s].q;
                continue;
            }
            if (inst.state_signals[s].size() == 1) {
                phi.mass[inst.edge_index(s, g)] = inst.states[s].q;
                continue;
            }
            const Rational used = std::min(inst.states[s].q, room);
            room -= used;
            if (used > 0) phi.mass[inst.edge_index(s, g)] = used;
            if (inst.states[s].q > used) {
                for (int other : inst.state_signals[s])
                    if (other != g) {
                        phi.mass[inst.edge_index(s, other)] += inst.states[s].q - used;
                        break;
                    }
            }
        }
        const Rational utility = evaluate(inst, phi, receiver_best_response(inst, phi)).sender;
        if (utility > best.utility) {
            best.phi = std::move(phi);
            best.utility = utility;
        }
    }
    return best;
}

Rational captive_reject_mass(const Instance& inst, const std::vector<char>& in_set) {
    Rational total = 0;
    for (int s = 0; s < inst.num_states(); ++s) {
        if (inst.states[s].acceptable) continue;
        bool inside = true;
        for (int g : inst.state_signals[s])
            if (!in_set[g]) {
                inside = false;
                break;
            }
        if (inside) total += inst.states[s].q;
    }
    return total;
}

bool unique_accepts_partition_feasible(const Instance& inst, const std::vector<int>& accept) {
    int theta_a = -1;
    for (int s = 0; s < inst.num_states(); ++s)
        if (inst.states[s].acceptable) {
            if (theta_a >= 0) throw PreconditionError("unique accepts required");
            theta_a = s;
        }
    if (theta_a < 0) throw PreconditionError("unique accepts required");
    if (accept.empty()) return false;
    for (int g : accept)
        if (inst.edge_index(theta_a, g) < 0) return false;
    std::vector<char> flags(inst.num_signals(), 0);
    for (int g : accept) flags[g] = 1;
    return captive_reject_mass(inst, flags) <= inst.states[theta_a].q;
}

namespace {

int require_unique_accept_state(const Instance& inst) {
    int theta_a = -1;
    for (int s = 0; s < inst.num_states(); ++s)
        if (inst.states[s].acceptable) {
            if (theta_a >= 0) throw PreconditionError("solver requires unique accepts");
            theta_a = s;
        }
    if (theta_a < 0) throw PreconditionError("solver requires unique accepts");
    return theta_a;
}

// Greedy scheme of the unique-accepts characterization for accept set T.
SignalingScheme unique_accepts_greedy(const Instance& inst, int theta_a, const std::vector<int>& T) {
    SignalingScheme phi;
    phi.mass.assign(inst.num_edges(), Rational(0));
    std::vector<char> in_T(inst.num_signals(), 0);
    for (int g : T) in_T[g] = 1;
    const Rational qa = inst.states[theta_a].q;

    std::vector<Rational> reject_on(inst.num_signals(), Rational(0));
    Rational placed = 0;

    // Captive rejectable states have no choice; then top the accept signals
    // up to the q_a budget with the other rejectable neighbors.
    for (int s = 0; s < inst.num_states(); ++s) {
        if (inst.states[s].acceptable) continue;
        bool captive = true;
        for (int g : inst.state_signals[s])
            if (!in_T[g]) captive = false;
        if (!captive) continue;
        const int g = inst.state_signals[s].front();
        phi.mass[inst.edge_index(s, g)] = inst.states[s].q;
        reject_on[g] += inst.states[s].q;
        placed += inst.states[s].q;
    }
    for (int s = 0; s < inst.num_states(); ++s) {
        if (inst.states[s].acceptable) continue;
        int first_T = -1, first_out = -1;
        for (int g : inst.state_signals[s]) {
            if (in_T[g] && first_T < 0) first_T = g;
            if (!in_T[g] && first_out < 0) first_out = g;
        }
        if (first_T < 0 || first_out < 0) continue;  // captive or unrelated
        const Rational used = std::min(inst.states[s].q, Rational(qa - placed));
        if (used > 0) {
            phi.mass[inst.edge_index(s, first_T)] = used;
            reject_on[first_T] += used;
            placed += used;
        }
        if (inst.states[s].q > used)
            phi.mass[inst.edge_index(s, first_out)] += inst.states[s].q - used;
    }
    for (int s = 0; s < inst.num_states(); ++s) {
        if (inst.states[s].acceptable || s == theta_a) continue;
        bool touched = false;
        for (int e : inst.state_edges[s])
            if (phi.mass[e] != 0) touched = true;
        if (touched) continue;
        phi.mass[inst.state_edges[s].front()] = inst.states[s].q;  // away from T
    }

    // theta_a balances each accept signal, leftover on the first one.
    Rational left = qa;
    for (int g : T) {
        phi.mass[inst.edge_index(theta_a, g)] = reject_on[g];
        left -= reject_on[g];
    }
    phi.mass[inst.edge_index(theta_a, T.front())] += left;
    return phi;
}

}  // namespace

PersuasionResult ptas_unique_accepts(const Instance& inst, double epsilon) {
    if (!(epsilon > 0.0 && epsilon <= 1.0)) throw InputError("epsilon must lie in (0,1]");
    const int theta_a = require_unique_accept_state(inst);
    const Rational qa = inst.states[theta_a].q;

    std::vector<Rational> captive_single(inst.num_signals(), Rational(0));
    for (int s = 0; s < inst.num_states(); ++s)
        if (!inst.states[s].acceptable && inst.state_signals[s].size() == 1)
            captive_single[inst.state_signals[s].front()] += inst.states[s].q;

    // eps * qa as an exact threshold; epsilon is a binary fraction.
    const Rational eps_rational(epsilon);
    std::vector<int> heavy, light;
    for (int g : inst.state_signals[theta_a]) {
        if (captive_single[g] >= eps_rational * qa)
            heavy.push_back(g);
        else
            light.push_back(g);
    }
    const int kmax = static_cast<int>(std::floor(1.0 / epsilon + 1e-9));

    Rational best_value = -1;
    std::vector<int> best_T;

    auto consider_chain = [&](std::vector<int> base) {
        std::vector<int> T = std::move(base);
        std::sort(T.begin(), T.end());
        std::vector<char> in_T(inst.num_signals(), 0);
        for (int g : T) in_T[g] = 1;
        while (true) {
            if (captive_reject_mass(inst, in_T) > qa) break;
            // Value of Sigma_A = T: min(2 qa, mass of N(T)).
            Rational reach = 0;
            if (!T.empty()) {
                std::vector<char> seen(inst.num_states(), 0);
                for (int g : T)
                    for (int s : inst.signal_states[g])
                        if (!seen[s]) {
                            seen[s] = 1;
                            reach += inst.states[s].q;
                        }
            }
            const Rational value = T.empty() ? Rational(0) : std::min(Rational(2 * qa), reach);
            if (value > best_value || (value == best_value && T < best_T)) {
                best_value = value;
                best_T = T;
            }
            int next = -1;
            for (int g : light)
                if (!in_T[g]) {
                    next = g;
                    break;
                }
            if (next < 0) break;
            in_T[next] = 1;
            T.insert(std::lower_bound(T.begin(), T.end(), next), next);
        }
    };

    // Enumerate heavy subsets of size at most 1/epsilon.
    std::vector<int> chosen;
    auto enumerate = [&](auto&& self, int idx) -> void {
        consider_chain(chosen);
        if (static_cast<int>(chosen.size()) == kmax) return;
        for (int i = idx; i < static_cast<int>(heavy.size()); ++i) {
            chosen.push_back(heavy[i]);
            self(self, i + 1);
            chosen.pop_back();
        }
    };
    enumerate(enumerate, 0);

    PersuasionResult result;
    result.phi.mass.assign(inst.num_edges(), Rational(0));
    if (best_T.empty()) {
        const std::vector<char> all(inst.num_states(), 1), all_sig(inst.num_signals(), 1);
        canonical_rows(inst, all, all_sig, result.phi);
    } else {
        result.phi = unique_accepts_greedy(inst, theta_a, best_T);
    }
    result.utility = evaluate(inst, result.phi, receiver_best_response(inst, result.phi)).sender;
    return result;
}

PersuasionResult unique_rejects_exact(const Instance& inst) {
    int theta_r = -1;
    for (int s = 0; s < inst.num_states(); ++s)
        if (!inst.states[s].acceptable) {
            if (theta_r >= 0) throw PreconditionError("solver requires unique rejects");
            theta_r = s;
        }
    if (theta_r < 0) throw PreconditionError("solver requires unique rejects");

    const auto& reject_signals = inst.state_signals[theta_r];
    std::vector<char> in_prime(inst.num_signals(), 0);
    for (int g : reject_signals) in_prime[g] = 1;

    Rational incident = 0;
    for (int s = 0; s < inst.num_states(); ++s) {
        if (!inst.states[s].acceptable) continue;
        for (int g : inst.state_signals[s])
            if (in_prime[g]) {
                incident += inst.states[s].q;
                break;
            }
    }

    if (incident >= inst.states[theta_r].q) {
        // Enough acceptable mass meets theta_r's signals: spread the reject
        // mass under the acceptable cover and accept everything.
        PersuasionResult result;
        result.phi.mass.assign(inst.num_edges(), Rational(0));
        std::vector<Rational> cover(inst.num_signals(), Rational(0));
        for (int s = 0; s < inst.num_states(); ++s) {
            if (!inst.states[s].acceptable) continue;
            int target = -1;
            for (int g : inst.state_signals[s])
                if (in_prime[g]) {
                    target = g;
                    break;
                }
            if (target < 0) target = inst.state_signals[s].front();
            result.phi.mass[inst.edge_index(s, target)] = inst.states[s].q;
            if (in_prime[target]) cover[target] += inst.states[s].q;
        }
        Rational left = inst.states[theta_r].q;
        for (int g : reject_signals) {
            const Rational used = std::min(left, cover[g]);
            if (used > 0) result.phi.mass[inst.edge_index(theta_r, g)] = used;
            left -= used;
            if (left == 0) break;
        }
        result.utility = evaluate(inst, result.phi, receiver_best_response(inst, result.phi)).sender;
        return result;
    }

    PersuasionResult best;
    best.phi.mass.assign(inst.num_edges(), Rational(0));
    const std::vector<char> all(inst.num_states(), 1), all_sig(inst.num_signals(), 1);
    canonical_rows(inst, all, all_sig, best.phi);
    best.utility = 0;
    bool have = false;
    for (int g : reject_signals) {
        std::vector<int> accept;
        for (int other = 0; other < inst.num_signals(); ++other)
            if (other != g) accept.push_back(other);
        const auto cand = optimal_for_partition(inst, partition_from_accept_set(inst, accept));
        if (!cand) continue;
        if (!have || cand->utility > best.utility) {
            best = *cand;
            have = true;
        }
    }
    return best;
}

PersuasionResult global_signal_exact(const Instance& inst) {
    int global = -1;
    for (int g = 0; g < inst.num_signals(); ++g)
        if (static_cast<int>(inst.signal_states[g].size()) == inst.num_states()) {
            global = g;
            break;
        }
    if (global < 0) throw PreconditionError("solver requires a global signal");

    const auto only = optimal_for_partition(inst, partition_from_accept_set(inst, {global}));
    std::vector<int> rest;
    for (int g = 0; g < inst.num_signals(); ++g)
        if (g != global) rest.push_back(g);
    const auto others = optimal_for_partition(inst, partition_from_accept_set(inst, rest));

    if (only && (!others || only->utility >= others->utility)) return *only;
    if (others) return *others;
    PersuasionResult fallback;
    fallback.phi.mass.assign(inst.num_edges(), Rational(0));
    const std::vector<char> all(inst.num_states(), 1), all_sig(inst.num_signals(), 1);
    canonical_rows(inst, all, all_sig, fallback.phi);
    fallback.utility = 0;
    return fallback;
}

PersuasionResult membership_exact_persuasion(const Instance& inst) {
    if (!classify(inst).proof_of_membership_shape)
        throw PreconditionError("solver requires proof-of-membership shape");
    int global = -1;
    for (int g = 0; g < inst.num_signals(); ++g)
        if (static_cast<int>(inst.signal_states[g].size()) == inst.num_states()) global = g;

    PersuasionResult result;
    result.phi.mass.assign(inst.num_edges(), Rational(0));
    const Rational q_a = inst.q_acceptable();
    const Rational q_r = inst.q_rejectable();

    if (q_a >= q_r) {
        for (int s = 0; s < inst.num_states(); ++s)
            result.phi.mass[inst.edge_index(s, global)] = inst.states[s].q;
    } else {
        // Acceptable states stay silent; rejectable mass joins them on the
        // global signal up to q_A, the rest goes to the singleton signals.
        std::vector<int> singleton_of(inst.num_states(), -1);
        for (int g = 0; g < inst.num_signals(); ++g)
            if (inst.signal_states[g].size() == 1) singleton_of[inst.signal_states[g].front()] = g;
        for (int s = 0; s < inst.num_states(); ++s)
            if (inst.states[s].acceptable) result.phi.mass[inst.edge_index(s, global)] = inst.states[s].q;
        Rational room = q_a;
        for (int s = 0; s < inst.num_states(); ++s) {
            if (inst.states[s].acceptable) continue;
            const Rational used = std::min(room, inst.states[s].q);
            room -= used;
            if (used > 0) result.phi.mass[inst.edge_index(s, global)] = used;
            if (inst.states[s].q > used)
                result.phi.mass[inst.edge_index(s, singleton_of[s])] += inst.states[s].q - used;
        }
    }
    result.utility = evaluate(inst, result.phi, receiver_best_response(inst, result.phi)).sender;
    return result;
}

PersuasionResult laminar_states_exact_persuasion(const Instance& inst) {
    if (!classify(inst).laminar_states) throw PreconditionError("solver requires laminar states");

    const Components comps = connected_components(inst);
    PersuasionResult result;
    result.phi.mass.assign(inst.num_edges(), Rational(0));
    result.utility = 0;

    for (int c = 0; c < comps.count; ++c) {
        std::vector<char> state_alive(inst.num_states(), 0), signal_alive(inst.num_signals(), 0);
        int comp_states = 0;
        for (int s = 0; s < inst.num_states(); ++s)
            if (comps.state_component[s] == c) {
                state_alive[s] = 1;
                ++comp_states;
            }
        for (int g = 0; g < inst.num_signals(); ++g)
            if (comps.signal_component[g] == c) signal_alive[g] = 1;

        int global = -1;  // the component's maximal signal reaches all its states
        for (int g = 0; g < inst.num_signals(); ++g)
            if (signal_alive[g] && static_cast<int>(inst.signal_states[g].size()) == comp_states) {
                global = g;
                break;
            }
        if (global < 0) throw PreconditionError("laminar-states component lacks a maximal signal");

        std::vector<char> accept_only(inst.num_signals(), 0);
        accept_only[global] = 1;
        std::vector<char> accept_rest(inst.num_signals(), 0);
        for (int g = 0; g < inst.num_signals(); ++g)
            if (signal_alive[g] && g != global) accept_rest[g] = 1;

        const SubLpResult a = partition_lp(inst, accept_only, state_alive, signal_alive);
        const SubLpResult b = partition_lp(inst, accept_rest, state_alive, signal_alive);
        const SubLpResult* pick = nullptr;
        if (a.feasible && (!b.feasible || a.value >= b.value)) pick = &a;
        else if (b.feasible) pick = &b;

        if (pick) {
            for (const auto& [e, v] : pick->edge_mass) result.phi.mass[e] = v;
            result.utility += pick->value;
        } else {
            canonical_rows(inst, state_alive, signal_alive, result.phi);
        }
    }
    return result;
}

}  // namespace pwe
