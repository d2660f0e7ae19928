#include "pwe/schemes.hpp"

#include "pwe/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <sstream>

namespace pwe {

using nlohmann::json;

SignalPartition partition_from_accept_set(const Instance& inst, std::vector<int> accept) {
    std::sort(accept.begin(), accept.end());
    accept.erase(std::unique(accept.begin(), accept.end()), accept.end());
    SignalPartition part;
    part.accept = std::move(accept);
    for (int g = 0; g < inst.num_signals(); ++g)
        if (!std::binary_search(part.accept.begin(), part.accept.end(), g)) part.reject.push_back(g);
    return part;
}

void check_scheme(const Instance& inst, const SignalingScheme& phi) {
    if (static_cast<int>(phi.mass.size()) != inst.num_edges())
        throw InputError("signaling scheme does not match instance edge count");
    for (const auto& v : phi.mass)
        if (v < 0) throw InputError("signaling scheme has negative mass");
    for (int s = 0; s < inst.num_states(); ++s) {
        Rational row = 0;
        for (int e : inst.state_edges[s]) row += phi.mass[e];
        if (row != inst.states[s].q)
            throw InputError("signaling scheme row sum for state " + inst.states[s].id +
                             " is " + rational_to_string(row) + ", expected " +
                             rational_to_string(inst.states[s].q));
    }
}

void check_scheme(const Instance& inst, const DecisionScheme& psi) {
    if (static_cast<int>(psi.accept_prob.size()) != inst.num_signals())
        throw InputError("decision scheme does not match instance signal count");
    for (const auto& v : psi.accept_prob) {
        if (v < 0 || v > 1) throw InputError("decision scheme value outside [0,1]");
        if (psi.deterministic && v != 0 && v != 1)
            throw InputError("decision scheme flagged deterministic has fractional value");
    }
}

Rational signal_mass_acceptable(const Instance& inst, const SignalingScheme& phi, int g) {
    Rational total = 0;
    for (int e : inst.signal_edges[g])
        if (inst.states[inst.edges[e].first].acceptable) total += phi.mass[e];
    return total;
}

Rational signal_mass_rejectable(const Instance& inst, const SignalingScheme& phi, int g) {
    Rational total = 0;
    for (int e : inst.signal_edges[g])
        if (!inst.states[inst.edges[e].first].acceptable) total += phi.mass[e];
    return total;
}

Rational signal_mass_total(const Instance& inst, const SignalingScheme& phi, int g) {
    Rational total = 0;
    for (int e : inst.signal_edges[g]) total += phi.mass[e];
    return total;
}

UtilityPair evaluate(const Instance& inst, const SignalingScheme& phi, const DecisionScheme& psi) {
    check_scheme(inst, phi);
    check_scheme(inst, psi);
    UtilityPair u{0, 0};
    for (int g = 0; g < inst.num_signals(); ++g) {
        const Rational a = signal_mass_acceptable(inst, phi, g);
        const Rational r = signal_mass_rejectable(inst, phi, g);
        u.sender += psi.accept_prob[g] * (a + r);
        u.receiver += psi.accept_prob[g] * a + (1 - psi.accept_prob[g]) * r;
    }
    return u;
}

SignalingScheme sender_best_response(const Instance& inst, const DecisionScheme& psi) {
    check_scheme(inst, psi);
    SignalingScheme phi;
    phi.mass.assign(inst.num_edges(), Rational(0));
    for (int s = 0; s < inst.num_states(); ++s) {
        int best = inst.state_signals[s].front();
        for (int g : inst.state_signals[s])
            if (psi.accept_prob[g] > psi.accept_prob[best]) best = g;
        phi.mass[inst.edge_index(s, best)] = inst.states[s].q;
    }
    return phi;
}

DecisionScheme receiver_best_response(const Instance& inst, const SignalingScheme& phi) {
    check_scheme(inst, phi);
    DecisionScheme psi;
    psi.deterministic = true;
    psi.accept_prob.assign(inst.num_signals(), Rational(0));
    for (int g = 0; g < inst.num_signals(); ++g) {
        const Rational a = signal_mass_acceptable(inst, phi, g);
        const Rational r = signal_mass_rejectable(inst, phi, g);
        psi.accept_prob[g] = (a >= r) ? 1 : 0;
    }
    return psi;
}

EquilibriumVerdict verify_equilibrium(const Instance& inst, const SignalingScheme& phi,
                                      const DecisionScheme& psi) {
    check_scheme(inst, phi);
    check_scheme(inst, psi);
    EquilibriumVerdict verdict;

    // Sender: each state's mass must sit on argmax of psi over its signals.
    for (int s = 0; s < inst.num_states(); ++s) {
        Rational best = 0;
        for (int g : inst.state_signals[s]) best = std::max(best, psi.accept_prob[g]);
        for (int e : inst.state_edges[s]) {
            const int g = inst.edges[e].second;
            if (phi.mass[e] > 0 && psi.accept_prob[g] != best) {
                std::ostringstream msg;
                msg << "sender-deviation: state " << inst.states[s].id << " sends "
                    << inst.signals[g] << " with psi=" << rational_to_string(psi.accept_prob[g])
                    << " but max is " << rational_to_string(best);
                verdict.violations.push_back(msg.str());
            }
        }
    }

    // Receiver, on-path signals only.
    for (int g = 0; g < inst.num_signals(); ++g) {
        if (signal_mass_total(inst, phi, g) == 0) continue;
        const Rational a = signal_mass_acceptable(inst, phi, g);
        const Rational r = signal_mass_rejectable(inst, phi, g);
        const Rational& p = psi.accept_prob[g];
        const bool bad = (p == 1 && a < r) || (p == 0 && a > r) || (p != 0 && p != 1 && a != r);
        if (bad) {
            std::ostringstream msg;
            msg << "receiver-irrational: signal " << inst.signals[g]
                << " has accept mass " << rational_to_string(a) << ", reject mass "
                << rational_to_string(r) << ", psi=" << rational_to_string(p);
            verdict.violations.push_back(msg.str());
        }
    }

    verdict.accepted = verdict.violations.empty();
    return verdict;
}

json signaling_to_json(const Instance& inst, const SignalingScheme& phi) {
    json j = json::object();
    for (int e = 0; e < inst.num_edges(); ++e) {
        if (phi.mass[e] == 0) continue;
        const auto [s, g] = inst.edges[e];
        j[inst.states[s].id + "|" + inst.signals[g]] = rational_to_string(phi.mass[e]);
    }
    return j;
}

json decision_to_json(const Instance& inst, const DecisionScheme& psi) {
    json j = json::object();
    for (int g = 0; g < inst.num_signals(); ++g)
        j[inst.signals[g]] = rational_to_string(psi.accept_prob[g]);
    return j;
}

SignalingScheme signaling_from_json(const Instance& inst, const json& j) {
    SignalingScheme phi;
    phi.mass.assign(inst.num_edges(), Rational(0));
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string key = it.key();
        const auto sep = key.find('|');
        if (sep == std::string::npos) throw InputError("phi key missing '|': " + key);
        const int s = inst.state_index(key.substr(0, sep));
        const int g = inst.signal_index(key.substr(sep + 1));
        if (s < 0 || g < 0) throw InputError("phi key references unknown node: " + key);
        const int e = inst.edge_index(s, g);
        if (e < 0) throw InputError("phi key is not an instance edge: " + key);
        phi.mass[e] = rational_from_string(it.value().get<std::string>());
    }
    return phi;
}

DecisionScheme decision_from_json(const Instance& inst, const json& j) {
    DecisionScheme psi;
    psi.accept_prob.assign(inst.num_signals(), Rational(0));
    for (auto it = j.begin(); it != j.end(); ++it) {
        const int g = inst.signal_index(it.key());
        if (g < 0) throw InputError("psi key references unknown signal: " + it.key());
        psi.accept_prob[g] = rational_from_string(it.value().get<std::string>());
    }
    psi.deterministic = true;
    for (const auto& v : psi.accept_prob)
        if (v != 0 && v != 1) psi.deterministic = false;
    return psi;
}

}  // namespace pwe
