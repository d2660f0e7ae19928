#ifndef PWE_SCHEMES_HPP
#define PWE_SCHEMES_HPP

#include "pwe/instance.hpp"
#include "pwe/rational.hpp"

#include <nlohmann/json_fwd.hpp>

#include <string>
#include <vector>

namespace pwe {

// Joint mass on edges, indexed like Instance::edges. Row sums must equal the
// priors exactly.
struct SignalingScheme {
    std::vector<Rational> mass;
};

struct DecisionScheme {
    std::vector<Rational> accept_prob;  // per signal, in [0,1]
    bool deterministic = false;         // true => all values in {0,1}
};

struct SignalPartition {
    std::vector<int> accept;  // sorted signal indices
    std::vector<int> reject;  // complement, sorted
};

SignalPartition partition_from_accept_set(const Instance& instance, std::vector<int> accept);

struct UtilityPair {
    Rational sender;
    Rational receiver;
};

// Throws InputError on scheme/instance mismatch (wrong sizes, negative mass,
// row-sum violation, probabilities outside [0,1]).
void check_scheme(const Instance& instance, const SignalingScheme& phi);
void check_scheme(const Instance& instance, const DecisionScheme& psi);

Rational signal_mass_acceptable(const Instance& instance, const SignalingScheme& phi, int signal);
Rational signal_mass_rejectable(const Instance& instance, const SignalingScheme& phi, int signal);
Rational signal_mass_total(const Instance& instance, const SignalingScheme& phi, int signal);

UtilityPair evaluate(const Instance& instance, const SignalingScheme& phi, const DecisionScheme& psi);

// Puts each state's full mass on its canonically-first argmax signal.
SignalingScheme sender_best_response(const Instance& instance, const DecisionScheme& psi);

// Deterministic; accepts iff acceptable mass >= rejectable mass (ties and
// zero-mass signals accept, favoring the sender).
DecisionScheme receiver_best_response(const Instance& instance, const SignalingScheme& phi);

struct EquilibriumVerdict {
    bool accepted = false;
    std::vector<std::string> violations;
};

EquilibriumVerdict verify_equilibrium(const Instance& instance, const SignalingScheme& phi,
                                      const DecisionScheme& psi);

nlohmann::json signaling_to_json(const Instance& instance, const SignalingScheme& phi);
nlohmann::json decision_to_json(const Instance& instance, const DecisionScheme& psi);
SignalingScheme signaling_from_json(const Instance& instance, const nlohmann::json& j);
DecisionScheme decision_from_json(const Instance& instance, const nlohmann::json& j);

}  // namespace pwe

#endif
