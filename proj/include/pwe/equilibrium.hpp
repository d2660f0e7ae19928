#ifndef PWE_EQUILIBRIUM_HPP
#define PWE_EQUILIBRIUM_HPP

#include "pwe/instance.hpp"
#include "pwe/rational.hpp"
#include "pwe/schemes.hpp"

#include <optional>
#include <string>
#include <vector>

namespace pwe {

struct EquilibriumIteration {
    std::string kind;               // "all-saturated", "accept-region", "reject-tail"
    std::vector<int> fixed_signals;
    std::vector<int> removed_accept_states;
    std::vector<int> removed_reject_states;
};

struct EquilibriumResult {
    SignalingScheme phi;
    DecisionScheme psi;
    std::vector<EquilibriumIteration> trace;
};

// Repeated max-flow construction of a sequential equilibrium. The output
// always passes verify_equilibrium; the number of flow iterations is at most
// min(n, m).
EquilibriumResult compute_equilibrium(const Instance& instance);

struct EnumeratedEquilibrium {
    DecisionScheme psi;
    Rational sender_utility;
    Rational receiver_utility_min;  // worst signaling scheme supporting psi
    Rational receiver_utility_max;  // best one
};

// All deterministic decision schemes that extend to a sequential equilibrium,
// with the receiver-utility range over supporting sender best responses.
// Requires m <= 20.
std::vector<EnumeratedEquilibrium> enumerate_deterministic_equilibria(const Instance& instance);

struct PriceReport {
    Rational receiver_optimum;  // delegation commitment optimum
    Rational sender_optimum;    // persuasion commitment optimum
    std::optional<Rational> receiver_poa, receiver_pos;  // nullopt encodes infinity
    std::optional<Rational> sender_poa, sender_pos;
};

PriceReport price_report(const Instance& instance);

}  // namespace pwe

#endif
