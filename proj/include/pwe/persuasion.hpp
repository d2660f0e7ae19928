#ifndef PWE_PERSUASION_HPP
#define PWE_PERSUASION_HPP

#include "pwe/instance.hpp"
#include "pwe/lp.hpp"
#include "pwe/rational.hpp"
#include "pwe/schemes.hpp"

#include <optional>
#include <vector>

namespace pwe {

struct PersuasionResult {
    SignalingScheme phi;
    Rational utility;  // sender utility
};

// General persuasion with a finite action set; the two-action game shipped
// end-to-end is the specialization below.
struct GeneralPersuasionSpec {
    int num_actions = 0;
    std::vector<std::vector<Rational>> u_sender;    // [action][state]
    std::vector<std::vector<Rational>> u_receiver;  // [action][state]
};

GeneralPersuasionSpec two_action_spec(const Instance& instance);

// LP of the given signal partition: receiver prefers the assigned action on
// every signal (weak inequalities), rows sum to the prior, sender utility is
// maximized. var_edges maps LP variables back to instance edge ids.
LinearProgram build_partition_lp(const Instance& instance, const std::vector<int>& action_of_signal,
                                 const GeneralPersuasionSpec& spec, std::vector<int>* edge_var);

// Two-action optimal scheme for a fixed accept/reject partition. Empty
// accept sets are feasible by definition with utility 0; otherwise nullopt
// signals that no scheme implements the partition.
std::optional<PersuasionResult> optimal_for_partition(const Instance& instance,
                                                      const SignalPartition& partition);

// Single-accept-signal sweep with the greedy mass assignment.
PersuasionResult approx_2n(const Instance& instance);

// Heavy-signal enumeration plus greedy growth; requires unique accepts.
// Guarantee: utility >= OPT / (1 + epsilon).
PersuasionResult ptas_unique_accepts(const Instance& instance, double epsilon);

PersuasionResult unique_rejects_exact(const Instance& instance);
PersuasionResult global_signal_exact(const Instance& instance);
PersuasionResult membership_exact_persuasion(const Instance& instance);
PersuasionResult laminar_states_exact_persuasion(const Instance& instance);

// Mass of rejectable states whose whole neighborhood lies inside the set.
Rational captive_reject_mass(const Instance& instance, const std::vector<char>& in_set);

// Feasibility characterization for unique-accepts partitions: nonempty
// Sigma_A implementable iff Sigma_A is inside N(theta_a) and the captive
// rejectable mass is at most q_{theta_a}.
bool unique_accepts_partition_feasible(const Instance& instance, const std::vector<int>& accept);

}  // namespace pwe

#endif
