#ifndef PWE_INSTANCE_HPP
#define PWE_INSTANCE_HPP

#include "pwe/rational.hpp"

#include <nlohmann/json_fwd.hpp>

#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace pwe {

struct StateRecord {
    std::string id;
    bool acceptable = false;
    Rational q;
};

// Validated bipartite state-signal instance. States and signals are kept in
// lexicographic id order; this is the canonical iteration order everywhere.
// Instances are immutable after validation and safe to share across threads.
class Instance {
  public:
    std::vector<StateRecord> states;
    std::vector<std::string> signals;
    std::vector<std::pair<int, int>> edges;        // (state, signal), sorted
    std::vector<std::vector<int>> state_signals;   // sorted signal indices
    std::vector<std::vector<int>> signal_states;   // sorted state indices
    std::vector<std::vector<int>> state_edges;     // edge ids, by state
    std::vector<std::vector<int>> signal_edges;    // edge ids, by signal

    int num_states() const { return static_cast<int>(states.size()); }
    int num_signals() const { return static_cast<int>(signals.size()); }
    int num_edges() const { return static_cast<int>(edges.size()); }

    Rational q_acceptable() const;
    Rational q_rejectable() const;

    int state_index(const std::string& id) const;   // -1 if unknown
    int signal_index(const std::string& id) const;  // -1 if unknown
    int edge_index(int state, int signal) const;    // -1 if absent
};

enum class ValidationCode {
    PriorNotOne,
    IsolatedNode,
    DanglingEdge,
    NonpositiveProbability,
    DuplicateEdge,
    DuplicateId,
};

const char* validation_code_name(ValidationCode code);

struct ValidationIssue {
    ValidationCode code;
    std::string detail;
};

struct RawInstance {
    std::vector<StateRecord> states;
    std::vector<std::string> signals;
    std::vector<std::pair<std::string, std::string>> edges;
};

std::variant<Instance, std::vector<ValidationIssue>> validate_instance(const RawInstance& raw);

// Validation wrapper that throws InputError listing the issues.
Instance must_validate(const RawInstance& raw);

struct InstanceProfile {
    bool unique_accepts = false;
    bool unique_rejects = false;
    bool has_global_signal = false;
    bool proof_of_membership_shape = false;
    bool laminar_states = false;   // {N(sigma)} is a laminar family
    bool laminar_signals = false;  // {N(theta)} is a laminar family
    bool has_foresight = false;
    int max_state_degree = 0;
    int max_accept_degree = 0;
    int max_reject_degree = 0;
};

InstanceProfile classify(const Instance& instance);

// Signals are all nonempty subsets of the states; edge (theta, sigma) iff
// theta is a member of sigma. Throws PreconditionError for more than 20
// states (2^n signals are materialized).
Instance build_membership_instance(const std::vector<std::pair<bool, Rational>>& priors);

// Connected components of the bipartite graph. Component ids are assigned in
// canonical order starting from 0.
struct Components {
    int count = 0;
    std::vector<int> state_component;
    std::vector<int> signal_component;
};
Components connected_components(const Instance& instance);

nlohmann::json instance_to_json(const Instance& instance);
RawInstance raw_instance_from_json(const nlohmann::json& j);
Instance instance_from_json(const nlohmann::json& j);  // validates, throws InputError
Instance load_instance_file(const std::string& path);

}  // namespace pwe

#endif
