#include "pwe/instance.hpp"

#include "pwe/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace pwe {

using nlohmann::json;

Rational Instance::q_acceptable() const {
    Rational total = 0;
    for (const auto& s : states)
        if (s.acceptable) total += s.q;
    return total;
}

Rational Instance::q_rejectable() const {
    Rational total = 0;
    for (const auto& s : states)
        if (!s.acceptable) total += s.q;
    return total;
}

int Instance::state_index(const std::string& id) const {
    auto it = std::lower_bound(states.begin(), states.end(), id,
                               [](const StateRecord& s, const std::string& key) { return s.id < key; });
    if (it == states.end() || it->id != id) return -1;
    return static_cast<int>(it - states.begin());
}

int Instance::signal_index(const std::string& id) const {
    auto it = std::lower_bound(signals.begin(), signals.end(), id);
    if (it == signals.end() || *it != id) return -1;
    return static_cast<int>(it - signals.begin());
}

int Instance::edge_index(int state, int signal) const {
    auto it = std::lower_bound(edges.begin(), edges.end(), std::make_pair(state, signal));
    if (it == edges.end() || *it != std::make_pair(state, signal)) return -1;
    return static_cast<int>(it - edges.begin());
}

const char* validation_code_name(ValidationCode code) {
    switch (code) {
        case ValidationCode::PriorNotOne: return "prior-not-one";
        case ValidationCode::IsolatedNode: return "isolated-node";
        case ValidationCode::DanglingEdge: return "dangling-edge";
        case ValidationCode::NonpositiveProbability: return "nonpositive-probability";
        case ValidationCode::DuplicateEdge: return "duplicate-edge";
        case ValidationCode::DuplicateId: return "duplicate-id";
    }
    return "unknown";
}

std::variant<Instance, std::vector<ValidationIssue>> validate_instance(const RawInstance& raw) {
    std::vector<ValidationIssue> issues;

    Instance inst;
    inst.states = raw.states;
    inst.signals = raw.signals;
    std::sort(inst.states.begin(), inst.states.end(),
              [](const StateRecord& a, const StateRecord& b) { return a.id < b.id; });
    std::sort(inst.signals.begin(), inst.signals.end());

    for (size_t i = 1; i < inst.states.size(); ++i)
        if (inst.states[i].id == inst.states[i - 1].id)
            issues.push_back({ValidationCode::DuplicateId, "state " + inst.states[i].id});
    for (size_t i = 1; i < inst.signals.size(); ++i)
        if (inst.signals[i] == inst.signals[i - 1])
            issues.push_back({ValidationCode::DuplicateId, "signal " + inst.signals[i]});

    Rational total = 0;
    for (const auto& s : inst.states) {
        if (s.q <= 0)
            issues.push_back({ValidationCode::NonpositiveProbability,
                              "state " + s.id + " has q = " + rational_to_string(s.q)});
        total += s.q;
    }
    if (total != 1)
        issues.push_back({ValidationCode::PriorNotOne, "priors sum to " + rational_to_string(total)});

    std::set<std::pair<int, int>> edge_set;
    for (const auto& [sid, gid] : raw.edges) {
        const int s = inst.state_index(sid);
        const int g = inst.signal_index(gid);
        if (s < 0 || g < 0) {
            issues.push_back({ValidationCode::DanglingEdge, sid + " -- " + gid});
            continue;
        }
        if (!edge_set.insert({s, g}).second)
            issues.push_back({ValidationCode::DuplicateEdge, sid + " -- " + gid});
    }

    inst.edges.assign(edge_set.begin(), edge_set.end());
    inst.state_signals.assign(inst.states.size(), {});
    inst.signal_states.assign(inst.signals.size(), {});
    inst.state_edges.assign(inst.states.size(), {});
    inst.signal_edges.assign(inst.signals.size(), {});
    for (int e = 0; e < inst.num_edges(); ++e) {
        const auto [s, g] = inst.edges[e];
        inst.state_signals[s].push_back(g);
        inst.signal_states[g].push_back(s);
        inst.state_edges[s].push_back(e);
        inst.signal_edges[g].push_back(e);
    }
    for (int s = 0; s < inst.num_states(); ++s)
        if (inst.state_signals[s].empty())
            issues.push_back({ValidationCode::IsolatedNode, "state " + inst.states[s].id});
    for (int g = 0; g < inst.num_signals(); ++g)
        if (inst.signal_states[g].empty())
            issues.push_back({ValidationCode::IsolatedNode, "signal " + inst.signals[g]});

    if (!issues.empty()) return issues;
    return inst;
}

Instance must_validate(const RawInstance& raw) {
    auto result = validate_instance(raw);
    if (std::holds_alternative<Instance>(result)) return std::get<Instance>(std::move(result));
    std::ostringstream msg;
    msg << "invalid instance:";
    for (const auto& issue : std::get<std::vector<ValidationIssue>>(result))
        msg << " [" << validation_code_name(issue.code) << ": " << issue.detail << "]";
    throw InputError(msg.str());
}

namespace {

bool laminar_family(const std::vector<std::vector<int>>& sets) {
    // Every pair must be nested or disjoint. Neighborhood lists are sorted.
    const int k = static_cast<int>(sets.size());
    for (int a = 0; a < k; ++a) {
        for (int b = a + 1; b < k; ++b) {
            std::vector<int> common;
            std::set_intersection(sets[a].begin(), sets[a].end(), sets[b].begin(), sets[b].end(),
                                  std::back_inserter(common));
            if (common.empty()) continue;
            if (common.size() != sets[a].size() && common.size() != sets[b].size()) return false;
        }
    }
    return true;
}

bool membership_shape(const Instance& inst) {
    const int n = inst.num_states();
    if (n > 25) return false;  // would need 2^n - 1 signals
    const std::uint64_t expected = (std::uint64_t{1} << n) - 1;
    if (static_cast<std::uint64_t>(inst.num_signals()) != expected) return false;
    std::set<std::uint64_t> seen;
    for (const auto& nbhd : inst.signal_states) {
        std::uint64_t mask = 0;
        for (int s : nbhd) mask |= std::uint64_t{1} << s;
        if (mask == 0 || !seen.insert(mask).second) return false;
    }
    return seen.size() == expected;
}

bool minimally_forgeable(const Instance& inst, int theta, int sigma) {
    for (int reject : inst.signal_states[sigma]) {
        if (inst.states[reject].acceptable) continue;
        const auto& wide = inst.state_signals[reject];
        if (!std::includes(wide.begin(), wide.end(), inst.state_signals[theta].begin(),
                           inst.state_signals[theta].end()))
            return false;
    }
    return true;
}

}  // namespace

InstanceProfile classify(const Instance& inst) {
    InstanceProfile p;
    int accepts = 0, rejects = 0;
    for (int s = 0; s < inst.num_states(); ++s) {
        const int deg = static_cast<int>(inst.state_signals[s].size());
        p.max_state_degree = std::max(p.max_state_degree, deg);
        if (inst.states[s].acceptable) {
            ++accepts;
            p.max_accept_degree = std::max(p.max_accept_degree, deg);
        } else {
            ++rejects;
            p.max_reject_degree = std::max(p.max_reject_degree, deg);
        }
    }
    p.unique_accepts = accepts == 1;
    p.unique_rejects = rejects == 1;

    for (int g = 0; g < inst.num_signals(); ++g)
        if (static_cast<int>(inst.signal_states[g].size()) == inst.num_states()) {
            p.has_global_signal = true;
            break;
        }

    p.proof_of_membership_shape = membership_shape(inst);
    p.laminar_states = laminar_family(inst.signal_states);
    p.laminar_signals = laminar_family(inst.state_signals);

    p.has_foresight = true;
    for (int s = 0; s < inst.num_states() && p.has_foresight; ++s) {
        if (!inst.states[s].acceptable) continue;
        bool found = false;
        for (int g : inst.state_signals[s])
            if (minimally_forgeable(inst, s, g)) {
                found = true;
                break;
            }
        if (!found) p.has_foresight = false;
    }
    return p;
}

Instance build_membership_instance(const std::vector<std::pair<bool, Rational>>& priors) {
    const int n = static_cast<int>(priors.size());
    if (n > 20) throw PreconditionError("membership instance capped at 20 states");
    if (n == 0) throw PreconditionError("membership instance needs at least one state");

    RawInstance raw;
    auto state_name = [&](int i) {
        std::ostringstream name;
        name << "t" << (i < 9 ? "0" : "") << (i + 1);
        return name.str();
    };
    for (int i = 0; i < n; ++i) raw.states.push_back({state_name(i), priors[i].first, priors[i].second});

    const std::uint64_t top = std::uint64_t{1} << n;
    for (std::uint64_t mask = 1; mask < top; ++mask) {
        std::ostringstream name;
        name << "s";
        for (int i = 0; i < n; ++i)
            if (mask & (std::uint64_t{1} << i)) name << "_" << state_name(i);
        raw.signals.push_back(name.str());
        for (int i = 0; i < n; ++i)
            if (mask & (std::uint64_t{1} << i)) raw.edges.push_back({state_name(i), name.str()});
    }
    return must_validate(raw);
}

Components connected_components(const Instance& inst) {
    Components comps;
    comps.state_component.assign(inst.num_states(), -1);
    comps.signal_component.assign(inst.num_signals(), -1);
    for (int start = 0; start < inst.num_states(); ++start) {
        if (comps.state_component[start] >= 0) continue;
        const int id = comps.count++;
        std::vector<int> stack = {start};
        comps.state_component[start] = id;
        while (!stack.empty()) {
            const int s = stack.back();
            stack.pop_back();
            for (int g : inst.state_signals[s]) {
                if (comps.signal_component[g] >= 0) continue;
                comps.signal_component[g] = id;
                for (int s2 : inst.signal_states[g])
                    if (comps.state_component[s2] < 0) {
                        comps.state_component[s2] = id;
                        stack.push_back(s2);
                    }
            }
        }
    }
    return comps;
}

json instance_to_json(const Instance& inst) {
    json j;
    j["states"] = json::array();
    for (const auto& s : inst.states)
        j["states"].push_back({{"id", s.id}, {"acceptable", s.acceptable}, {"q", rational_to_string(s.q)}});
    j["signals"] = inst.signals;
    j["edges"] = json::array();
    for (const auto& [s, g] : inst.edges) j["edges"].push_back({inst.states[s].id, inst.signals[g]});
    return j;
}

RawInstance raw_instance_from_json(const json& j) {
    RawInstance raw;
    try {
        for (const auto& s : j.at("states"))
            raw.states.push_back({s.at("id").get<std::string>(), s.at("acceptable").get<bool>(),
                                  rational_from_string(s.at("q").get<std::string>())});
        for (const auto& g : j.at("signals")) raw.signals.push_back(g.get<std::string>());
        for (const auto& e : j.at("edges"))
            raw.edges.push_back({e.at(0).get<std::string>(), e.at(1).get<std::string>()});
    } catch (const json::exception& ex) {
        throw InputError(std::string("malformed instance JSON: ") + ex.what());
    } catch (const std::invalid_argument& ex) {
        throw InputError(std::string("malformed instance JSON: ") + ex.what());
    }
    return raw;
}

Instance instance_from_json(const json& j) { return must_validate(raw_instance_from_json(j)); }

Instance load_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& ex) {
        throw InputError(std::string("malformed JSON in ") + path + ": " + ex.what());
    }
    return instance_from_json(j);
}

}  // namespace pwe
