#ifndef PWE_GENERATORS_HPP
#define PWE_GENERATORS_HPP

#include "pwe/instance.hpp"
#include "pwe/rational.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pwe {

// Simple undirected graph used as reduction input.
struct Graph {
    std::vector<std::string> vertices;         // sorted
    std::vector<std::pair<int, int>> edges;    // i < j, sorted, no duplicates
    int degree(int v) const;
};

Graph graph_from_json(const nlohmann::json& j);  // adjacency-list object {"a": ["b", ...]}
nlohmann::json graph_to_json(const Graph& g);

struct ColoredBipartite {
    std::vector<std::vector<std::string>> classes;  // partition of the left side
    std::vector<std::string> right;
    std::vector<std::pair<std::string, std::string>> edges;  // (left, right)
};
ColoredBipartite colored_bipartite_from_json(const nlohmann::json& j);

struct GenOutput {
    Instance instance;
    nlohmann::json metadata;
};

// Reduction gadgets. Metadata carries the known-optimum values computed by
// exact exponential subroutines on small inputs (null above the size caps).
GenOutput gen_independent_set(const Graph& g);
GenOutput gen_independent_set_rejects(const Graph& g, long M);
GenOutput gen_vertex_cover(const Graph& g);
GenOutput gen_partition(const std::vector<long>& numbers);
GenOutput gen_cbve(const ColoredBipartite& input);
GenOutput gen_max_k_vertex_cover(const Graph& g, int k);

enum class RandomShape {
    General,
    UniqueAccepts,
    UniqueRejects,
    DegreeBounded,  // uses max_degree
    LaminarStates,
    LaminarSignals,
    GlobalSignal,
    Membership,  // n <= 20; m is forced to 2^n - 1
};

RandomShape random_shape_from_string(const std::string& name);

struct RandomParams {
    int n = 4;
    int m = 4;
    double density = 0.4;
    double frac_acceptable = 0.5;
    RandomShape shape = RandomShape::General;
    int max_degree = 2;  // DegreeBounded only
};

GenOutput gen_random(const RandomParams& params, std::uint64_t seed);

// Random graph on n vertices without isolated vertices.
Graph random_graph(int n, double density, std::uint64_t seed);

// Exact exponential helpers used for gadget metadata (and by tests).
int max_independent_set_size(const Graph& g);   // |V| <= 26
int min_vertex_cover_size(const Graph& g);      // |V| <= 26
bool has_perfect_partition(const std::vector<long>& numbers);
long best_subset_sum_at_most(const std::vector<long>& numbers, long cap);
int max_k_cover_edges(const Graph& g, int k);   // |V| <= 26

}  // namespace pwe

#endif
