#ifndef PWE_FLOW_HPP
#define PWE_FLOW_HPP

#include "pwe/rational.hpp"

#include <vector>

namespace pwe {

// Directed flow network with exact rational capacities. Uncapacitated arcs
// carry a flag instead of a sentinel value so arithmetic stays exact.
struct FlowNetwork {
    struct Arc {
        int from = 0;
        int to = 0;
        bool uncapped = false;
        Rational capacity;  // ignored when uncapped
    };
    int num_nodes = 0;
    int source = 0;
    int sink = 0;
    std::vector<Arc> arcs;

    int add_arc(int from, int to, const Rational& capacity);
    int add_uncapped_arc(int from, int to);
};

struct MaxFlowResult {
    bool unbounded = false;
    Rational value;
    std::vector<Rational> flow;       // per arc
    std::vector<bool> source_side;    // residual-reachable from source
    std::vector<int> min_cut_arcs;    // arcs crossing from source side
    Rational cut_capacity;            // equals value (strong duality certificate)
};

// Edmonds-Karp on exact rationals. Sets `unbounded` if an all-uncapped
// augmenting path exists.
MaxFlowResult max_flow(const FlowNetwork& network);

}  // namespace pwe

#endif
