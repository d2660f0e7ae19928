#include "pwe/flow.hpp"

#include "pwe/errors.hpp"

#include <algorithm>
#include <deque>

namespace pwe {

int FlowNetwork::add_arc(int from, int to, const Rational& capacity) {
    if (capacity < 0) throw InputError("negative arc capacity");
    arcs.push_back({from, to, false, capacity});
    return static_cast<int>(arcs.size()) - 1;
}

int FlowNetwork::add_uncapped_arc(int from, int to) {
    arcs.push_back({from, to, true, Rational(0)});
    return static_cast<int>(arcs.size()) - 1;
}

namespace {

struct ResidualArc {
    int to;
    int pair;        // index of the reverse residual arc
    int orig;        // original arc index, -1 for pure reverse arcs
    bool forward;    // true if this direction carries original capacity
};

}  // namespace

MaxFlowResult max_flow(const FlowNetwork& net) {
    if (net.source == net.sink) throw InputError("flow network with source == sink");

    MaxFlowResult result;
    result.value = 0;
    result.cut_capacity = 0;
    result.flow.assign(net.arcs.size(), Rational(0));

    std::vector<std::vector<int>> adj(net.num_nodes);
    std::vector<ResidualArc> res;
    res.reserve(net.arcs.size() * 2);
    for (int a = 0; a < static_cast<int>(net.arcs.size()); ++a) {
        const auto& arc = net.arcs[a];
        const int f = static_cast<int>(res.size());
        res.push_back({arc.to, f + 1, a, true});
        res.push_back({arc.from, f, a, false});
        adj[arc.from].push_back(f);
        adj[arc.to].push_back(f + 1);
    }

    auto residual_positive = [&](int r) {
        const ResidualArc& ra = res[r];
        const auto& arc = net.arcs[ra.orig];
        if (ra.forward) return arc.uncapped || result.flow[ra.orig] < arc.capacity;
        return result.flow[ra.orig] > 0;
    };

    std::vector<int> parent_arc(net.num_nodes);
    while (true) {
        // BFS for a shortest augmenting path.
        std::fill(parent_arc.begin(), parent_arc.end(), -1);
        parent_arc[net.source] = -2;
        std::deque<int> queue = {net.source};
        while (!queue.empty() && parent_arc[net.sink] == -1) {
            const int v = queue.front();
            queue.pop_front();
            for (int r : adj[v]) {
                if (parent_arc[res[r].to] != -1 || !residual_positive(r)) continue;
                parent_arc[res[r].to] = r;
                queue.push_back(res[r].to);
            }
        }
        if (parent_arc[net.sink] == -1) break;

        // Bottleneck along the path; all-uncapped means unbounded flow.
        bool bounded = false;
        Rational bottleneck = 0;
        for (int v = net.sink; v != net.source;) {
            const ResidualArc& ra = res[parent_arc[v]];
            const auto& arc = net.arcs[ra.orig];
            if (ra.forward) {
                if (!arc.uncapped) {
                    const Rational slack = arc.capacity - result.flow[ra.orig];
                    if (!bounded || slack < bottleneck) bottleneck = slack;
                    bounded = true;
                }
            } else {
                if (!bounded || result.flow[ra.orig] < bottleneck) bottleneck = result.flow[ra.orig];
                bounded = true;
            }
            v = ra.forward ? arc.from : arc.to;
        }
        if (!bounded) {
            result.unbounded = true;
            return result;
        }
        for (int v = net.sink; v != net.source;) {
            const ResidualArc& ra = res[parent_arc[v]];
            const auto& arc = net.arcs[ra.orig];
            if (ra.forward) {
                result.flow[ra.orig] += bottleneck;
                v = arc.from;
            } else {
                result.flow[ra.orig] -= bottleneck;
                v = arc.to;
            }
        }
        result.value += bottleneck;
    }

    // Min cut from residual reachability.
    result.source_side.assign(net.num_nodes, false);
    result.source_side[net.source] = true;
    std::deque<int> queue = {net.source};
    while (!queue.empty()) {
        const int v = queue.front();
        queue.pop_front();
        for (int r : adj[v])
            if (!result.source_side[res[r].to] && residual_positive(r)) {
                result.source_side[res[r].to] = true;
                queue.push_back(res[r].to);
            }
    }
    for (int a = 0; a < static_cast<int>(net.arcs.size()); ++a) {
        const auto& arc = net.arcs[a];
        if (result.source_side[arc.from] && !result.source_side[arc.to]) {
            result.min_cut_arcs.push_back(a);
            // An uncapped arc can never cross the cut: it would be residual.
            result.cut_capacity += arc.capacity;
        }
    }
    return result;
}

}  // namespace pwe
