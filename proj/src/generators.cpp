#include "pwe/generators.hpp"

#include "pwe/errors.hpp"
#include "pwe/rng.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace pwe {

using nlohmann::json;

namespace {

std::string padded(const std::string& prefix, int index) {
    std::ostringstream name;
    name << prefix << (index < 9 ? "0" : "") << index + 1;
    return name.str();
}

}  // namespace

int Graph::degree(int v) const {
    int d = 0;
    for (const auto& [a, b] : edges)
        if (a == v || b == v) ++d;
    return d;
}

Graph graph_from_json(const json& j) {
    if (!j.is_object()) throw InputError("graph JSON must be an adjacency-list object");
    std::set<std::string> names;
    for (auto it = j.begin(); it != j.end(); ++it) {
        names.insert(it.key());
        for (const auto& nb : it.value()) names.insert(nb.get<std::string>());
    }
    Graph g;
    g.vertices.assign(names.begin(), names.end());
    auto index = [&](const std::string& name) {
        return static_cast<int>(std::lower_bound(g.vertices.begin(), g.vertices.end(), name) -
                                g.vertices.begin());
    };
    std::set<std::pair<int, int>> edges;
    for (auto it = j.begin(); it != j.end(); ++it) {
        const int a = index(it.key());
        for (const auto& nb : it.value()) {
            const int b = index(nb.get<std::string>());
            if (a == b) throw InputError("graph has a self-loop at " + it.key());
            edges.insert({std::min(a, b), std::max(a, b)});
        }
    }
    g.edges.assign(edges.begin(), edges.end());
    return g;
}

json graph_to_json(const Graph& g) {
    json j = json::object();
    for (const auto& v : g.vertices) j[v] = json::array();
    for (const auto& [a, b] : g.edges) {
        j[g.vertices[a]].push_back(g.vertices[b]);
        j[g.vertices[b]].push_back(g.vertices[a]);
    }
    return j;
}

ColoredBipartite colored_bipartite_from_json(const json& j) {
    ColoredBipartite cb;
    try {
        for (const auto& cls : j.at("classes")) {
            std::vector<std::string> names;
            for (const auto& u : cls) names.push_back(u.get<std::string>());
            cb.classes.push_back(std::move(names));
        }
        for (const auto& v : j.at("right")) cb.right.push_back(v.get<std::string>());
        for (const auto& e : j.at("edges"))
            cb.edges.push_back({e.at(0).get<std::string>(), e.at(1).get<std::string>()});
    } catch (const json::exception& ex) {
        throw InputError(std::string("malformed colored-bipartite JSON: ") + ex.what());
    }
    return cb;
}

GenOutput gen_independent_set(const Graph& g) {
    const int V = static_cast<int>(g.vertices.size());
    const int E = static_cast<int>(g.edges.size());
    for (int v = 0; v < V; ++v)
        if (g.degree(v) == 0) throw InputError("independent-set gadget requires no isolated vertices");

    const long D = V + 3L * E;
    RawInstance raw;
    for (int v = 0; v < V; ++v) {
        raw.states.push_back({"v_" + g.vertices[v], true, make_rational(1, D)});
        raw.signals.push_back("s_" + g.vertices[v]);
        raw.edges.push_back({"v_" + g.vertices[v], "s_" + g.vertices[v]});
    }
    for (const auto& [a, b] : g.edges) {
        const std::string id = "e_" + g.vertices[a] + "_" + g.vertices[b];
        raw.states.push_back({id, false, make_rational(3, D)});
        raw.edges.push_back({id, "s_" + g.vertices[a]});
        raw.edges.push_back({id, "s_" + g.vertices[b]});
    }

    GenOutput out{must_validate(raw), json::object()};
    out.metadata["kind"] = "independent-set";
    if (V <= 20) {
        const int best = max_independent_set_size(g);
        out.metadata["independent_set_size"] = best;
        out.metadata["opt_persuasion"] = rational_to_string(make_rational(2L * best, D));
    } else {
        out.metadata["opt_persuasion"] = nullptr;
    }
    return out;
}

GenOutput gen_independent_set_rejects(const Graph& g, long M) {
    const int V = static_cast<int>(g.vertices.size());
    const long E = static_cast<long>(g.edges.size());
    if (M <= 0) throw InputError("weight parameter M must be positive");

    const long total = 2 * V * M + V + 2 * E;  // unit accepts + (M+deg) rejects + M accepts
    RawInstance raw;
    for (int v = 0; v < V; ++v) raw.signals.push_back("s_" + g.vertices[v]);
    for (int v = 0; v < V; ++v) {
        raw.states.push_back({"a_" + g.vertices[v], true, make_rational(1, total)});
        raw.edges.push_back({"a_" + g.vertices[v], "s_" + g.vertices[v]});
        raw.states.push_back({"r_" + g.vertices[v], false, make_rational(M + g.degree(v), total)});
        raw.edges.push_back({"r_" + g.vertices[v], "s_" + g.vertices[v]});
        raw.states.push_back({"m_" + g.vertices[v], true, make_rational(M, total)});
        raw.edges.push_back({"m_" + g.vertices[v], "s_" + g.vertices[v]});
    }
    for (const auto& [a, b] : g.edges) {
        raw.edges.push_back({"a_" + g.vertices[a], "s_" + g.vertices[b]});
        raw.edges.push_back({"a_" + g.vertices[b], "s_" + g.vertices[a]});
    }

    GenOutput out{must_validate(raw), json::object()};
    out.metadata["kind"] = "independent-set-rejects";
    out.metadata["M"] = M;
    out.metadata["total_weight"] = total;
    json per_vertex = json::object();
    for (int v = 0; v < V; ++v)
        per_vertex["s_" + g.vertices[v]] =
            rational_to_string(make_rational(M + g.degree(v), V * M + V + 2 * E));
    out.metadata["per_accept_utility"] = per_vertex;
    if (V <= 20) out.metadata["independent_set_size"] = max_independent_set_size(g);
    return out;
}

GenOutput gen_vertex_cover(const Graph& g) {
    const int V = static_cast<int>(g.vertices.size());
    const int E = static_cast<int>(g.edges.size());
    const long D = V + static_cast<long>(E);

    RawInstance raw;
    for (int v = 0; v < V; ++v) {
        raw.signals.push_back("s_" + g.vertices[v]);
        raw.states.push_back({"r_" + g.vertices[v], false, make_rational(1, D)});
        raw.edges.push_back({"r_" + g.vertices[v], "s_" + g.vertices[v]});
    }
    for (const auto& [a, b] : g.edges) {
        const std::string id = "e_" + g.vertices[a] + "_" + g.vertices[b];
        raw.states.push_back({id, true, make_rational(1, D)});
        raw.edges.push_back({id, "s_" + g.vertices[a]});
        raw.edges.push_back({id, "s_" + g.vertices[b]});
    }

    GenOutput out{must_validate(raw), json::object()};
    out.metadata["kind"] = "vertex-cover";
    if (V <= 20) {
        const int vc = min_vertex_cover_size(g);
        out.metadata["vertex_cover_size"] = vc;
        out.metadata["opt_delegation"] = rational_to_string(make_rational(E + V - vc, D));
    } else {
        out.metadata["opt_delegation"] = nullptr;
    }
    return out;
}

GenOutput gen_partition(const std::vector<long>& numbers) {
    if (numbers.empty()) throw InputError("partition gadget needs at least one number");
    long A = 0;
    for (long a : numbers) {
        if (a <= 0) throw InputError("partition numbers must be positive");
        A += a;
    }

    RawInstance raw;
    for (size_t i = 0; i < numbers.size(); ++i) {
        raw.signals.push_back(padded("s", static_cast<int>(i)));
        raw.states.push_back({padded("t", static_cast<int>(i)), false, make_rational(2 * numbers[i], 3 * A)});
        raw.edges.push_back({padded("t", static_cast<int>(i)), padded("s", static_cast<int>(i))});
    }
    raw.states.push_back({"t_global", true, make_rational(1, 3)});
    for (size_t i = 0; i < numbers.size(); ++i)
        raw.edges.push_back({"t_global", padded("s", static_cast<int>(i))});

    GenOutput out{must_validate(raw), json::object()};
    out.metadata["kind"] = "partition";
    const bool perfect = has_perfect_partition(numbers);
    out.metadata["has_perfect_partition"] = perfect;
    const long best = best_subset_sum_at_most(numbers, A / 2);
    out.metadata["opt_persuasion"] = rational_to_string(make_rational(1, 3) + make_rational(2 * best, 3 * A));
    return out;
}

GenOutput gen_cbve(const ColoredBipartite& input) {
    const int k = static_cast<int>(input.classes.size());
    const int V = static_cast<int>(input.right.size());
    if (k == 0 || V == 0) throw InputError("colored bipartite input needs classes and right vertices");

    RawInstance raw;
    for (const auto& cls : input.classes) {
        if (cls.empty()) throw InputError("empty color class");
        for (const auto& u : cls) raw.signals.push_back("s_" + u);
    }
    for (int i = 0; i < k; ++i) {
        raw.states.push_back({"a_class" + std::to_string(i + 1), true, make_rational(1, 2L * k)});
        for (const auto& u : input.classes[i])
            raw.edges.push_back({"a_class" + std::to_string(i + 1), "s_" + u});
    }
    for (const auto& v : input.right)
        raw.states.push_back({"r_" + v, false, make_rational(1, 2L * V)});
    std::set<std::pair<std::string, std::string>> bipartite_edges(input.edges.begin(),
                                                                  input.edges.end());
    for (const auto& [u, v] : bipartite_edges) raw.edges.push_back({"r_" + v, "s_" + u});

    GenOutput out{must_validate(raw), json::object()};
    out.metadata["kind"] = "cbve";
    out.metadata["q_acceptable"] = rational_to_string(out.instance.q_acceptable());
    out.metadata["q_rejectable"] = rational_to_string(out.instance.q_rejectable());
    return out;
}

GenOutput gen_max_k_vertex_cover(const Graph& g, int k) {
    const int V = static_cast<int>(g.vertices.size());
    const long E = static_cast<long>(g.edges.size());
    if (k < 1 || k > V) throw InputError("k must lie in [1, |V|]");

    const long D = (V + k) * (E + 1) + 2 * E;
    RawInstance raw;
    for (int v = 0; v < V; ++v) {
        raw.signals.push_back("s_" + g.vertices[v]);
        raw.states.push_back({"x_" + g.vertices[v], false, make_rational(E + 1, D)});
        raw.edges.push_back({"x_" + g.vertices[v], "s_" + g.vertices[v]});
    }
    for (const auto& [a, b] : g.edges) {
        const std::string id = "e_" + g.vertices[a] + "_" + g.vertices[b];
        raw.states.push_back({id, false, make_rational(1, D)});
        raw.edges.push_back({id, "s_" + g.vertices[a]});
        raw.edges.push_back({id, "s_" + g.vertices[b]});
    }
    raw.states.push_back({"t_accept", true, make_rational(k * (E + 1) + E, D)});
    for (int v = 0; v < V; ++v) raw.edges.push_back({"t_accept", "s_" + g.vertices[v]});

    GenOutput out{must_validate(raw), json::object()};
    out.metadata["kind"] = "max-k-vertex-cover";
    out.metadata["k"] = k;
    if (V <= 16) {
        const Rational qa = make_rational(k * (E + 1) + E, D);
        Rational best = 0;
        // Best accept set over colorless subsets of size 1..k.
        std::vector<int> subset;
        auto recurse = [&](auto&& self, int from, int remaining) -> void {
            if (!subset.empty()) {
                std::set<std::pair<int, int>> covered;
                for (const auto& e : g.edges)
                    for (int v : subset)
                        if (e.first == v || e.second == v) covered.insert(e);
                const Rational reach = make_rational(
                    (k + static_cast<long>(subset.size())) * (E + 1) + E + static_cast<long>(covered.size()),
                    D);
                best = std::max(best, std::min(Rational(2 * qa), reach));
            }
            if (remaining == 0) return;
            for (int v = from; v < V; ++v) {
                subset.push_back(v);
                self(self, v + 1, remaining - 1);
                subset.pop_back();
            }
        };
        recurse(recurse, 0, k);
        out.metadata["opt_persuasion"] = rational_to_string(best);
        out.metadata["max_cover_edges"] = max_k_cover_edges(g, k);
    } else {
        out.metadata["opt_persuasion"] = nullptr;
    }
    return out;
}

RandomShape random_shape_from_string(const std::string& name) {
    if (name == "general") return RandomShape::General;
    if (name == "unique-accepts") return RandomShape::UniqueAccepts;
    if (name == "unique-rejects") return RandomShape::UniqueRejects;
    if (name == "degree-bounded") return RandomShape::DegreeBounded;
    if (name == "laminar-states") return RandomShape::LaminarStates;
    if (name == "laminar-signals") return RandomShape::LaminarSignals;
    if (name == "global-signal") return RandomShape::GlobalSignal;
    if (name == "membership") return RandomShape::Membership;
    throw InputError("unknown random shape: " + name);
}

namespace {

std::vector<bool> pick_labels(int n, double frac, RandomShape shape, Rng& rng) {
    std::vector<bool> acceptable(n, false);
    if (shape == RandomShape::UniqueAccepts || shape == RandomShape::UniqueRejects) {
        const int special = static_cast<int>(rng.below(n));
        for (int i = 0; i < n; ++i)
            acceptable[i] = (shape == RandomShape::UniqueAccepts) == (i == special);
        return acceptable;
    }
    int k = static_cast<int>(std::lround(frac * n));
    k = std::clamp(k, 0, n);
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng.below(i + 1)]);
    for (int i = 0; i < k; ++i) acceptable[perm[i]] = true;
    return acceptable;
}

std::vector<Rational> pick_priors(int n, Rng& rng) {
    std::vector<long> weights(n);
    long total = 0;
    for (int i = 0; i < n; ++i) {
        weights[i] = 1 + static_cast<long>(rng.below(37));
        total += weights[i];
    }
    std::vector<Rational> q(n);
    for (int i = 0; i < n; ++i) q[i] = make_rational(weights[i], total);
    return q;
}

// Random laminar family over [0, n) built by recursive splitting of a
// shuffled index range, possibly as a forest of up to `max_roots` disjoint
// trees. `cover` lists the root set indices; together they cover [0, n).
struct LaminarFamily {
    std::vector<std::vector<int>> sets;
    std::vector<int> cover;
};

LaminarFamily random_laminar_family(int n, int max_roots, Rng& rng) {
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng.below(i + 1)]);

    LaminarFamily family;
    auto split = [&](auto&& self, int lo, int hi) -> void {
        std::vector<int> members(perm.begin() + lo, perm.begin() + hi);
        std::sort(members.begin(), members.end());
        family.sets.push_back(std::move(members));
        if (hi - lo < 2 || rng.below(4) == 0) return;
        const int cut = lo + 1 + static_cast<int>(rng.below(hi - lo - 1));
        self(self, lo, cut);
        self(self, cut, hi);
    };
    const bool two_roots = max_roots >= 2 && n >= 2 && rng.below(3) == 0;
    if (two_roots) {
        const int cut = 1 + static_cast<int>(rng.below(n - 1));
        family.cover.push_back(static_cast<int>(family.sets.size()));
        split(split, 0, cut);
        family.cover.push_back(static_cast<int>(family.sets.size()));
        split(split, cut, n);
    } else {
        family.cover.push_back(0);
        split(split, 0, n);
    }
    return family;
}

}  // namespace

GenOutput gen_random(const RandomParams& params, std::uint64_t seed) {
    if (params.n < 1 || params.m < 1) throw InputError("random instance needs n, m >= 1");
    Rng rng(seed);

    if (params.shape == RandomShape::Membership) {
        if (params.n > 20) throw InputError("membership shape capped at 20 states");
        const auto labels = pick_labels(params.n, params.frac_acceptable, params.shape, rng);
        const auto priors = pick_priors(params.n, rng);
        std::vector<std::pair<bool, Rational>> spec(params.n);
        for (int i = 0; i < params.n; ++i) spec[i] = {labels[i], priors[i]};
        GenOutput out{build_membership_instance(spec), json::object()};
        out.metadata = {{"kind", "random"}, {"shape", "membership"}, {"seed", seed}};
        return out;
    }

    const int n = params.n;
    const int m = params.m;
    const auto labels = pick_labels(n, params.frac_acceptable, params.shape, rng);
    const auto priors = pick_priors(n, rng);

    std::set<std::pair<int, int>> edges;
    switch (params.shape) {
        case RandomShape::DegreeBounded: {
            if (m > params.max_degree * n)
                throw InputError("degree-bounded shape needs m <= d * n");
            // Home edges cover every signal; each state then tops up to a
            // random degree within the bound.
            std::vector<int> degree(n, 0);
            for (int g = 0; g < m; ++g) {
                edges.insert({g % n, g});
                ++degree[g % n];
            }
            for (int s = 0; s < n; ++s) {
                const int target = 1 + static_cast<int>(rng.below(params.max_degree));
                std::vector<int> sigs(m);
                std::iota(sigs.begin(), sigs.end(), 0);
                for (int i = m - 1; i > 0; --i)
                    std::swap(sigs[i], sigs[rng.below(i + 1)]);
                for (int i = 0; i < m && degree[s] < target; ++i)
                    if (edges.insert({s, sigs[i]}).second) ++degree[s];
            }
            break;
        }
        case RandomShape::LaminarStates: {
            // Signals draw laminar neighborhoods over the states; the cover
            // sets are always used so no state is isolated.
            const auto family = random_laminar_family(n, m, rng);
            std::vector<int> chosen = family.cover;
            while (static_cast<int>(chosen.size()) < m)
                chosen.push_back(static_cast<int>(rng.below(family.sets.size())));
            for (int g = 0; g < m; ++g)
                for (int s : family.sets[chosen[g]]) edges.insert({s, g});
            break;
        }
        case RandomShape::LaminarSignals: {
            const auto family = random_laminar_family(m, n, rng);
            for (int s = 0; s < n; ++s) {
                const int node = s < static_cast<int>(family.cover.size())
                                     ? family.cover[s]
                                     : static_cast<int>(rng.below(family.sets.size()));
                for (int g : family.sets[node]) edges.insert({s, g});
            }
            break;
        }
        default: {
            for (int s = 0; s < n; ++s)
                for (int g = 0; g < m; ++g)
                    if (rng.uniform() < params.density) edges.insert({s, g});
            for (int s = 0; s < n; ++s) {
                bool covered = false;
                for (int g = 0; g < m && !covered; ++g) covered = edges.count({s, g}) > 0;
                if (!covered) edges.insert({s, static_cast<int>(rng.below(m))});
            }
            for (int g = 0; g < m; ++g) {
                bool covered = false;
                for (int s = 0; s < n && !covered; ++s) covered = edges.count({s, g}) > 0;
                if (!covered) edges.insert({static_cast<int>(rng.below(n)), g});
            }
            if (params.shape == RandomShape::GlobalSignal)
                for (int s = 0; s < n; ++s) edges.insert({s, 0});
            break;
        }
    }

    RawInstance raw;
    for (int s = 0; s < n; ++s) raw.states.push_back({padded("t", s), labels[s], priors[s]});
    for (int g = 0; g < m; ++g) raw.signals.push_back(padded("s", g));
    for (const auto& [s, g] : edges) raw.edges.push_back({padded("t", s), padded("s", g)});

    GenOutput out{must_validate(raw), json::object()};
    out.metadata = {{"kind", "random"}, {"seed", seed}};
    return out;
}

Graph random_graph(int n, double density, std::uint64_t seed) {
    if (n < 2) throw InputError("random graph needs at least two vertices");
    Rng rng(seed);
    Graph g;
    for (int v = 0; v < n; ++v) g.vertices.push_back(padded("u", v));
    std::set<std::pair<int, int>> edges;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (rng.uniform() < density) edges.insert({a, b});
    for (int v = 0; v < n; ++v) {
        bool covered = false;
        for (const auto& [a, b] : edges)
            if (a == v || b == v) covered = true;
        if (!covered) {
            int other = static_cast<int>(rng.below(n - 1));
            if (other >= v) ++other;
            edges.insert({std::min(v, other), std::max(v, other)});
        }
    }
    g.edges.assign(edges.begin(), edges.end());
    return g;
}

int max_independent_set_size(const Graph& g) {
    const int V = static_cast<int>(g.vertices.size());
    if (V > 26) throw PreconditionError("independent-set helper capped at 26 vertices");
    std::vector<std::uint32_t> adj(V, 0);
    for (const auto& [a, b] : g.edges) {
        adj[a] |= 1u << b;
        adj[b] |= 1u << a;
    }
    int best = 0;
    for (std::uint32_t mask = 0; mask < (1u << V); ++mask) {
        bool ok = true;
        for (int v = 0; v < V && ok; ++v)
            if ((mask >> v) & 1u)
                if (adj[v] & mask) ok = false;
        if (ok) best = std::max(best, __builtin_popcount(mask));
    }
    return best;
}

int min_vertex_cover_size(const Graph& g) {
    return static_cast<int>(g.vertices.size()) - max_independent_set_size(g);
}

bool has_perfect_partition(const std::vector<long>& numbers) {
    long total = std::accumulate(numbers.begin(), numbers.end(), 0L);
    if (total % 2 != 0) return false;
    return best_subset_sum_at_most(numbers, total / 2) == total / 2;
}

long best_subset_sum_at_most(const std::vector<long>& numbers, long cap) {
    if (cap < 0) throw InputError("subset-sum cap must be nonnegative");
    std::vector<char> reachable(cap + 1, 0);
    reachable[0] = 1;
    for (long a : numbers)
        for (long s = cap; s >= a; --s)
            if (reachable[s - a]) reachable[s] = 1;
    for (long s = cap; s >= 0; --s)
        if (reachable[s]) return s;
    return 0;
}

int max_k_cover_edges(const Graph& g, int k) {
    const int V = static_cast<int>(g.vertices.size());
    if (V > 26) throw PreconditionError("cover helper capped at 26 vertices");
    int best = 0;
    for (std::uint32_t mask = 0; mask < (1u << V); ++mask) {
        if (__builtin_popcount(mask) > k) continue;
        int covered = 0;
        for (const auto& [a, b] : g.edges)
            if (((mask >> a) & 1u) || ((mask >> b) & 1u)) ++covered;
        best = std::max(best, covered);
    }
    return best;
}

}  // namespace pwe
