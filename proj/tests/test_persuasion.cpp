#include "pwe/errors.hpp"
#include "pwe/generators.hpp"
#include "pwe/oracle.hpp"
#include "pwe/persuasion.hpp"
#include "pwe/rng.hpp"

#include "test_support.hpp"

#include <doctest.h>

using namespace pwe;

namespace {

Rational realized_sender_utility(const Instance& inst, const SignalingScheme& phi) {
    return evaluate(inst, phi, receiver_best_response(inst, phi)).sender;
}

}  // namespace

TEST_CASE("optimal_for_partition") {
    const Instance inst = test::sender_example();
    SUBCASE("single accept signal on the sender example yields 1/2") {
        const auto r = optimal_for_partition(inst, partition_from_accept_set(inst, {0}));
        REQUIRE(r.has_value());
        CHECK(r->utility == make_rational(1, 2));
        CHECK(realized_sender_utility(inst, r->phi) == r->utility);
    }
    SUBCASE("empty accept set is feasible with utility 0") {
        const auto r = optimal_for_partition(inst, partition_from_accept_set(inst, {}));
        REQUIRE(r.has_value());
        CHECK(r->utility == 0);
        check_scheme(inst, r->phi);
    }
    SUBCASE("all-acceptable instance accepts everything with utility 1") {
        RawInstance raw;
        raw.states = {{"t1", true, make_rational(1, 2)}, {"t2", true, make_rational(1, 2)}};
        raw.signals = {"s1", "s2"};
        raw.edges = {{"t1", "s1"}, {"t2", "s2"}};
        const Instance all = must_validate(raw);
        const auto r = optimal_for_partition(all, partition_from_accept_set(all, {0, 1}));
        REQUIRE(r.has_value());
        CHECK(r->utility == 1);
    }
    SUBCASE("infeasible partition is reported") {
        // Lone rejectable state cannot make its only signal an accept signal.
        RawInstance raw;
        raw.states = {{"ta", true, make_rational(1, 4)}, {"tr", false, make_rational(3, 4)}};
        raw.signals = {"s1", "s2"};
        raw.edges = {{"ta", "s2"}, {"tr", "s1"}};
        const Instance split = must_validate(raw);
        CHECK(!optimal_for_partition(split, partition_from_accept_set(split, {0})).has_value());
    }
}

TEST_CASE("general partition LP builder agrees with the two-action solver") {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        RandomParams params;
        params.n = 4;
        params.m = 4;
        const Instance inst = gen_random(params, seed).instance;
        const GeneralPersuasionSpec spec = two_action_spec(inst);
        Rng rng(seed);
        const std::uint32_t mask = static_cast<std::uint32_t>(rng.below(1u << inst.num_signals()));
        std::vector<int> actions(inst.num_signals());
        std::vector<int> accepts;
        for (int g = 0; g < inst.num_signals(); ++g) {
            actions[g] = (mask >> g) & 1u;
            if (actions[g]) accepts.push_back(g);
        }
        if (accepts.empty()) continue;
        const LinearProgram lp = build_partition_lp(inst, actions, spec, nullptr);
        const auto general = lp_solve_exact(lp);
        const auto specialized = optimal_for_partition(inst, partition_from_accept_set(inst, accepts));
        if (specialized) {
            REQUIRE(general.status == LpStatus::Optimal);
            CHECK(general.value == specialized->utility);
        } else {
            CHECK(general.status == LpStatus::Infeasible);
        }
    }
}

TEST_CASE("approx_2n") {
    SUBCASE("sender example reaches 1/2") {
        const auto r = approx_2n(test::sender_example());
        CHECK(r.utility == make_rational(1, 2));
    }
    SUBCASE("all-rejectable instance yields 0") {
        RawInstance raw;
        raw.states = {{"t1", false, make_rational(1, 2)}, {"t2", false, make_rational(1, 2)}};
        raw.signals = {"s1", "s2"};
        raw.edges = {{"t1", "s1"}, {"t2", "s2"}, {"t1", "s2"}};
        CHECK(approx_2n(must_validate(raw)).utility == 0);
    }
    SUBCASE("triangle independent-set gadget stays within 2n of the oracle") {
        Graph triangle;
        triangle.vertices = {"a", "b", "c"};
        triangle.edges = {{0, 1}, {0, 2}, {1, 2}};
        const auto gen = gen_independent_set(triangle);
        const Rational opt = persuasion_oracle(gen.instance).utility;
        const auto r = approx_2n(gen.instance);
        CHECK(2 * gen.instance.num_states() * r.utility >= opt);
        CHECK(realized_sender_utility(gen.instance, r.phi) == r.utility);
    }
}

TEST_CASE("unique-accepts partition feasibility matches the LP") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        RandomParams params;
        params.n = 5;
        params.m = 3 + static_cast<int>(seed % 6);
        params.shape = RandomShape::UniqueAccepts;
        const Instance inst = gen_random(params, seed).instance;
        int theta_a = -1;
        for (int s = 0; s < inst.num_states(); ++s)
            if (inst.states[s].acceptable) theta_a = s;
        std::uint32_t na_mask = 0;
        for (int g : inst.state_signals[theta_a]) na_mask |= 1u << g;
        for (std::uint32_t mask = 1; mask < (1u << inst.num_signals()); ++mask) {
            if ((mask & ~na_mask) != 0) continue;  // the characterization covers subsets of N(theta_a)
            std::vector<int> accept;
            for (int g = 0; g < inst.num_signals(); ++g)
                if ((mask >> g) & 1u) accept.push_back(g);
            CHECK(unique_accepts_partition_feasible(inst, accept) ==
                  partition_value(inst, mask).has_value());
        }
    }
}

TEST_CASE("ptas for unique accepts") {
    SUBCASE("fully shared state pair reaches 1") {
        RawInstance raw;
        raw.states = {{"ta", true, make_rational(1, 2)}, {"tr", false, make_rational(1, 2)}};
        raw.signals = {"s1"};
        raw.edges = {{"ta", "s1"}, {"tr", "s1"}};
        const Instance inst = must_validate(raw);
        const auto r = ptas_unique_accepts(inst, 0.5);
        CHECK(r.utility == 1);
    }
    SUBCASE("max-k-vertex-cover gadget on one edge") {
        Graph g;
        g.vertices = {"a", "b"};
        g.edges = {{0, 1}};
        const auto gen = gen_max_k_vertex_cover(g, 1);
        const Rational opt = persuasion_oracle(gen.instance).utility;
        const auto r = ptas_unique_accepts(gen.instance, 0.25);
        CHECK(r.utility * make_rational(5, 4) >= opt);
        CHECK(realized_sender_utility(gen.instance, r.phi) == r.utility);
    }
    SUBCASE("epsilon guarantee on random unique-accepts instances") {
        for (std::uint64_t seed = 200; seed < 230; ++seed) {
            RandomParams params;
            params.n = 5;
            params.m = 3 + static_cast<int>(seed % 6);
            params.shape = RandomShape::UniqueAccepts;
            const Instance inst = gen_random(params, seed).instance;
            const Rational opt = persuasion_oracle(inst).utility;
            for (double eps : {1.0, 0.5, 0.25}) {
                const auto r = ptas_unique_accepts(inst, eps);
                CHECK(r.utility * (1 + Rational(eps)) >= opt);
                CHECK(r.utility <= opt);
            }
        }
    }
    SUBCASE("no feasible accept set: every candidate signal carries too much captive mass") {
        RawInstance raw;
        raw.states = {{"ta", true, make_rational(1, 5)},
                      {"r1", false, make_rational(2, 5)},
                      {"r2", false, make_rational(2, 5)}};
        raw.signals = {"s1", "s2"};
        raw.edges = {{"ta", "s1"}, {"ta", "s2"}, {"r1", "s1"}, {"r2", "s2"}};
        const Instance inst = must_validate(raw);
        const auto r = ptas_unique_accepts(inst, 0.25);
        CHECK(r.utility == 0);
        CHECK(persuasion_oracle(inst).utility == 0);
    }
    SUBCASE("precondition and epsilon validation") {
        CHECK_THROWS_AS(ptas_unique_accepts(test::sender_example(), 0.0), InputError);
        RawInstance raw;
        raw.states = {{"a", true, make_rational(1, 2)}, {"b", true, make_rational(1, 2)}};
        raw.signals = {"s1"};
        raw.edges = {{"a", "s1"}, {"b", "s1"}};
        CHECK_THROWS_AS(ptas_unique_accepts(must_validate(raw), 0.5), PreconditionError);
    }
}

TEST_CASE("unique rejects exact solver") {
    SUBCASE("abundant acceptable mass accepts everything") {
        RawInstance raw;
        raw.states = {{"tr", false, make_rational(1, 3)},
                      {"a1", true, make_rational(1, 3)},
                      {"a2", true, make_rational(1, 3)}};
        raw.signals = {"s1", "s2"};
        raw.edges = {{"tr", "s1"}, {"tr", "s2"}, {"a1", "s1"}, {"a1", "s2"},
                     {"a2", "s1"}, {"a2", "s2"}};
        const auto r = unique_rejects_exact(must_validate(raw));
        CHECK(r.utility == 1);
    }
    SUBCASE("matches the oracle on random unique-rejects instances") {
        for (std::uint64_t seed = 300; seed < 340; ++seed) {
            RandomParams params;
            params.n = 5;
            params.m = 3 + static_cast<int>(seed % 6);
            params.shape = RandomShape::UniqueRejects;
            const Instance inst = gen_random(params, seed).instance;
            const auto r = unique_rejects_exact(inst);
            CHECK(r.utility == persuasion_oracle(inst).utility);
            CHECK(realized_sender_utility(inst, r.phi) == r.utility);
        }
    }
}

TEST_CASE("global signal exact solver") {
    SUBCASE("membership shape with q_A = 1/4 yields 1/2") {
        const Instance inst = build_membership_instance(
            {{true, make_rational(1, 4)}, {false, make_rational(1, 2)}, {false, make_rational(1, 4)}});
        const auto r = global_signal_exact(inst);
        CHECK(r.utility == make_rational(1, 2));
    }
    SUBCASE("q_A >= q_R sends the global signal always") {
        RawInstance raw;
        raw.states = {{"ta", true, make_rational(2, 3)}, {"tr", false, make_rational(1, 3)}};
        raw.signals = {"s0", "s1"};
        raw.edges = {{"ta", "s0"}, {"tr", "s0"}, {"tr", "s1"}};
        const auto r = global_signal_exact(must_validate(raw));
        CHECK(r.utility == 1);
    }
    SUBCASE("matches the oracle on random global-signal instances") {
        for (std::uint64_t seed = 400; seed < 440; ++seed) {
            RandomParams params;
            params.n = 5;
            params.m = 3 + static_cast<int>(seed % 5);
            params.shape = RandomShape::GlobalSignal;
            const Instance inst = gen_random(params, seed).instance;
            const auto r = global_signal_exact(inst);
            CHECK(r.utility == persuasion_oracle(inst).utility);
            CHECK(realized_sender_utility(inst, r.phi) == r.utility);
        }
    }
    SUBCASE("precondition enforced") {
        RawInstance raw;
        raw.states = {{"a", true, make_rational(1, 2)}, {"b", false, make_rational(1, 2)}};
        raw.signals = {"s1", "s2"};
        raw.edges = {{"a", "s1"}, {"b", "s2"}};
        CHECK_THROWS_AS(global_signal_exact(must_validate(raw)), PreconditionError);
    }
}

TEST_CASE("membership persuasion solver") {
    SUBCASE("boundary q_A = 1/2 gives 1") {
        const Instance inst =
            build_membership_instance({{true, make_rational(1, 2)}, {false, make_rational(1, 2)}});
        CHECK(membership_exact_persuasion(inst).utility == 1);
    }
    SUBCASE("q_A = 1/4 gives 2 q_A") {
        const Instance inst = build_membership_instance(
            {{true, make_rational(1, 4)}, {false, make_rational(1, 2)}, {false, make_rational(1, 4)}});
        const auto r = membership_exact_persuasion(inst);
        CHECK(r.utility == make_rational(1, 2));
        CHECK(realized_sender_utility(inst, r.phi) == r.utility);
    }
    SUBCASE("all-acceptable membership gives 1") {
        const Instance inst = build_membership_instance({{true, make_rational(1, 1)}});
        CHECK(membership_exact_persuasion(inst).utility == 1);
    }
    SUBCASE("matches the oracle") {
        for (std::uint64_t seed = 500; seed < 515; ++seed) {
            RandomParams params;
            params.shape = RandomShape::Membership;
            params.n = 1 + static_cast<int>(seed % 3);
            const Instance inst = gen_random(params, seed).instance;
            CHECK(membership_exact_persuasion(inst).utility == persuasion_oracle(inst).utility);
        }
    }
}

TEST_CASE("laminar states persuasion solver") {
    SUBCASE("single component reduces to the global-signal case") {
        RawInstance raw;
        raw.states = {{"ta", true, make_rational(1, 4)}, {"tr", false, make_rational(3, 4)}};
        raw.signals = {"s0", "s1"};
        raw.edges = {{"ta", "s0"}, {"tr", "s0"}, {"tr", "s1"}};
        const Instance inst = must_validate(raw);
        CHECK(laminar_states_exact_persuasion(inst).utility == global_signal_exact(inst).utility);
    }
    SUBCASE("two components add up") {
        RawInstance raw;
        raw.states = {{"a1", true, make_rational(1, 16)},  {"r1", false, make_rational(7, 16)},
                      {"a2", true, make_rational(1, 16)},  {"r2", false, make_rational(7, 16)}};
        raw.signals = {"c1", "c1b", "c2", "c2b"};
        raw.edges = {{"a1", "c1"}, {"r1", "c1"}, {"r1", "c1b"},
                     {"a2", "c2"}, {"r2", "c2"}, {"r2", "c2b"}};
        const Instance inst = must_validate(raw);
        REQUIRE(classify(inst).laminar_states);
        const auto r = laminar_states_exact_persuasion(inst);
        CHECK(r.utility == persuasion_oracle(inst).utility);
        CHECK(r.utility == make_rational(1, 4));  // 2 q_A per component
    }
    SUBCASE("all-rejectable component contributes 0") {
        RawInstance raw;
        raw.states = {{"a1", true, make_rational(1, 2)}, {"r1", false, make_rational(1, 4)},
                      {"r2", false, make_rational(1, 4)}};
        raw.signals = {"c1", "c2"};
        raw.edges = {{"a1", "c1"}, {"r1", "c1"}, {"r2", "c2"}};
        const Instance inst = must_validate(raw);
        const auto r = laminar_states_exact_persuasion(inst);
        CHECK(r.utility == persuasion_oracle(inst).utility);
    }
    SUBCASE("matches the oracle on random laminar-states instances") {
        for (std::uint64_t seed = 600; seed < 640; ++seed) {
            RandomParams params;
            params.n = 5;
            params.m = 3 + static_cast<int>(seed % 5);
            params.shape = RandomShape::LaminarStates;
            const Instance inst = gen_random(params, seed).instance;
            const auto r = laminar_states_exact_persuasion(inst);
            CHECK(r.utility == persuasion_oracle(inst).utility);
            CHECK(realized_sender_utility(inst, r.phi) == r.utility);
        }
    }
}

TEST_CASE("persuasion solver outputs satisfy row sums and the 2q_A cap") {
    for (std::uint64_t seed = 700; seed < 720; ++seed) {
        RandomParams params;
        params.n = 5;
        params.m = 4;
        const Instance inst = gen_random(params, seed).instance;
        const Rational cap = std::min(Rational(1), Rational(2 * inst.q_acceptable()));
        const auto r = approx_2n(inst);
        check_scheme(inst, r.phi);
        CHECK(r.utility <= cap);
        CHECK(realized_sender_utility(inst, r.phi) == r.utility);
    }
}
