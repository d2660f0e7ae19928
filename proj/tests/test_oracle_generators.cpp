#include "pwe/delegation.hpp"
#include "pwe/errors.hpp"
#include "pwe/generators.hpp"
#include "pwe/oracle.hpp"
#include "pwe/persuasion.hpp"
#include "pwe/rng.hpp"

#include "test_support.hpp"

#include <doctest.h>
#include <nlohmann/json.hpp>

using namespace pwe;

TEST_CASE("delegation oracle on the examples") {
    CHECK(delegation_oracle(test::receiver_example()).utility == 1);

    RawInstance raw;
    raw.states = {{"t1", true, make_rational(1, 2)}, {"t2", true, make_rational(1, 2)}};
    raw.signals = {"s1"};
    raw.edges = {{"t1", "s1"}, {"t2", "s1"}};
    CHECK(delegation_oracle(must_validate(raw)).utility == 1);
}

TEST_CASE("delegation oracle: serial and parallel kernels agree") {
    for (std::uint64_t seed = 1; seed <= 15; ++seed) {
        RandomParams params;
        params.n = 6;
        params.m = 8;
        const Instance inst = gen_random(params, seed).instance;
        const auto serial = delegation_oracle_serial(inst);
        const auto parallel = delegation_oracle(inst);
        CHECK(serial.utility == parallel.utility);
        CHECK(serial.best_mask == parallel.best_mask);
        // The mask value recomputes through the evaluator.
        CHECK(DelegationEvaluator(inst).utility(serial.best_mask) == serial.utility);
    }
}

TEST_CASE("delegation evaluator handles huge denominators") {
    // Force the common denominator over 2^63 so the GMP path runs.
    RawInstance raw;
    const mpz_class p1("2147483647");            // 2^31 - 1
    const mpz_class p2("2305843009213693951");   // 2^61 - 1
    Rational q1 = Rational(mpz_class(1), p1);
    Rational q2 = Rational(mpz_class(1), p2);
    Rational q3 = Rational(1) - q1 - q2;
    raw.states = {{"t1", true, q1}, {"t2", false, q2}, {"t3", true, q3}};
    raw.signals = {"s1", "s2"};
    raw.edges = {{"t1", "s1"}, {"t2", "s2"}, {"t3", "s1"}, {"t3", "s2"}};
    const Instance inst = must_validate(raw);
    const auto serial = delegation_oracle_serial(inst);
    const auto parallel = delegation_oracle(inst);
    CHECK(serial.utility == parallel.utility);
    CHECK(serial.utility == q1 + q2 + q3);  // accept s1 only: all states correct
}

TEST_CASE("persuasion oracle on the examples") {
    CHECK(persuasion_oracle(test::sender_example()).utility == make_rational(1, 2));
    const auto serial = persuasion_oracle_serial(test::sender_example());
    CHECK(serial.utility == make_rational(1, 2));
}

TEST_CASE("persuasion oracle: serial and parallel kernels agree") {
    for (std::uint64_t seed = 21; seed <= 28; ++seed) {
        RandomParams params;
        params.n = 5;
        params.m = 6;
        const Instance inst = gen_random(params, seed).instance;
        const auto serial = persuasion_oracle_serial(inst);
        const auto parallel = persuasion_oracle(inst);
        CHECK(serial.utility == parallel.utility);
        CHECK(serial.best_mask == parallel.best_mask);
    }
}

TEST_CASE("oracle invariants") {
    for (std::uint64_t seed = 31; seed <= 45; ++seed) {
        RandomParams params;
        params.n = 5;
        params.m = 5;
        const Instance inst = gen_random(params, seed).instance;
        const Rational del = delegation_oracle(inst).utility;
        const Rational per = persuasion_oracle(inst).utility;
        CHECK(del >= std::max(inst.q_acceptable(), inst.q_rejectable()));
        CHECK(per <= std::min(Rational(1), Rational(2 * inst.q_acceptable())));
    }
}

TEST_CASE("persuasion oracle equals the unique-accepts characterization") {
    for (std::uint64_t seed = 51; seed <= 70; ++seed) {
        RandomParams params;
        params.n = 5;
        params.m = 5;
        params.shape = RandomShape::UniqueAccepts;
        const Instance inst = gen_random(params, seed).instance;
        int theta_a = -1;
        for (int s = 0; s < inst.num_states(); ++s)
            if (inst.states[s].acceptable) theta_a = s;
        const Rational qa = inst.states[theta_a].q;

        Rational best = 0;
        for (std::uint32_t mask = 1; mask < (1u << inst.num_signals()); ++mask) {
            std::vector<int> accept;
            for (int g = 0; g < inst.num_signals(); ++g)
                if ((mask >> g) & 1u) accept.push_back(g);
            if (!unique_accepts_partition_feasible(inst, accept)) continue;
            std::vector<char> seen(inst.num_states(), 0);
            Rational reach = 0;
            for (int g : accept)
                for (int s : inst.signal_states[g])
                    if (!seen[s]) {
                        seen[s] = 1;
                        reach += inst.states[s].q;
                    }
            best = std::max(best, std::min(Rational(2 * qa), reach));
        }
        CHECK(best == persuasion_oracle(inst).utility);
    }
}

TEST_CASE("bounded_ratio_check") {
    CHECK(bounded_ratio_check(make_rational(1, 1), make_rational(1, 2)).ratio == 2);
    CHECK(bounded_ratio_check(Rational(0), Rational(0)).ratio == 1);
    CHECK(bounded_ratio_check(Rational(1), Rational(0)).infinite);
}

TEST_CASE("size caps are hard errors") {
    RandomParams params;
    params.n = 4;
    params.m = 19;
    params.density = 0.3;
    const Instance inst = gen_random(params, 5).instance;
    CHECK_THROWS_AS(persuasion_oracle(inst), PreconditionError);
}

TEST_CASE("independent-set gadget") {
    Graph triangle;
    triangle.vertices = {"a", "b", "c"};
    triangle.edges = {{0, 1}, {0, 2}, {1, 2}};
    const auto gen = gen_independent_set(triangle);
    CHECK(gen.instance.num_states() == 6);
    CHECK(gen.instance.num_signals() == 3);
    CHECK(gen.metadata.at("opt_persuasion").get<std::string>() == "1/6");
    CHECK(persuasion_oracle(gen.instance).utility == make_rational(1, 6));
}

TEST_CASE("vertex-cover gadget") {
    Graph triangle;
    triangle.vertices = {"a", "b", "c"};
    triangle.edges = {{0, 1}, {0, 2}, {1, 2}};
    const auto gen = gen_vertex_cover(triangle);
    CHECK(gen.metadata.at("vertex_cover_size").get<int>() == 2);
    CHECK(gen.metadata.at("opt_delegation").get<std::string>() == "2/3");
    CHECK(delegation_oracle(gen.instance).utility == make_rational(2, 3));
}

TEST_CASE("partition gadget") {
    SUBCASE("perfect partition exists for (1,1,2)") {
        const auto gen = gen_partition({1, 1, 2});
        CHECK(gen.instance.num_states() == 4);
        CHECK(gen.metadata.at("has_perfect_partition").get<bool>());
        CHECK(gen.metadata.at("opt_persuasion").get<std::string>() == "2/3");
        CHECK(persuasion_oracle(gen.instance).utility == make_rational(2, 3));
        // Priors per the construction.
        const Instance& inst = gen.instance;
        CHECK(inst.states[inst.state_index("t_global")].q == make_rational(1, 3));
        CHECK(inst.states[inst.state_index("t01")].q == make_rational(1, 6));
        CHECK(inst.states[inst.state_index("t03")].q == make_rational(1, 3));
    }
    SUBCASE("no perfect partition for (1,1,1)") {
        const auto gen = gen_partition({1, 1, 1});
        CHECK(!gen.metadata.at("has_perfect_partition").get<bool>());
        const Rational opt = persuasion_oracle(gen.instance).utility;
        CHECK(opt < make_rational(2, 3));
        CHECK(rational_to_string(opt) == gen.metadata.at("opt_persuasion").get<std::string>());
    }
}

TEST_CASE("cbve gadget") {
    ColoredBipartite cb;
    cb.classes = {{"u1", "u2"}, {"u3"}};
    cb.right = {"v1", "v2"};
    cb.edges = {{"u1", "v1"}, {"u2", "v2"}, {"u3", "v1"}, {"u3", "v2"}};
    const auto gen = gen_cbve(cb);
    CHECK(gen.instance.q_acceptable() == make_rational(1, 2));
    CHECK(gen.instance.q_rejectable() == make_rational(1, 2));
    CHECK(gen.metadata.at("q_acceptable").get<std::string>() == "1/2");
}

TEST_CASE("max-k-vertex-cover gadget") {
    Graph path;
    path.vertices = {"a", "b", "c"};
    path.edges = {{0, 1}, {1, 2}};
    const auto gen = gen_max_k_vertex_cover(path, 1);
    const Rational opt = persuasion_oracle(gen.instance).utility;
    CHECK(rational_to_string(opt) == gen.metadata.at("opt_persuasion").get<std::string>());
    CHECK(gen.metadata.at("max_cover_edges").get<int>() == 2);  // middle vertex covers both
    CHECK(classify(gen.instance).unique_accepts);
}

TEST_CASE("independent-set-rejects gadget") {
    Graph pair;
    pair.vertices = {"a", "b"};
    pair.edges = {{0, 1}};
    const auto gen = gen_independent_set_rejects(pair, 8);
    CHECK(gen.instance.num_states() == 6);
    CHECK(gen.instance.num_signals() == 2);
    CHECK(classify(gen.instance).max_reject_degree == 1);
    // Weight normalization: 2|V|M + |V| + 2|E| = 36; r_a weighs M + deg = 9.
    CHECK(gen.instance.states[gen.instance.state_index("r_a")].q == make_rational(9, 36));
}

TEST_CASE("random generation is reproducible and validates") {
    for (const auto shape : {RandomShape::General, RandomShape::UniqueAccepts,
                             RandomShape::UniqueRejects, RandomShape::DegreeBounded,
                             RandomShape::LaminarStates, RandomShape::LaminarSignals,
                             RandomShape::GlobalSignal, RandomShape::Membership}) {
        RandomParams params;
        params.n = shape == RandomShape::Membership ? 3 : 6;
        params.m = 7;
        params.shape = shape;
        const auto a = gen_random(params, 12345);
        const auto b = gen_random(params, 12345);
        CHECK(instance_to_json(a.instance) == instance_to_json(b.instance));
        const auto c = gen_random(params, 54321);
        (void)c;  // must validate without throwing

        const InstanceProfile p = classify(a.instance);
        switch (shape) {
            case RandomShape::UniqueAccepts: CHECK(p.unique_accepts); break;
            case RandomShape::UniqueRejects: CHECK(p.unique_rejects); break;
            case RandomShape::DegreeBounded: CHECK(p.max_state_degree <= 2); break;
            case RandomShape::LaminarStates: CHECK(p.laminar_states); break;
            case RandomShape::LaminarSignals: CHECK(p.laminar_signals); break;
            case RandomShape::GlobalSignal: CHECK(p.has_global_signal); break;
            case RandomShape::Membership: CHECK(p.proof_of_membership_shape); break;
            default: break;
        }
    }
}

TEST_CASE("gadget oracles reproduce metadata on random graphs") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const Graph g = random_graph(4 + static_cast<int>(seed % 3), 0.5, seed);
        const auto is_gadget = gen_independent_set(g);
        CHECK(rational_to_string(persuasion_oracle(is_gadget.instance).utility) ==
              is_gadget.metadata.at("opt_persuasion").get<std::string>());
        const auto vc_gadget = gen_vertex_cover(g);
        CHECK(rational_to_string(delegation_oracle(vc_gadget.instance).utility) ==
              vc_gadget.metadata.at("opt_delegation").get<std::string>());
    }
}
