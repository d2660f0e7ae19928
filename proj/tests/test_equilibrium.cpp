#include "pwe/equilibrium.hpp"
#include "pwe/generators.hpp"
#include "pwe/oracle.hpp"
#include "pwe/rng.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <algorithm>

using namespace pwe;

TEST_CASE("equilibrium on the receiver example pools on s2 and rejects") {
    const Instance inst = test::receiver_example();
    const auto r = compute_equilibrium(inst);
    CHECK(verify_equilibrium(inst, r.phi, r.psi).accepted);
    CHECK(r.psi.accept_prob[0] == 0);
    CHECK(r.psi.accept_prob[1] == 0);
    CHECK(r.phi.mass[inst.edge_index(inst.state_index("ta"), inst.signal_index("s2"))] ==
          make_rational(1, 2));
    CHECK(r.phi.mass[inst.edge_index(inst.state_index("tr"), inst.signal_index("s2"))] ==
          make_rational(1, 2));
    CHECK(evaluate(inst, r.phi, r.psi).receiver == make_rational(1, 2));
}

TEST_CASE("equilibrium on the sender example rejects everything") {
    const Instance inst = test::sender_example();
    const auto r = compute_equilibrium(inst);
    CHECK(verify_equilibrium(inst, r.phi, r.psi).accepted);
    const auto u = evaluate(inst, r.phi, r.psi);
    CHECK(u.sender == 0);
    for (const auto& p : r.psi.accept_prob) CHECK(p == 0);
}

TEST_CASE("all-acceptable instance accepts everything reachable") {
    RawInstance raw;
    raw.states = {{"t1", true, make_rational(1, 2)}, {"t2", true, make_rational(1, 2)}};
    raw.signals = {"s1", "s2"};
    raw.edges = {{"t1", "s1"}, {"t2", "s2"}};
    const Instance inst = must_validate(raw);
    const auto r = compute_equilibrium(inst);
    CHECK(verify_equilibrium(inst, r.phi, r.psi).accepted);
    CHECK(evaluate(inst, r.phi, r.psi).sender == 1);
}

TEST_CASE("equilibrium output verifies on random instances with bounded iterations") {
    for (std::uint64_t seed = 1; seed <= 120; ++seed) {
        Rng pick(seed);
        RandomParams params;
        params.n = 2 + static_cast<int>(pick.below(9));
        params.m = 2 + static_cast<int>(pick.below(9));
        params.density = 0.25 + 0.5 * pick.uniform();
        params.frac_acceptable = pick.uniform();
        const Instance inst = gen_random(params, seed * 31 + 7).instance;
        const auto r = compute_equilibrium(inst);
        const auto verdict = verify_equilibrium(inst, r.phi, r.psi);
        if (!verdict.accepted)
            for (const auto& v : verdict.violations) MESSAGE(v);
        CHECK(verdict.accepted);
        CHECK(static_cast<int>(r.trace.size()) <=
              std::min(inst.num_states(), inst.num_signals()));
    }
}

TEST_CASE("enumerate_deterministic_equilibria on the receiver example") {
    const Instance inst = test::receiver_example();
    const auto list = enumerate_deterministic_equilibria(inst);
    Rational best = 0, worst = 1;
    for (const auto& eq : list) {
        best = std::max(best, eq.receiver_utility_max);
        worst = std::min(worst, eq.receiver_utility_min);
    }
    CHECK(best == 1);
    CHECK(worst == make_rational(1, 2));
}

TEST_CASE("every equilibrium of the sender example has sender utility 0") {
    const auto list = enumerate_deterministic_equilibria(test::sender_example());
    REQUIRE(!list.empty());
    for (const auto& eq : list) CHECK(eq.sender_utility == 0);
}

TEST_CASE("all-acceptable instance has an all-accept equilibrium with both utilities 1") {
    RawInstance raw;
    raw.states = {{"t1", true, make_rational(2, 3)}, {"t2", true, make_rational(1, 3)}};
    raw.signals = {"s1"};
    raw.edges = {{"t1", "s1"}, {"t2", "s1"}};
    const Instance inst = must_validate(raw);
    const auto list = enumerate_deterministic_equilibria(inst);
    bool found = false;
    for (const auto& eq : list)
        if (eq.sender_utility == 1 && eq.receiver_utility_max == 1) found = true;
    CHECK(found);
}

TEST_CASE("price report on the two-signal examples") {
    SUBCASE("receiver example: PoA 2, PoS 1") {
        const auto r = price_report(test::receiver_example());
        REQUIRE(r.receiver_poa.has_value());
        REQUIRE(r.receiver_pos.has_value());
        CHECK(*r.receiver_poa == 2);
        CHECK(*r.receiver_pos == 1);
    }
    SUBCASE("sender example: commitment 1/2 over equilibrium 0") {
        const auto r = price_report(test::sender_example());
        CHECK(r.sender_optimum == make_rational(1, 2));
        CHECK(!r.sender_poa.has_value());  // infinite
        CHECK(!r.sender_pos.has_value());
    }
    SUBCASE("all-acceptable instance: every ratio 1") {
        RawInstance raw;
        raw.states = {{"t1", true, make_rational(1, 1)}};
        raw.signals = {"s1"};
        raw.edges = {{"t1", "s1"}};
        const auto r = price_report(must_validate(raw));
        CHECK(*r.receiver_poa == 1);
        CHECK(*r.receiver_pos == 1);
        CHECK(*r.sender_poa == 1);
        CHECK(*r.sender_pos == 1);
    }
}

TEST_CASE("enumerated equilibria respect the PoA-2 bound for the receiver") {
    for (std::uint64_t seed = 500; seed < 540; ++seed) {
        RandomParams params;
        params.n = 4;
        params.m = 4;
        const Instance inst = gen_random(params, seed).instance;
        const Rational opt = delegation_oracle(inst).utility;
        for (const auto& eq : enumerate_deterministic_equilibria(inst))
            CHECK(2 * eq.receiver_utility_min >= opt);
    }
}
