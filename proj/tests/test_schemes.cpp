#include "pwe/errors.hpp"
#include "pwe/generators.hpp"
#include "pwe/lp.hpp"
#include "pwe/rng.hpp"
#include "pwe/schemes.hpp"

#include "test_support.hpp"

#include <doctest.h>
#include <nlohmann/json.hpp>

using namespace pwe;

namespace {

// Random signaling scheme: each state's mass is split over its edges with
// random integer weights.
SignalingScheme random_phi(const Instance& inst, Rng& rng) {
    SignalingScheme phi;
    phi.mass.assign(inst.num_edges(), Rational(0));
    for (int s = 0; s < inst.num_states(); ++s) {
        long total = 0;
        std::vector<long> w(inst.state_edges[s].size());
        for (auto& x : w) {
            x = rng.below(5);
            total += x;
        }
        if (total == 0) {
            w[0] = 1;
            total = 1;
        }
        for (size_t i = 0; i < w.size(); ++i)
            if (w[i] > 0)
                phi.mass[inst.state_edges[s][i]] = inst.states[s].q * make_rational(w[i], total);
    }
    return phi;
}

}  // namespace

TEST_CASE("evaluate on the receiver example") {
    const Instance inst = test::receiver_example();
    SUBCASE("separating scheme gives the receiver utility 1") {
        const auto phi = test::make_phi(inst, {{"ta", "s1"}, {"tr", "s2"}},
                                        {make_rational(1, 2), make_rational(1, 2)});
        const auto psi = test::make_psi(inst, {Rational(1), Rational(0)});
        const auto u = evaluate(inst, phi, psi);
        CHECK(u.receiver == 1);
        CHECK(u.sender == make_rational(1, 2));
    }
    SUBCASE("pooled scheme with both signals accepted gives 1/2") {
        const auto phi = test::make_phi(inst, {{"ta", "s1"}, {"ta", "s2"}, {"tr", "s2"}},
                                        {make_rational(1, 4), make_rational(1, 4), make_rational(1, 2)});
        const auto psi = test::make_psi(inst, {Rational(1), Rational(1)});
        CHECK(evaluate(inst, phi, psi).receiver == make_rational(1, 2));
    }
    SUBCASE("reject-all yields sender 0 and receiver q_R") {
        const auto phi = test::make_phi(inst, {{"ta", "s1"}, {"tr", "s2"}},
                                        {make_rational(1, 2), make_rational(1, 2)});
        const auto psi = test::make_psi(inst, {Rational(0), Rational(0)});
        const auto u = evaluate(inst, phi, psi);
        CHECK(u.sender == 0);
        CHECK(u.receiver == inst.q_rejectable());
    }
}

TEST_CASE("evaluate rejects mismatched schemes") {
    const Instance inst = test::receiver_example();
    SignalingScheme phi;
    phi.mass.assign(2, Rational(0));
    DecisionScheme psi = test::make_psi(inst, {Rational(0), Rational(0)});
    CHECK_THROWS_AS(evaluate(inst, phi, psi), InputError);

    // Row sums must match the prior exactly.
    auto bad = test::make_phi(inst, {{"ta", "s1"}}, {make_rational(1, 3)});
    CHECK_THROWS_AS(check_scheme(inst, bad), InputError);
}

TEST_CASE("sender_best_response") {
    const Instance inst = test::sender_example();
    SUBCASE("all-zero psi routes to the first signal") {
        const auto psi = test::make_psi(inst, {Rational(0), Rational(0)});
        const auto phi = sender_best_response(inst, psi);
        CHECK(phi.mass[inst.edge_index(0, 0)] == make_rational(1, 4));
        CHECK(phi.mass[inst.edge_index(1, 0)] == make_rational(3, 4));
    }
    SUBCASE("accepted signal attracts all mass") {
        const auto psi = test::make_psi(inst, {Rational(1), Rational(0)});
        const auto phi = sender_best_response(inst, psi);
        CHECK(phi.mass[inst.edge_index(0, 0)] == make_rational(1, 4));
        CHECK(phi.mass[inst.edge_index(1, 0)] == make_rational(3, 4));
        CHECK(signal_mass_total(inst, phi, 1) == 0);
    }
    SUBCASE("maximizes sender utility against an LP oracle") {
        for (std::uint64_t seed = 1; seed <= 25; ++seed) {
            RandomParams params;
            params.n = 4;
            params.m = 5;
            const Instance random_inst = gen_random(params, seed).instance;
            Rng rng(seed + 99);
            DecisionScheme psi;
            psi.deterministic = false;
            for (int g = 0; g < random_inst.num_signals(); ++g)
                psi.accept_prob.push_back(make_rational(rng.below(5), 4));
            const auto phi = sender_best_response(random_inst, psi);
            const Rational got = evaluate(random_inst, phi, psi).sender;

            LinearProgram lp;
            std::vector<int> vars(random_inst.num_edges());
            for (int e = 0; e < random_inst.num_edges(); ++e)
                vars[e] = lp.add_var(psi.accept_prob[random_inst.edges[e].second]);
            for (int s = 0; s < random_inst.num_states(); ++s) {
                std::vector<std::pair<int, Rational>> row;
                for (int e : random_inst.state_edges[s]) row.push_back({vars[e], Rational(1)});
                lp.add_row(std::move(row), RowSense::EQ, random_inst.states[s].q);
            }
            const auto best = lp_solve_exact(lp);
            REQUIRE(best.status == LpStatus::Optimal);
            CHECK(got == best.value);
        }
    }
}

TEST_CASE("receiver_best_response") {
    const Instance inst = test::receiver_example();
    SUBCASE("separating scheme") {
        const auto phi = test::make_phi(inst, {{"ta", "s1"}, {"tr", "s2"}},
                                        {make_rational(1, 2), make_rational(1, 2)});
        const auto psi = receiver_best_response(inst, phi);
        CHECK(psi.accept_prob[0] == 1);
        CHECK(psi.accept_prob[1] == 0);
        CHECK(psi.deterministic);
    }
    SUBCASE("ties favor the sender") {
        const auto phi = test::make_phi(inst, {{"ta", "s2"}, {"tr", "s2"}},
                                        {make_rational(1, 2), make_rational(1, 2)});
        const auto psi = receiver_best_response(inst, phi);
        CHECK(psi.accept_prob[1] == 1);
        CHECK(psi.accept_prob[0] == 1);  // zero-mass signal: vacuous tie
    }
    SUBCASE("strict minority mass is rejected") {
        RawInstance raw;
        raw.states = {{"ta", true, make_rational(1, 4)}, {"tr", false, make_rational(3, 4)}};
        raw.signals = {"s1"};
        raw.edges = {{"ta", "s1"}, {"tr", "s1"}};
        const Instance pooled = must_validate(raw);
        SignalingScheme phi;
        phi.mass = {make_rational(1, 4), make_rational(3, 4)};
        CHECK(receiver_best_response(pooled, phi).accept_prob[0] == 0);
    }
    SUBCASE("maximizes receiver utility over deterministic schemes") {
        for (std::uint64_t seed = 50; seed < 80; ++seed) {
            RandomParams params;
            params.n = 5;
            params.m = 4;
            const Instance random_inst = gen_random(params, seed).instance;
            Rng rng(seed);
            const auto phi = random_phi(random_inst, rng);
            const auto psi = receiver_best_response(random_inst, phi);
            const Rational got = evaluate(random_inst, phi, psi).receiver;
            const int m = random_inst.num_signals();
            for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
                DecisionScheme alt;
                alt.deterministic = true;
                alt.accept_prob.assign(m, Rational(0));
                for (int g = 0; g < m; ++g)
                    if ((mask >> g) & 1u) alt.accept_prob[g] = 1;
                CHECK(got >= evaluate(random_inst, phi, alt).receiver);
            }
        }
    }
}

TEST_CASE("utilities stay within [0,1] and the persuasion bound holds") {
    for (std::uint64_t seed = 300; seed < 360; ++seed) {
        RandomParams params;
        params.n = 4 + static_cast<int>(seed % 4);
        params.m = 3 + static_cast<int>(seed % 5);
        const Instance inst = gen_random(params, seed).instance;
        Rng rng(seed * 7 + 1);
        const auto phi = random_phi(inst, rng);
        const auto psi = receiver_best_response(inst, phi);
        const auto u = evaluate(inst, phi, psi);
        CHECK(u.sender >= 0);
        CHECK(u.sender <= 1);
        CHECK(u.receiver >= 0);
        CHECK(u.receiver <= 1);
        // Sender utility of any scheme under best response is at most min(1, 2 q_A).
        CHECK(u.sender <= std::min(Rational(1), Rational(2 * inst.q_acceptable())));
    }
}

TEST_CASE("verify_equilibrium on the examples") {
    const Instance inst = test::receiver_example();
    SUBCASE("separating pair is an equilibrium") {
        const auto phi = test::make_phi(inst, {{"ta", "s1"}, {"tr", "s2"}},
                                        {make_rational(1, 2), make_rational(1, 2)});
        const auto psi = test::make_psi(inst, {Rational(1), Rational(0)});
        CHECK(verify_equilibrium(inst, phi, psi).accepted);
    }
    SUBCASE("sender deviation is caught") {
        const Instance sender = test::sender_example();
        // psi accepts s1 but the rejectable state splits across both signals.
        const auto phi = test::make_phi(sender, {{"ta", "s1"}, {"tr", "s1"}, {"tr", "s2"}},
                                        {make_rational(1, 4), make_rational(1, 4), make_rational(1, 2)});
        const auto psi = test::make_psi(sender, {Rational(1), Rational(0)});
        const auto verdict = verify_equilibrium(sender, phi, psi);
        CHECK(!verdict.accepted);
        bool sender_violation = false;
        for (const auto& v : verdict.violations)
            if (v.find("sender-deviation") != std::string::npos) sender_violation = true;
        CHECK(sender_violation);
    }
    SUBCASE("receiver irrationality is caught") {
        const auto phi = test::make_phi(inst, {{"ta", "s2"}, {"tr", "s2"}},
                                        {make_rational(1, 2), make_rational(1, 2)});
        // Fractional acceptance requires exact indifference; s2 is tied, so
        // fractional there is fine, but accepting s1... s1 has zero mass and
        // is exempt. Use a pooled scheme with strict inequality instead.
        const Instance pooled = test::sender_example();
        const auto phi2 = test::make_phi(pooled, {{"ta", "s1"}, {"tr", "s1"}},
                                         {make_rational(1, 4), make_rational(3, 4)});
        const auto psi2 = test::make_psi(pooled, {Rational(1), Rational(0)});
        const auto verdict = verify_equilibrium(pooled, phi2, psi2);
        CHECK(!verdict.accepted);
        (void)phi;
    }
}

TEST_CASE("scheme JSON round-trip") {
    const Instance inst = test::receiver_example();
    const auto phi = test::make_phi(inst, {{"ta", "s1"}, {"ta", "s2"}, {"tr", "s2"}},
                                    {make_rational(1, 4), make_rational(1, 4), make_rational(1, 2)});
    const auto psi = test::make_psi(inst, {Rational(1), make_rational(1, 3)});
    const auto phi2 = signaling_from_json(inst, signaling_to_json(inst, phi));
    const auto psi2 = decision_from_json(inst, decision_to_json(inst, psi));
    CHECK(phi2.mass == phi.mass);
    CHECK(psi2.accept_prob == psi.accept_prob);
    CHECK(!psi2.deterministic);
}
