#include "pwe/flow.hpp"
#include "pwe/lp.hpp"
#include "pwe/rng.hpp"

#include <doctest.h>

#include <cmath>

using namespace pwe;

TEST_CASE("lp: trivial bound") {
    LinearProgram lp;
    const int x = lp.add_var(Rational(1), Rational(1));
    (void)x;
    const auto sol = lp_solve_exact(lp);
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.value == 1);
}

TEST_CASE("lp: infeasible pair") {
    LinearProgram lp;
    const int x = lp.add_var(Rational(1));
    lp.add_row({{x, Rational(1)}}, RowSense::GE, Rational(1));
    lp.add_row({{x, Rational(1)}}, RowSense::LE, Rational(0));
    CHECK(lp_solve_exact(lp).status == LpStatus::Infeasible);
    CHECK(lp_solve_float(lp).status == LpStatus::Infeasible);
}

TEST_CASE("lp: unbounded detection") {
    LinearProgram lp;
    const int x = lp.add_var(Rational(1));
    lp.add_row({{x, Rational(1)}}, RowSense::GE, Rational(2));
    CHECK(lp_solve_exact(lp).status == LpStatus::Unbounded);
}

TEST_CASE("lp: small system with equality and negative rhs") {
    LinearProgram lp;
    const int x = lp.add_var(Rational(2));
    const int y = lp.add_var(Rational(3));
    lp.add_row({{x, Rational(1)}, {y, Rational(1)}}, RowSense::EQ, make_rational(7, 2));
    lp.add_row({{x, Rational(-1)}, {y, Rational(-1)}}, RowSense::GE, Rational(-4));
    lp.add_row({{x, Rational(1)}, {y, Rational(-1)}}, RowSense::LE, Rational(1));
    const auto sol = lp_solve_exact(lp);
    REQUIRE(sol.status == LpStatus::Optimal);
    // Maximize 2x + 3y on x + y = 7/2: push everything to y.
    CHECK(sol.value == make_rational(21, 2));
    CHECK(sol.x[x] == 0);
    CHECK(sol.x[y] == make_rational(7, 2));
}

TEST_CASE("lp: degenerate program known to cycle under naive pivoting") {
    // Beale's example; the optimum is 1/20 at x = (1/25, 0, 1, 0).
    LinearProgram lp;
    const int x1 = lp.add_var(make_rational(3, 4));
    const int x2 = lp.add_var(make_rational(-150));
    const int x3 = lp.add_var(make_rational(1, 50));
    const int x4 = lp.add_var(make_rational(-6));
    lp.add_row({{x1, make_rational(1, 4)}, {x2, make_rational(-60)}, {x3, make_rational(-1, 25)},
                {x4, make_rational(9)}},
               RowSense::LE, Rational(0));
    lp.add_row({{x1, make_rational(1, 2)}, {x2, make_rational(-90)}, {x3, make_rational(-1, 50)},
                {x4, make_rational(3)}},
               RowSense::LE, Rational(0));
    lp.add_row({{x3, Rational(1)}}, RowSense::LE, Rational(1));
    const auto sol = lp_solve_exact(lp);
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.value == make_rational(1, 20));
    CHECK(sol.x[x1] == make_rational(1, 25));
    CHECK(sol.x[x3] == 1);
}

TEST_CASE("lp: exact solutions satisfy all constraints when plugged back") {
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        Rng rng(seed);
        LinearProgram lp;
        const int vars = 2 + static_cast<int>(rng.below(5));
        for (int v = 0; v < vars; ++v)
            lp.add_var(make_rational(static_cast<long>(rng.below(11)) - 5, 1 + rng.below(3)),
                       Rational(1 + static_cast<long>(rng.below(3))));
        const int rows = 1 + static_cast<int>(rng.below(5));
        for (int r = 0; r < rows; ++r) {
            std::vector<std::pair<int, Rational>> coeffs;
            for (int v = 0; v < vars; ++v)
                if (rng.below(3) != 0)
                    coeffs.push_back({v, make_rational(static_cast<long>(rng.below(9)) - 4)});
            if (coeffs.empty()) continue;
            const RowSense sense =
                rng.below(3) == 0 ? RowSense::LE : (rng.below(2) == 0 ? RowSense::GE : RowSense::EQ);
            lp.add_row(std::move(coeffs), sense, make_rational(static_cast<long>(rng.below(13)) - 4, 2));
        }
        const auto sol = lp_solve_exact(lp);
        if (sol.status != LpStatus::Optimal) continue;
        for (const auto& row : lp.rows) {
            Rational lhs = 0;
            for (const auto& [v, c] : row.coeffs) lhs += c * sol.x[v];
            switch (row.sense) {
                case RowSense::LE: CHECK(lhs <= row.rhs); break;
                case RowSense::GE: CHECK(lhs >= row.rhs); break;
                case RowSense::EQ: CHECK(lhs == row.rhs); break;
            }
        }
        for (int v = 0; v < vars; ++v) {
            CHECK(sol.x[v] >= 0);
            CHECK(sol.x[v] <= *lp.upper[v]);
        }
    }
}

TEST_CASE("lp: float mode agrees with exact mode") {
    for (std::uint64_t seed = 200; seed < 240; ++seed) {
        Rng rng(seed);
        LinearProgram lp;
        const int vars = 2 + static_cast<int>(rng.below(4));
        for (int v = 0; v < vars; ++v)
            lp.add_var(make_rational(1 + static_cast<long>(rng.below(5))), Rational(2));
        for (int r = 0; r < 3; ++r) {
            std::vector<std::pair<int, Rational>> coeffs;
            for (int v = 0; v < vars; ++v)
                coeffs.push_back({v, make_rational(1 + static_cast<long>(rng.below(4)))});
            lp.add_row(std::move(coeffs), RowSense::LE, make_rational(3 + static_cast<long>(rng.below(5))));
        }
        const auto exact = lp_solve_exact(lp);
        const auto approx = lp_solve_float(lp);
        REQUIRE(exact.status == LpStatus::Optimal);
        REQUIRE(approx.status == LpStatus::Optimal);
        CHECK(std::fabs(rational_to_double(exact.value) - approx.value) <= 1e-9);
    }
}

TEST_CASE("flow: single arc") {
    FlowNetwork net;
    net.num_nodes = 2;
    net.source = 0;
    net.sink = 1;
    net.add_arc(0, 1, make_rational(3, 7));
    const auto result = max_flow(net);
    CHECK(result.value == make_rational(3, 7));
    CHECK(result.cut_capacity == result.value);
}

TEST_CASE("flow: disconnected source and sink") {
    FlowNetwork net;
    net.num_nodes = 3;
    net.source = 0;
    net.sink = 2;
    net.add_arc(0, 1, Rational(1));
    const auto result = max_flow(net);
    CHECK(result.value == 0);
    CHECK(result.cut_capacity == 0);
}

TEST_CASE("flow: receiver-example network saturates both auxiliary arcs") {
    // s -> ta (1/2), ta -> s1, ta -> s2, s2 -> tr (uncapped), tr -> t (1/2).
    FlowNetwork net;
    net.num_nodes = 6;  // s=0, ta=1, tr=2, s1=3, s2=4, t=5
    net.source = 0;
    net.sink = 5;
    const int a0 = net.add_arc(0, 1, make_rational(1, 2));
    net.add_uncapped_arc(1, 3);
    net.add_uncapped_arc(1, 4);
    net.add_uncapped_arc(4, 2);
    const int a4 = net.add_arc(2, 5, make_rational(1, 2));
    const auto result = max_flow(net);
    CHECK(result.value == make_rational(1, 2));
    CHECK(result.flow[a0] == make_rational(1, 2));
    CHECK(result.flow[a4] == make_rational(1, 2));
    CHECK(result.cut_capacity == result.value);
}

TEST_CASE("flow: unbounded when an uncapped path exists") {
    FlowNetwork net;
    net.num_nodes = 3;
    net.source = 0;
    net.sink = 2;
    net.add_uncapped_arc(0, 1);
    net.add_uncapped_arc(1, 2);
    CHECK(max_flow(net).unbounded);
}

TEST_CASE("flow: strong duality on random networks") {
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        Rng rng(seed);
        FlowNetwork net;
        net.num_nodes = 4 + static_cast<int>(rng.below(5));
        net.source = 0;
        net.sink = net.num_nodes - 1;
        const int arcs = 5 + static_cast<int>(rng.below(12));
        for (int a = 0; a < arcs; ++a) {
            const int from = static_cast<int>(rng.below(net.num_nodes - 1));
            int to = 1 + static_cast<int>(rng.below(net.num_nodes - 1));
            if (from == to) to = net.num_nodes - 1;
            net.add_arc(from, to, make_rational(1 + static_cast<long>(rng.below(12)), 1 + rng.below(7)));
        }
        const auto result = max_flow(net);
        REQUIRE(!result.unbounded);
        CHECK(result.value == result.cut_capacity);
        for (int v = 1; v + 1 < net.num_nodes; ++v) {
            Rational in = 0, out = 0;
            for (size_t a = 0; a < net.arcs.size(); ++a) {
                if (net.arcs[a].to == v) in += result.flow[a];
                if (net.arcs[a].from == v) out += result.flow[a];
            }
            CHECK(in == out);
        }
    }
}
