#ifndef PWE_LP_HPP
#define PWE_LP_HPP

#include "pwe/rational.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace pwe {

enum class RowSense { LE, EQ, GE };

// Maximization program over variables x >= 0 with optional upper bounds.
struct LinearProgram {
    int num_vars = 0;
    std::vector<Rational> objective;
    Rational objective_constant = 0;

    struct Row {
        std::vector<std::pair<int, Rational>> coeffs;
        RowSense sense = RowSense::LE;
        Rational rhs;
    };
    std::vector<Row> rows;
    std::vector<std::optional<Rational>> upper;

    int add_var(const Rational& objective_coef, std::optional<Rational> upper_bound = {});
    void add_row(std::vector<std::pair<int, Rational>> coeffs, RowSense sense, Rational rhs);
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    Rational value;
    std::vector<Rational> x;
};

struct LpFloatSolution {
    LpStatus status = LpStatus::Infeasible;
    double value = 0.0;
    std::vector<double> x;
};

// Two-phase primal simplex on exact rationals. Deterministic pivoting with a
// Bland anti-cycling fallback; the returned solution is a vertex.
LpSolution lp_solve_exact(const LinearProgram& program);

// Same pivoting machinery instantiated on binary64, for cross-checks.
LpFloatSolution lp_solve_float(const LinearProgram& program);

}  // namespace pwe

#endif
