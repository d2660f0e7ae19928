#include "pwe/lp.hpp"

#include "pwe/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace pwe {

int LinearProgram::add_var(const Rational& objective_coef, std::optional<Rational> upper_bound) {
    objective.push_back(objective_coef);
    upper.push_back(std::move(upper_bound));
    return num_vars++;
}

void LinearProgram::add_row(std::vector<std::pair<int, Rational>> coeffs, RowSense sense, Rational rhs) {
    rows.push_back({std::move(coeffs), sense, std::move(rhs)});
}

namespace {

struct ExactPolicy {
    using Num = Rational;
    static int sign(const Num& v) { return sgn(v); }
    static Num from_rational(const Rational& v) { return v; }
};

struct FloatPolicy {
    using Num = double;
    static constexpr double kEps = 1e-11;
    static int sign(double v) { return v > kEps ? 1 : (v < -kEps ? -1 : 0); }
    static double from_rational(const Rational& v) { return rational_to_double(v); }
};

// Dense two-phase tableau simplex. Pivot choice: steepest reduced cost with
// lowest-index ties, switching permanently to Bland's rule after a run of
// degenerate pivots so cycling is impossible.
template <class Policy>
class Simplex {
    using Num = typename Policy::Num;

  public:
    explicit Simplex(const LinearProgram& prog) : prog_(prog) {}

    LpStatus solve() {
        build();
        if (!phase_one()) return LpStatus::Infeasible;
        if (!phase_two()) return LpStatus::Unbounded;
        return LpStatus::Optimal;
    }

    Num variable_value(int var) const {
        for (size_t i = 0; i < basis_.size(); ++i)
            if (basis_[i] == var) return rows_[i].back();
        return Num(0);
    }

    Num objective_value() const {
        Num total = Policy::from_rational(prog_.objective_constant);
        for (int v = 0; v < prog_.num_vars; ++v)
            total += Policy::from_rational(prog_.objective[v]) * variable_value(v);
        return total;
    }

  private:
    const LinearProgram& prog_;
    std::vector<std::vector<Num>> rows_;  // constraint rows, rhs in last cell
    std::vector<int> basis_;              // basic column per row
    std::vector<Num> zrow_;               // c_B B^-1 A - c, rhs cell = objective
    int cols_ = 0;                        // structural + slack + artificial
    int first_artificial_ = 0;
    bool bland_ = false;
    int degenerate_run_ = 0;

    void build() {
        // Upper bounds become explicit rows; everything else is x >= 0.
        std::vector<LinearProgram::Row> all_rows = prog_.rows;
        for (int v = 0; v < prog_.num_vars; ++v)
            if (prog_.upper[v]) all_rows.push_back({{{v, Rational(1)}}, RowSense::LE, *prog_.upper[v]});

        int slacks = 0, artificials = 0;
        for (const auto& row : all_rows) {
            const bool flip = row.rhs < 0;
            RowSense sense = row.sense;
            if (flip && sense != RowSense::EQ) sense = (sense == RowSense::LE) ? RowSense::GE : RowSense::LE;
            if (sense != RowSense::EQ) ++slacks;
            if (sense != RowSense::LE) ++artificials;
        }
        first_artificial_ = prog_.num_vars + slacks;
        cols_ = first_artificial_ + artificials;

        rows_.assign(all_rows.size(), std::vector<Num>(cols_ + 1, Num(0)));
        basis_.assign(all_rows.size(), -1);
        int next_slack = prog_.num_vars;
        int next_artificial = first_artificial_;
        for (size_t i = 0; i < all_rows.size(); ++i) {
            const auto& row = all_rows[i];
            const bool flip = row.rhs < 0;
            for (const auto& [v, coef] : row.coeffs) {
                Num value = Policy::from_rational(coef);
                rows_[i][v] += flip ? -value : value;
            }
            rows_[i].back() = Policy::from_rational(flip ? Rational(-row.rhs) : row.rhs);
            RowSense sense = row.sense;
            if (flip && sense != RowSense::EQ) sense = (sense == RowSense::LE) ? RowSense::GE : RowSense::LE;
            switch (sense) {
                case RowSense::LE:
                    rows_[i][next_slack] = Num(1);
                    basis_[i] = next_slack++;
                    break;
                case RowSense::GE:
                    rows_[i][next_slack++] = Num(-1);
                    rows_[i][next_artificial] = Num(1);
                    basis_[i] = next_artificial++;
                    break;
                case RowSense::EQ:
                    rows_[i][next_artificial] = Num(1);
                    basis_[i] = next_artificial++;
                    break;
            }
        }
    }

    void pivot(size_t row, int col) {
        auto& prow = rows_[row];
        const Num inv = prow[col];
        if (!(inv == Num(1)))
            for (auto& cell : prow) cell /= inv;
        prow[col] = Num(1);
        for (size_t i = 0; i < rows_.size(); ++i) {
            if (i == row) continue;
            eliminate(rows_[i], prow, col);
        }
        eliminate(zrow_, prow, col);
        basis_[row] = col;
    }

    void eliminate(std::vector<Num>& target, const std::vector<Num>& prow, int col) {
        if (Policy::sign(target[col]) == 0) {
            target[col] = Num(0);
            return;
        }
        const Num factor = target[col];
        for (int c = 0; c <= cols_; ++c) {
            if (Policy::sign(prow[c]) == 0) continue;
            target[c] -= factor * prow[c];
        }
        target[col] = Num(0);
    }

    int choose_entering(int limit) const {
        int best = -1;
        for (int c = 0; c < limit; ++c) {
            if (Policy::sign(zrow_[c]) >= 0) continue;
            if (bland_) return c;
            if (best < 0 || zrow_[c] < zrow_[best]) best = c;
        }
        return best;
    }

    int choose_leaving(int col) const {
        int best = -1;
        for (size_t i = 0; i < rows_.size(); ++i) {
            if (Policy::sign(rows_[i][col]) <= 0) continue;
            if (best < 0) {
                best = static_cast<int>(i);
                continue;
            }
            // Compare rhs_i / a_i < rhs_b / a_b without dividing.
            const Num lhs = rows_[i].back() * rows_[best][col];
            const Num rhs = rows_[best].back() * rows_[i][col];
            if (lhs < rhs || (lhs == rhs && basis_[i] < basis_[best])) best = static_cast<int>(i);
        }
        return best;
    }

    // Returns false on unbounded objective.
    bool iterate(int column_limit) {
        long budget = 20000 + 400L * (static_cast<long>(rows_.size()) + cols_);
        while (true) {
            const int entering = choose_entering(column_limit);
            if (entering < 0) return true;
            const int leaving = choose_leaving(entering);
            if (leaving < 0) return false;
            const bool degenerate = Policy::sign(rows_[leaving].back()) == 0;
            pivot(leaving, entering);
            if (degenerate) {
                if (++degenerate_run_ > 48) bland_ = true;
            } else {
                degenerate_run_ = 0;
            }
            if (--budget < 0) throw std::runtime_error("simplex iteration cap exceeded");
        }
    }

    bool phase_one() {
        if (first_artificial_ == cols_) {
            load_phase_two_objective();
            return true;
        }
        // Maximize -sum(artificials); price out the artificial basis.
        zrow_.assign(cols_ + 1, Num(0));
        for (int c = first_artificial_; c < cols_; ++c) zrow_[c] = Num(1);
        for (size_t i = 0; i < rows_.size(); ++i)
            if (basis_[i] >= first_artificial_) {
                for (int c = 0; c <= cols_; ++c) {
                    if (Policy::sign(rows_[i][c]) == 0) continue;
                    zrow_[c] -= rows_[i][c];
                }
                zrow_[basis_[i]] = Num(0);
            }
        if (!iterate(first_artificial_)) return false;
        // Objective cell holds -(sum of artificials); nonzero means infeasible.
        if (Policy::sign(zrow_.back()) != 0) return false;

        // Drive leftover artificials out of the basis; all-zero rows are
        // redundant constraints and can be dropped.
        for (size_t i = 0; i < rows_.size();) {
            if (basis_[i] < first_artificial_) {
                ++i;
                continue;
            }
            int col = -1;
            for (int c = 0; c < first_artificial_ && col < 0; ++c)
                if (Policy::sign(rows_[i][c]) != 0) col = c;
            if (col >= 0) {
                pivot(i, col);
                ++i;
            } else {
                rows_.erase(rows_.begin() + static_cast<long>(i));
                basis_.erase(basis_.begin() + static_cast<long>(i));
            }
        }
        load_phase_two_objective();
        return true;
    }

    void load_phase_two_objective() {
        zrow_.assign(cols_ + 1, Num(0));
        for (int v = 0; v < prog_.num_vars; ++v) zrow_[v] = -Policy::from_rational(prog_.objective[v]);
        for (size_t i = 0; i < rows_.size(); ++i) {
            const int b = basis_[i];
            if (b >= prog_.num_vars || Policy::sign(zrow_[b]) == 0) continue;
            const Num factor = zrow_[b];
            for (int c = 0; c <= cols_; ++c) {
                if (Policy::sign(rows_[i][c]) == 0) continue;
                zrow_[c] -= factor * rows_[i][c];
            }
            zrow_[b] = Num(0);
        }
        bland_ = false;
        degenerate_run_ = 0;
    }

    bool phase_two() { return iterate(first_artificial_); }
};

}  // namespace

LpSolution lp_solve_exact(const LinearProgram& program) {
    Simplex<ExactPolicy> simplex(program);
    LpSolution solution;
    solution.status = simplex.solve();
    if (solution.status == LpStatus::Optimal) {
        solution.value = simplex.objective_value();
        solution.x.reserve(program.num_vars);
        for (int v = 0; v < program.num_vars; ++v) solution.x.push_back(simplex.variable_value(v));
    }
    return solution;
}

LpFloatSolution lp_solve_float(const LinearProgram& program) {
    Simplex<FloatPolicy> simplex(program);
    LpFloatSolution solution;
    solution.status = simplex.solve();
    if (solution.status == LpStatus::Optimal) {
        solution.value = simplex.objective_value();
        solution.x.reserve(program.num_vars);
        for (int v = 0; v < program.num_vars; ++v) solution.x.push_back(simplex.variable_value(v));
    }
    return solution;
}

}  // namespace pwe
