#include "pwe/sdp.hpp"

#include "pwe/errors.hpp"

#include <algorithm>
#include <cmath>

namespace pwe {

namespace {

struct Triangle {
    int i, j;            // matrix indices, i < j
    double si, sj, sij;  // sign pattern; constraint si*X0i + sj*X0j + sij*Xij >= -1
};

std::vector<Triangle> triangle_constraints(int m) {
    std::vector<Triangle> tris;
    tris.reserve(2 * m * (m - 1));
    for (int i = 1; i <= m; ++i)
        for (int j = i + 1; j <= m; ++j) {
            tris.push_back({i, j, 1.0, 1.0, 1.0});
            tris.push_back({i, j, -1.0, 1.0, -1.0});
            tris.push_back({i, j, 1.0, -1.0, -1.0});
            tris.push_back({i, j, -1.0, -1.0, 1.0});
        }
    return tris;
}

double triangle_value(const Triangle& t, const Eigen::MatrixXd& X) {
    return t.si * X(0, t.i) + t.sj * X(0, t.j) + t.sij * X(t.i, t.j);
}

// Augmented-Lagrangian solver: the inner subproblems over the PSD cone are
// handled by FISTA with warm starts; multipliers carry the accuracy so the
// penalty weight can stay moderate.
class AugmentedLagrangianSdp {
  public:
    AugmentedLagrangianSdp(const DegreeTwoSdp& prob, const SdpOptions& opt)
        : prob_(prob), opt_(opt), dim_(prob.m + 1), tris_(triangle_constraints(prob.m)) {
        y_ = Eigen::VectorXd::Zero(dim_);
        z_ = Eigen::VectorXd::Zero(static_cast<long>(tris_.size()));
    }

    Eigen::MatrixXd run(int* outer_done) {
        Eigen::MatrixXd X = Eigen::MatrixXd::Identity(dim_, dim_);
        Eigen::MatrixXd best = X;
        double best_obj = -1e300;
        double prev_feas = 1e300, prev_obj = -1e300;
        int calm = 0;
        int outer = 0;
        for (outer = 0; outer < opt_.max_outer; ++outer) {
            solve_inner(X);
            const double feas = feasibility(X);
            const double obj = objective(X);
            for (int a = 0; a < dim_; ++a) y_(a) += mu_ * (X(a, a) - 1.0);
            for (size_t k = 0; k < tris_.size(); ++k)
                z_(k) = std::max(0.0, z_(k) - mu_ * (triangle_value(tris_[k], X) + 1.0));

            if (feas <= opt_.feas_tol) {
                if (obj > best_obj) {
                    best_obj = obj;
                    best = X;
                }
                if (std::fabs(obj - prev_obj) <= 2e-7 * (1.0 + std::fabs(obj))) {
                    if (++calm >= 3) break;
                } else {
                    calm = 0;
                }
                prev_obj = obj;
            } else {
                calm = 0;
            }
            if (feas > 0.6 * prev_feas && feas > opt_.feas_tol) mu_ = std::min(mu_ * 2.0, 2e5);
            prev_feas = feas;
        }
        if (outer_done) *outer_done = std::min(outer + 1, opt_.max_outer);
        return best_obj > -1e299 ? best : X;
    }

  private:
    const DegreeTwoSdp& prob_;
    const SdpOptions& opt_;
    const int dim_;
    const std::vector<Triangle> tris_;
    Eigen::VectorXd y_, z_;
    double mu_ = 16.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig_;

    double objective(const Eigen::MatrixXd& X) const {
        return (prob_.C.cwiseProduct(X)).sum() + prob_.c0;
    }

    double feasibility(const Eigen::MatrixXd& X) const {
        double worst = 0.0;
        for (int a = 0; a < dim_; ++a) worst = std::max(worst, std::fabs(X(a, a) - 1.0));
        for (const auto& t : tris_) worst = std::max(worst, -(triangle_value(t, X) + 1.0));
        return worst;
    }

    double al_value(const Eigen::MatrixXd& X) const {
        double val = -objective(X);
        for (int a = 0; a < dim_; ++a) {
            const double h = X(a, a) - 1.0;
            val += y_(a) * h + 0.5 * mu_ * h * h;
        }
        for (size_t k = 0; k < tris_.size(); ++k) {
            const double g = triangle_value(tris_[k], X) + 1.0;
            const double active = std::max(0.0, z_(k) - mu_ * g);
            val += (active * active - z_(k) * z_(k)) / (2.0 * mu_);
        }
        return val;
    }

    void al_gradient(const Eigen::MatrixXd& X, Eigen::MatrixXd& grad) const {
        grad = -prob_.C;
        for (int a = 0; a < dim_; ++a) grad(a, a) += y_(a) + mu_ * (X(a, a) - 1.0);
        for (size_t k = 0; k < tris_.size(); ++k) {
            const auto& t = tris_[k];
            const double g = triangle_value(t, X) + 1.0;
            const double active = std::max(0.0, z_(k) - mu_ * g);
            if (active == 0.0) continue;
            const double hi = 0.5 * active * t.si;
            const double hj = 0.5 * active * t.sj;
            const double hij = 0.5 * active * t.sij;
            grad(0, t.i) -= hi;
            grad(t.i, 0) -= hi;
            grad(0, t.j) -= hj;
            grad(t.j, 0) -= hj;
            grad(t.i, t.j) -= hij;
            grad(t.j, t.i) -= hij;
        }
    }

    void project_psd(Eigen::MatrixXd& X) {
        eig_.compute(X);
        const Eigen::VectorXd lambda = eig_.eigenvalues().cwiseMax(0.0);
        X.noalias() = eig_.eigenvectors() * lambda.asDiagonal() * eig_.eigenvectors().transpose();
    }

    void solve_inner(Eigen::MatrixXd& X) {
        const double step = 1.0 / (mu_ * (2.0 + 3.0 * prob_.m));
        Eigen::MatrixXd Y = X, Xn = X, grad(dim_, dim_);
        double t = 1.0;
        double current = al_value(X);
        for (int inner = 0; inner < opt_.max_inner; ++inner) {
            al_gradient(Y, grad);
            Xn = Y - step * grad;
            project_psd(Xn);
            const double value = al_value(Xn);
            if (value > current) {  // adaptive restart of the momentum
                Y = X;
                t = 1.0;
                continue;
            }
            const double tn = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
            Y = Xn + ((t - 1.0) / tn) * (Xn - X);
            const double move = (Xn - X).norm();
            X.swap(Xn);
            current = value;
            t = tn;
            if (move <= 1e-11 * (1.0 + X.norm())) break;
        }
    }
};

}  // namespace

DegreeTwoSdp build_delegation_sdp(const Instance& inst) {
    DegreeTwoSdp prob;
    prob.m = inst.num_signals();
    const int dim = prob.m + 1;
    prob.C = Eigen::MatrixXd::Zero(dim, dim);
    prob.c0 = 0.0;

    auto add = [&](int a, int b, double v) {
        prob.C(a, b) += v;
        prob.C(b, a) += v;
    };
    for (int s = 0; s < inst.num_states(); ++s) {
        const auto& nbhd = inst.state_signals[s];
        if (nbhd.size() > 2) throw PreconditionError("SDP solver requires max state degree 2");
        const int i = nbhd.front() + 1;
        const int j = nbhd.back() + 1;  // parallel edge when degree 1
        const double q = rational_to_double(inst.states[s].q);
        const double sign = inst.states[s].acceptable ? -1.0 : 1.0;
        prob.c0 += inst.states[s].acceptable ? 0.75 * q : 0.25 * q;
        add(0, i, sign * q / 8.0);
        add(0, j, sign * q / 8.0);
        add(i, j, sign * q / 8.0);
        prob.state_pairs.push_back({i, j});
    }
    return prob;
}

double evaluate_sdp_objective(const DegreeTwoSdp& prob, const Eigen::MatrixXd& X) {
    return (prob.C.cwiseProduct(X)).sum() + prob.c0;
}

SdpSolution sdp_solve(const DegreeTwoSdp& prob, const SdpOptions& opt) {
    const int dim = prob.m + 1;
    AugmentedLagrangianSdp solver(prob, opt);
    int outer = 0;
    const Eigen::MatrixXd gram = solver.run(&outer);

    // Recover unit vectors by symmetric factorization with eigenvalue
    // clamping at zero, then renormalize the rows.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
    const Eigen::VectorXd lambda = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    Eigen::MatrixXd W = eig.eigenvectors() * lambda.asDiagonal();
    for (int a = 0; a < dim; ++a) {
        const double norm = W.row(a).norm();
        if (norm > 1e-9)
            W.row(a) /= norm;
        else
            W(a, a) = 1.0;
    }

    SdpSolution sol;
    sol.vectors = W;
    const Eigen::MatrixXd G = W * W.transpose();
    sol.objective = evaluate_sdp_objective(prob, G);
    const auto tris = triangle_constraints(prob.m);
    double worst = 0.0;
    for (int a = 0; a < dim; ++a) worst = std::max(worst, std::fabs(G(a, a) - 1.0));
    for (const auto& t : tris) worst = std::max(worst, -(triangle_value(t, G) + 1.0));
    sol.max_residual = worst;
    sol.outer_iterations = outer;
    sol.converged = sol.max_residual <= 64.0 * opt.feas_tol;
    return sol;
}

double gram_min_eigenvalue(const Eigen::MatrixXd& vectors) {
    const Eigen::MatrixXd G = vectors * vectors.transpose();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(G);
    return eig.eigenvalues().minCoeff();
}

}  // namespace pwe
