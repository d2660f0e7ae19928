#ifndef PWE_SDP_HPP
#define PWE_SDP_HPP

#include "pwe/instance.hpp"

#include <Eigen/Dense>

#include <array>
#include <vector>

namespace pwe {

// Degree-2 delegation relaxation on the Gram matrix X of w_0..w_m:
// maximize <C,X> + c0 subject to diag(X) = 1, the triangle inequalities
// over all signal pairs, and X PSD. Matrix index 0 is w_0; signal g maps to
// index g+1.
struct DegreeTwoSdp {
    int m = 0;
    Eigen::MatrixXd C;
    double c0 = 0.0;
    std::vector<std::array<int, 2>> state_pairs;  // matrix indices, padded (i,i) for degree-1
};

// Pads degree-1 states with a parallel edge. Throws PreconditionError if any
// state has degree > 2.
DegreeTwoSdp build_delegation_sdp(const Instance& instance);

double evaluate_sdp_objective(const DegreeTwoSdp& problem, const Eigen::MatrixXd& gram);

struct SdpOptions {
    double feas_tol = 1e-8;
    int max_outer = 400;
    int max_inner = 3000;
};

struct SdpSolution {
    Eigen::MatrixXd vectors;  // (m+1) rows, unit length; Gram = vectors * vectors^T
    double objective = 0.0;   // from the normalized Gram
    double max_residual = 0.0;
    bool converged = false;
    int outer_iterations = 0;
};

SdpSolution sdp_solve(const DegreeTwoSdp& problem, const SdpOptions& options = {});

// Smallest eigenvalue of the Gram matrix of the solution vectors.
double gram_min_eigenvalue(const Eigen::MatrixXd& vectors);

}  // namespace pwe

#endif
