#ifndef PWE_DELEGATION_HPP
#define PWE_DELEGATION_HPP

#include "pwe/instance.hpp"
#include "pwe/rational.hpp"
#include "pwe/rng.hpp"
#include "pwe/schemes.hpp"
#include "pwe/sdp.hpp"

#include <cstdint>
#include <vector>

namespace pwe {

struct DelegationResult {
    DecisionScheme psi;
    Rational utility;  // receiver utility under sender best response
};

// Better of accept-all and reject-all: max{q_A, q_R}.
DelegationResult trivial_scheme(const Instance& instance);

struct LpRoundDetail {
    Rational lp_value;                      // fractional optimum of the relaxation
    std::vector<Rational> trial_utilities;  // best of (rounded, trivial) per trial
    DelegationResult best;
};

// Randomized rounding of the delegation relaxation; returns the best of all
// trials and the trivial scheme.
DelegationResult lp_round_scheme(const Instance& instance, int trials, std::uint64_t seed);
LpRoundDetail lp_round_scheme_detail(const Instance& instance, int trials, std::uint64_t seed);

struct ThreshParams {
    double alpha = 0.8825;
    double beta = 0.0384;
    int samples = 200;
    std::uint64_t seed = 1;
};

// Gaussian threshold rounding of unit vectors: accept signal i iff the
// projection of its orthogonalized vector onto a random direction falls
// below T(xi_i), with nu(y) = alpha*y + beta.
class ThreshRounder {
  public:
    ThreshRounder(const Eigen::MatrixXd& vectors, double alpha, double beta);
    std::uint64_t sample_mask(Rng& rng) const;
    double xi(int signal) const { return xi_[signal]; }
    double nu(int signal) const { return nu_[signal]; }

  private:
    Eigen::MatrixXd wtil_;  // rows 1..m orthogonalized against row 0
    std::vector<double> xi_, nu_, threshold_;
};

struct SdpSchemeResult {
    DecisionScheme psi;
    Rational utility;
    double sdp_objective = 0.0;
    SdpSolution sdp;
};

// Degree-2 solver: SDP relaxation plus threshold rounding, floored at the
// trivial scheme.
SdpSchemeResult sdp_scheme_deg2(const Instance& instance, const ThreshParams& params);

struct SweepPoint {
    double xi_i = 0, xi_j = 0, rho = 0;
    double ratio = 0;
};

struct SweepResult {
    double or_supremum = 0, and_supremum = 0;
    SweepPoint or_argmax, and_argmax;
    std::vector<SweepPoint> flagged;  // near-zero denominator with nonzero numerator
    long feasible_points = 0;
};

struct TermRatios {
    double or_ratio = 0, and_ratio = 0;
    bool or_flagged = false, and_flagged = false;
};

// Relaxed-over-rounded ratio of both objective terms at one triple. 0/0
// evaluates to 1; a vanishing denominator with nonzero numerator is flagged.
// rho~ degenerates to 0 when both marginals are at +-1.
TermRatios thresh_term_ratios(double alpha, double beta, double xi_i, double xi_j, double rho);

// Per-term ratio sweep over the triangle-feasible grid of (xi_i, xi_j, rho).
SweepResult thresh_ratio_sweep(double alpha, double beta, double step);

DelegationResult unique_accepts_exact(const Instance& instance);
DelegationResult membership_exact(const Instance& instance);
DelegationResult laminar_states_exact(const Instance& instance);   // {N(sigma)} laminar
DelegationResult laminar_signals_exact(const Instance& instance);  // {N(theta)} laminar

}  // namespace pwe

#endif
