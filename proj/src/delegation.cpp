#include "pwe/delegation.hpp"

#include "pwe/errors.hpp"
#include "pwe/lp.hpp"
#include "pwe/normal.hpp"
#include "pwe/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace pwe {

namespace {

DecisionScheme mask_to_psi(int m, std::uint64_t mask) {
    DecisionScheme psi;
    psi.deterministic = true;
    psi.accept_prob.assign(m, Rational(0));
    for (int g = 0; g < m; ++g)
        if ((mask >> g) & 1u) psi.accept_prob[g] = 1;
    return psi;
}

}  // namespace

DelegationResult trivial_scheme(const Instance& inst) {
    const Rational qa = inst.q_acceptable();
    const Rational qr = inst.q_rejectable();
    DelegationResult result;
    result.psi.deterministic = true;
    if (qa >= qr) {
        result.psi.accept_prob.assign(inst.num_signals(), Rational(1));
        result.utility = qa;
    } else {
        result.psi.accept_prob.assign(inst.num_signals(), Rational(0));
        result.utility = qr;
    }
    return result;
}

LpRoundDetail lp_round_scheme_detail(const Instance& inst, int trials, std::uint64_t seed) {
    const int n = inst.num_states();
    const int m = inst.num_signals();

    LinearProgram lp;
    std::vector<int> psi_var(m), c_var(n);
    for (int g = 0; g < m; ++g) psi_var[g] = lp.add_var(Rational(0), Rational(1));
    for (int s = 0; s < n; ++s) c_var[s] = lp.add_var(inst.states[s].q, Rational(1));
    for (int s = 0; s < n; ++s) {
        std::vector<std::pair<int, Rational>> row;
        for (int g : inst.state_signals[s]) row.push_back({psi_var[g], Rational(1)});
        const Rational deg(static_cast<long>(inst.state_signals[s].size()));
        if (inst.states[s].acceptable) {
            row.push_back({c_var[s], Rational(-1)});
            lp.add_row(std::move(row), RowSense::GE, Rational(0));
        } else {
            row.push_back({c_var[s], deg});
            lp.add_row(std::move(row), RowSense::LE, deg);
        }
    }
    const LpSolution relax = lp_solve_exact(lp);

    LpRoundDetail detail;
    detail.lp_value = relax.value;

    const DelegationEvaluator eval(inst);
    const DelegationResult trivial = trivial_scheme(inst);

    Rational best_utility = trivial.utility;
    std::uint64_t best_mask = 0;
    bool best_is_trivial = true;

    detail.trial_utilities.reserve(trials);
    for (int t = 0; t < trials; ++t) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
        std::uint64_t mask = 0;
        for (int g = 0; g < m; ++g) {
            const Rational u(rng.uniform());
            if (u < relax.x[psi_var[g]]) mask |= std::uint64_t{1} << g;
        }
        const Rational utility = eval.utility(mask);
        detail.trial_utilities.push_back(std::max(utility, trivial.utility));
        if (utility > best_utility) {
            best_utility = utility;
            best_mask = mask;
            best_is_trivial = false;
        }
    }

    detail.best.utility = best_utility;
    detail.best.psi = best_is_trivial ? trivial.psi : mask_to_psi(m, best_mask);
    return detail;
}

DelegationResult lp_round_scheme(const Instance& inst, int trials, std::uint64_t seed) {
    return lp_round_scheme_detail(inst, trials, seed).best;
}

ThreshRounder::ThreshRounder(const Eigen::MatrixXd& vectors, double alpha, double beta) {
    const int dim = static_cast<int>(vectors.rows());
    const int m = dim - 1;
    wtil_ = Eigen::MatrixXd::Zero(m, dim);
    xi_.resize(m);
    nu_.resize(m);
    threshold_.resize(m);
    const Eigen::VectorXd w0 = vectors.row(0);
    for (int i = 0; i < m; ++i) {
        const Eigen::VectorXd wi = vectors.row(i + 1);
        const double xi = std::clamp(w0.dot(wi), -1.0, 1.0);
        xi_[i] = xi;
        const double nu = std::clamp(alpha * xi + beta, -1.0 + 1e-12, 1.0 - 1e-12);
        nu_[i] = nu;
        threshold_[i] = inv_normal_cdf(0.5 * (1.0 - nu));
        const double ortho2 = 1.0 - xi * xi;
        if (ortho2 > 1e-12) {
            wtil_.row(i) = (wi - xi * w0) / std::sqrt(ortho2);
        } else {
            // Degenerate vector: any fixed unit direction orthogonal to w0
            // preserves the marginal law.
            int k = 0;
            for (int c = 1; c < dim; ++c)
                if (std::fabs(w0(c)) < std::fabs(w0(k))) k = c;
            Eigen::VectorXd e = Eigen::VectorXd::Zero(dim);
            e(k) = 1.0;
            e -= e.dot(w0) * w0;
            wtil_.row(i) = e / e.norm();
        }
    }
}

std::uint64_t ThreshRounder::sample_mask(Rng& rng) const {
    const int dim = static_cast<int>(wtil_.cols());
    Eigen::VectorXd r(dim);
    for (int c = 0; c < dim; ++c) r(c) = rng.normal();
    std::uint64_t mask = 0;
    for (int i = 0; i < static_cast<int>(xi_.size()); ++i)
        if (wtil_.row(i).dot(r) <= threshold_[i]) mask |= std::uint64_t{1} << i;
    return mask;
}

SdpSchemeResult sdp_scheme_deg2(const Instance& inst, const ThreshParams& params) {
    if (std::fabs(params.alpha) + std::fabs(params.beta) > 1.0)
        throw InputError("nu(y) = alpha*y + beta must map [-1,1] into [-1,1]");

    SdpSchemeResult result;
    result.sdp = sdp_solve(build_delegation_sdp(inst));
    result.sdp_objective = result.sdp.objective;

    const DelegationEvaluator eval(inst);
    const ThreshRounder rounder(result.sdp.vectors, params.alpha, params.beta);

    const DelegationResult trivial = trivial_scheme(inst);
    Rational best_utility = trivial.utility;
    std::uint64_t best_mask = 0;
    bool best_is_trivial = true;
    for (int k = 0; k < params.samples; ++k) {
        Rng rng(derive_seed(params.seed, static_cast<std::uint64_t>(k)));
        const std::uint64_t mask = rounder.sample_mask(rng);
        const Rational utility = eval.utility(mask);
        if (utility > best_utility) {
            best_utility = utility;
            best_mask = mask;
            best_is_trivial = false;
        }
    }
    result.utility = best_utility;
    result.psi = best_is_trivial ? trivial.psi : mask_to_psi(inst.num_signals(), best_mask);
    return result;
}

TermRatios thresh_term_ratios(double alpha, double beta, double xi_i, double xi_j, double rho) {
    auto nu = [&](double y) { return std::clamp(alpha * y + beta, -1.0 + 1e-12, 1.0 - 1e-12); };
    const double denom2 = (1.0 - xi_i * xi_i) * (1.0 - xi_j * xi_j);
    const double rho_til =
        std::clamp((rho - xi_i * xi_j) / std::max(std::sqrt(denom2), 1e-12), -1.0, 1.0);
    const double ni = nu(xi_i), nj = nu(xi_j);
    const double gamma = gamma_c(ni, nj, rho_til);

    TermRatios ratios;
    auto account = [](double num, double den, double& ratio, bool& flagged) {
        if (std::fabs(num) < 1e-12 && std::fabs(den) < 1e-12)
            ratio = 1.0;  // a vanishing term approximates itself
        else if (den < 1e-12)
            flagged = true;
        else
            ratio = num / den;
    };
    account(3.0 - xi_i - xi_j - rho, 4.0 - 2.0 * ni - 2.0 * nj - 4.0 * gamma, ratios.or_ratio,
            ratios.or_flagged);
    account(1.0 + xi_i + xi_j + rho, 2.0 * ni + 2.0 * nj + 4.0 * gamma, ratios.and_ratio,
            ratios.and_flagged);
    return ratios;
}

SweepResult thresh_ratio_sweep(double alpha, double beta, double step) {
    if (!(step > 0.0 && step <= 0.5)) throw InputError("sweep step must lie in (0, 0.5]");
    const int K = static_cast<int>(std::lround(2.0 / step));
    auto grid = [&](int k) { return (2.0 * k - K) / K; };

    SweepResult result;
    for (int a = 0; a <= K; ++a) {
        const double xi_i = grid(a);
        for (int b = 0; b <= K; ++b) {
            const double xi_j = grid(b);
            for (int c = 0; c <= K; ++c) {
                const double rho = grid(c);
                const double tol = 1e-12;
                if (xi_i + xi_j + rho < -1.0 - tol || -xi_i + xi_j - rho < -1.0 - tol ||
                    xi_i - xi_j - rho < -1.0 - tol || -xi_i - xi_j + rho < -1.0 - tol)
                    continue;
                ++result.feasible_points;

                const TermRatios ratios = thresh_term_ratios(alpha, beta, xi_i, xi_j, rho);
                if (ratios.or_flagged || ratios.and_flagged)
                    result.flagged.push_back({xi_i, xi_j, rho, 0.0});
                if (!ratios.or_flagged && ratios.or_ratio > result.or_supremum) {
                    result.or_supremum = ratios.or_ratio;
                    result.or_argmax = {xi_i, xi_j, rho, ratios.or_ratio};
                }
                if (!ratios.and_flagged && ratios.and_ratio > result.and_supremum) {
                    result.and_supremum = ratios.and_ratio;
                    result.and_argmax = {xi_i, xi_j, rho, ratios.and_ratio};
                }
            }
        }
    }
    return result;
}

namespace {

int unique_accept_state(const Instance& inst) {
    int theta_a = -1;
    for (int s = 0; s < inst.num_states(); ++s)
        if (inst.states[s].acceptable) {
            if (theta_a >= 0) throw PreconditionError("solver requires unique accepts");
            theta_a = s;
        }
    if (theta_a < 0) throw PreconditionError("solver requires unique accepts");
    return theta_a;
}

}  // namespace

DelegationResult unique_accepts_exact(const Instance& inst) {
    const int theta_a = unique_accept_state(inst);
    const DelegationEvaluator eval(inst);

    DelegationResult best;
    best.psi = mask_to_psi(inst.num_signals(), 0);
    best.utility = eval.utility(0);
    for (int g : inst.state_signals[theta_a]) {
        const std::uint64_t mask = std::uint64_t{1} << g;
        const Rational utility = eval.utility(mask);
        if (utility > best.utility) {
            best.utility = utility;
            best.psi = mask_to_psi(inst.num_signals(), mask);
        }
    }
    return best;
}

DelegationResult membership_exact(const Instance& inst) {
    if (!classify(inst).proof_of_membership_shape)
        throw PreconditionError("solver requires proof-of-membership shape");
    // Accept exactly the singleton signals of acceptable states: acceptable
    // states reveal themselves, rejectable states have no accepted signal.
    std::uint64_t mask = 0;
    for (int g = 0; g < inst.num_signals(); ++g) {
        const auto& nbhd = inst.signal_states[g];
        if (nbhd.size() == 1 && inst.states[nbhd.front()].acceptable) mask |= std::uint64_t{1} << g;
    }
    DelegationResult result;
    result.psi = mask_to_psi(inst.num_signals(), mask);
    result.utility = DelegationEvaluator(inst).utility(mask);
    return result;
}

DelegationResult laminar_states_exact(const Instance& inst) {
    if (!classify(inst).laminar_states) throw PreconditionError("solver requires laminar states");

    // Group signals with identical neighborhoods; distinct neighborhoods of
    // one component form a containment tree.
    std::map<std::vector<int>, std::vector<int>> groups;
    for (int g = 0; g < inst.num_signals(); ++g) groups[inst.signal_states[g]].push_back(g);

    struct Node {
        std::vector<int> states;   // neighborhood
        std::vector<int> signals;  // identical-neighborhood group
        int parent = -1;
        std::vector<int> children;
        Rational accept_all;   // acceptable mass of the neighborhood
        Rational reject_own;   // rejectable mass of states whose lowest node is this
        Rational opt;
        bool opt_accepts = false;
    };
    std::vector<Node> nodes;
    for (auto& [nbhd, sigs] : groups) {
        Node node;
        node.states = nbhd;
        node.signals = std::move(sigs);
        for (int s : nbhd)
            if (inst.states[s].acceptable) node.accept_all += inst.states[s].q;
        nodes.push_back(std::move(node));
    }
    std::vector<int> order(nodes.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return nodes[a].states.size() > nodes[b].states.size();
    });
    // Parent = smallest strict superset; scan candidates from small to large.
    for (size_t oi = 0; oi < order.size(); ++oi) {
        const int v = order[oi];
        for (size_t pj = oi; pj-- > 0;) {
            const int u = order[pj];
            if (nodes[u].states.size() == nodes[v].states.size()) continue;
            if (std::includes(nodes[u].states.begin(), nodes[u].states.end(), nodes[v].states.begin(),
                              nodes[v].states.end())) {
                nodes[v].parent = u;
                nodes[u].children.push_back(v);
                break;
            }
        }
    }
    // Lowest node of each state: the smallest neighborhood containing it.
    for (int s = 0; s < inst.num_states(); ++s) {
        if (inst.states[s].acceptable) continue;
        int lowest = -1;
        for (size_t v = 0; v < nodes.size(); ++v)
            if (std::binary_search(nodes[v].states.begin(), nodes[v].states.end(), s))
                if (lowest < 0 || nodes[v].states.size() < nodes[lowest].states.size())
                    lowest = static_cast<int>(v);
        nodes[lowest].reject_own += inst.states[s].q;
    }

    // Bottom-up: accept the whole subtree or reject here and recurse.
    for (size_t oi = order.size(); oi-- > 0;) {
        Node& node = nodes[order[oi]];
        Rational reject_path = node.reject_own;
        for (int c : node.children) reject_path += nodes[c].opt;
        if (node.accept_all >= reject_path) {
            node.opt = node.accept_all;
            node.opt_accepts = true;
        } else {
            node.opt = reject_path;
            node.opt_accepts = false;
        }
    }

    DelegationResult result;
    result.psi.deterministic = true;
    result.psi.accept_prob.assign(inst.num_signals(), Rational(0));
    result.utility = 0;

    std::vector<int> stack;
    for (size_t v = 0; v < nodes.size(); ++v)
        if (nodes[v].parent < 0) {
            result.utility += nodes[v].opt;
            stack.push_back(static_cast<int>(v));
        }
    auto accept_subtree = [&](int v, auto&& self) -> void {
        for (int g : nodes[v].signals) result.psi.accept_prob[g] = 1;
        for (int c : nodes[v].children) self(c, self);
    };
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        if (nodes[v].opt_accepts)
            accept_subtree(v, accept_subtree);
        else
            for (int c : nodes[v].children) stack.push_back(c);
    }
    return result;
}

DelegationResult laminar_signals_exact(const Instance& inst) {
    if (!classify(inst).laminar_signals) throw PreconditionError("solver requires laminar signals");

    std::map<std::vector<int>, std::vector<int>> groups;  // neighborhood -> states
    for (int s = 0; s < inst.num_states(); ++s) groups[inst.state_signals[s]].push_back(s);

    struct Node {
        std::vector<int> signals;  // the shared neighborhood
        std::vector<int> own;      // signals first appearing here
        Rational q_acc, q_rej;     // mass of states with this exact neighborhood
        int parent = -1;
        std::vector<int> children;
        Rational all_reject;   // subtree value when everything rejects
        Rational opt, acc;     // best, and best with >= 1 accept signal
        bool opt_accepts = false;
        int forced_child = -1;  // own-empty accept case: child switched to acc
    };
    std::vector<Node> nodes;
    for (auto& [nbhd, sts] : groups) {
        Node node;
        node.signals = nbhd;
        for (int s : sts)
            (inst.states[s].acceptable ? node.q_acc : node.q_rej) += inst.states[s].q;
        nodes.push_back(std::move(node));
    }
    std::vector<int> order(nodes.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return nodes[a].signals.size() > nodes[b].signals.size();
    });
    for (size_t oi = 0; oi < order.size(); ++oi) {
        const int v = order[oi];
        for (size_t pj = oi; pj-- > 0;) {
            const int u = order[pj];
            if (nodes[u].signals.size() == nodes[v].signals.size()) continue;
            if (std::includes(nodes[u].signals.begin(), nodes[u].signals.end(),
                              nodes[v].signals.begin(), nodes[v].signals.end())) {
                nodes[v].parent = u;
                nodes[u].children.push_back(v);
                break;
            }
        }
    }
    for (auto& node : nodes) {
        std::vector<char> in_child(inst.num_signals(), 0);
        for (int c : node.children)
            for (int g : nodes[c].signals) in_child[g] = 1;
        for (int g : node.signals)
            if (!in_child[g]) node.own.push_back(g);
    }

    for (size_t oi = order.size(); oi-- > 0;) {
        Node& node = nodes[order[oi]];
        node.all_reject = node.q_rej;
        for (int c : node.children) node.all_reject += nodes[c].all_reject;

        if (!node.own.empty()) {
            node.acc = node.q_acc;
            for (int c : node.children) node.acc += nodes[c].opt;
            node.forced_child = -1;
        } else {
            Rational sum = node.q_acc;
            bool child_accepts = false;
            for (int c : node.children) {
                sum += nodes[c].opt;
                if (nodes[c].opt_accepts) child_accepts = true;
            }
            if (!child_accepts) {
                // Switch the child that loses the least to its accept scheme.
                int pick = -1;
                Rational gap;
                for (int c : node.children) {
                    const Rational g = nodes[c].opt - nodes[c].acc;
                    if (pick < 0 || g < gap) {
                        pick = c;
                        gap = g;
                    }
                }
                sum -= gap;
                node.forced_child = pick;
            } else {
                node.forced_child = -1;
            }
            node.acc = sum;
        }
        if (node.acc > node.all_reject) {
            node.opt = node.acc;
            node.opt_accepts = true;
        } else {
            node.opt = node.all_reject;
            node.opt_accepts = false;
        }
    }

    DelegationResult result;
    result.psi.deterministic = true;
    result.psi.accept_prob.assign(inst.num_signals(), Rational(0));
    result.utility = 0;

    auto walk = [&](int v, bool accept_mode, auto&& self) -> void {
        Node& node = nodes[v];
        if (!accept_mode) {
            if (!node.opt_accepts) return;  // whole subtree rejects
            accept_mode = true;
        }
        if (!node.own.empty()) {
            for (int g : node.own) result.psi.accept_prob[g] = 1;
            for (int c : node.children) self(c, false, self);
        } else {
            for (int c : node.children) self(c, c == node.forced_child, self);
        }
    };
    for (size_t v = 0; v < nodes.size(); ++v)
        if (nodes[v].parent < 0) {
            result.utility += nodes[v].opt;
            walk(static_cast<int>(v), false, walk);
        }
    return result;
}

}  // namespace pwe
