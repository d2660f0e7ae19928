#include "pwe/oracle.hpp"

#include "pwe/errors.hpp"
#include "pwe/persuasion.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <algorithm>

namespace pwe {

DelegationEvaluator::DelegationEvaluator(const Instance& inst) {
    m_ = inst.num_signals();
    if (m_ > 62) throw PreconditionError("delegation evaluator capped at 62 signals");

    const int n = inst.num_states();
    nbhd_.resize(n);
    acceptable_.resize(n);
    den_ = 1;
    for (int s = 0; s < n; ++s) {
        std::uint64_t mask = 0;
        for (int g : inst.state_signals[s]) mask |= std::uint64_t{1} << g;
        nbhd_[s] = mask;
        acceptable_[s] = inst.states[s].acceptable ? 1 : 0;
        mpz_lcm(den_.get_mpz_t(), den_.get_mpz_t(), inst.states[s].q.get_den().get_mpz_t());
    }
    wz_.resize(n);
    for (int s = 0; s < n; ++s) wz_[s] = inst.states[s].q.get_num() * (den_ / inst.states[s].q.get_den());

    fits64_ = mpz_sizeinbase(den_.get_mpz_t(), 2) <= 63;
    if (fits64_) {
        w64_.resize(n);
        for (int s = 0; s < n; ++s) w64_[s] = mpz_get_ui(wz_[s].get_mpz_t());
    }
}

std::uint64_t DelegationEvaluator::value64(std::uint64_t mask) const {
    std::uint64_t total = 0;
    const size_t n = nbhd_.size();
    for (size_t s = 0; s < n; ++s) {
        const bool reach = (nbhd_[s] & mask) != 0;
        if (reach == static_cast<bool>(acceptable_[s])) total += w64_[s];
    }
    return total;
}

mpz_class DelegationEvaluator::value_mpz(std::uint64_t mask) const {
    mpz_class total = 0;
    for (size_t s = 0; s < nbhd_.size(); ++s) {
        const bool reach = (nbhd_[s] & mask) != 0;
        if (reach == static_cast<bool>(acceptable_[s])) total += wz_[s];
    }
    return total;
}

Rational DelegationEvaluator::utility(std::uint64_t mask) const {
    const mpz_class num = fits64_ ? mpz_class(static_cast<unsigned long>(value64(mask))) : value_mpz(mask);
    mpq_class value(num, den_);
    value.canonicalize();
    return value;
}

std::pair<Rational, std::uint64_t> DelegationEvaluator::scan_serial() const {
    const std::uint64_t top = std::uint64_t{1} << m_;
    std::uint64_t best_mask = 0;
    if (fits64_) {
        std::uint64_t best = value64(0);
        for (std::uint64_t mask = 1; mask < top; ++mask) {
            const std::uint64_t v = value64(mask);
            if (v > best) {
                best = v;
                best_mask = mask;
            }
        }
    } else {
        mpz_class best = value_mpz(0);
        for (std::uint64_t mask = 1; mask < top; ++mask) {
            mpz_class v = value_mpz(mask);
            if (v > best) {
                best = v;
                best_mask = mask;
            }
        }
    }
    return {utility(best_mask), best_mask};
}

std::pair<Rational, std::uint64_t> DelegationEvaluator::scan_parallel() const {
    const std::uint64_t top = std::uint64_t{1} << m_;
#ifndef _OPENMP
    return scan_serial();
#else
    if (!fits64_ || top < 4096) return scan_serial();

    std::uint64_t global_best = 0, global_mask = 0;
#pragma omp parallel
    {
        std::uint64_t best = 0, best_mask = std::uint64_t(-1);
#pragma omp for schedule(static)
        for (long long mask = 0; mask < static_cast<long long>(top); ++mask) {
            const std::uint64_t v = value64(static_cast<std::uint64_t>(mask));
            if (v > best || (v == best && static_cast<std::uint64_t>(mask) < best_mask)) {
                best = v;
                best_mask = static_cast<std::uint64_t>(mask);
            }
        }
#pragma omp critical
        {
            if (best > global_best || (best == global_best && best_mask < global_mask)) {
                global_best = best;
                global_mask = best_mask;
            }
        }
    }
    return {utility(global_mask), global_mask};
#endif
}

namespace {

DecisionScheme mask_to_psi(int m, std::uint64_t mask) {
    DecisionScheme psi;
    psi.deterministic = true;
    psi.accept_prob.assign(m, Rational(0));
    for (int g = 0; g < m; ++g)
        if ((mask >> g) & 1u) psi.accept_prob[g] = 1;
    return psi;
}

DelegationOracleResult delegation_oracle_impl(const Instance& inst, bool parallel) {
    if (inst.num_signals() > 22) throw PreconditionError("delegation oracle capped at 22 signals");
    const DelegationEvaluator eval(inst);
    const auto [utility, mask] = parallel ? eval.scan_parallel() : eval.scan_serial();
    DelegationOracleResult result;
    result.utility = utility;
    result.best_mask = mask;
    result.psi = mask_to_psi(inst.num_signals(), mask);
    return result;
}

PersuasionOracleResult persuasion_oracle_impl(const Instance& inst, bool parallel) {
    const int m = inst.num_signals();
    if (m > 18) throw PreconditionError("persuasion oracle capped at 18 signals");
    const std::uint32_t top = std::uint32_t{1} << m;

    std::uint32_t best_mask = 0;
    Rational best_value = 0;  // empty partition is feasible with value 0

#ifdef _OPENMP
    if (parallel) {
#pragma omp parallel
        {
            std::uint32_t local_mask = 0;
            Rational local_best = 0;
#pragma omp for schedule(dynamic, 64)
            for (long long mask = 1; mask < static_cast<long long>(top); ++mask) {
                const auto value = partition_value(inst, static_cast<std::uint32_t>(mask));
                if (!value) continue;
                if (*value > local_best ||
                    (*value == local_best && static_cast<std::uint32_t>(mask) < local_mask)) {
                    local_best = *value;
                    local_mask = static_cast<std::uint32_t>(mask);
                }
            }
#pragma omp critical
            {
                if (local_best > best_value || (local_best == best_value && local_mask < best_mask)) {
                    best_value = local_best;
                    best_mask = local_mask;
                }
            }
        }
    } else
#endif
    {
        for (std::uint32_t mask = 1; mask < top; ++mask) {
            const auto value = partition_value(inst, mask);
            if (value && *value > best_value) {
                best_value = *value;
                best_mask = mask;
            }
        }
    }

    std::vector<int> accept;
    for (int g = 0; g < m; ++g)
        if ((best_mask >> g) & 1u) accept.push_back(g);
    const auto scheme = optimal_for_partition(inst, partition_from_accept_set(inst, accept));
    PersuasionOracleResult result;
    result.phi = scheme->phi;
    result.utility = best_value;
    result.best_mask = best_mask;
    return result;
}

}  // namespace

std::optional<Rational> partition_value(const Instance& inst, std::uint32_t accept_mask) {
    std::vector<int> accept;
    for (int g = 0; g < inst.num_signals(); ++g)
        if ((accept_mask >> g) & 1u) accept.push_back(g);
    const auto result = optimal_for_partition(inst, partition_from_accept_set(inst, accept));
    if (!result) return std::nullopt;
    return result->utility;
}

DelegationOracleResult delegation_oracle(const Instance& inst) { return delegation_oracle_impl(inst, true); }
DelegationOracleResult delegation_oracle_serial(const Instance& inst) {
    return delegation_oracle_impl(inst, false);
}

PersuasionOracleResult persuasion_oracle(const Instance& inst) { return persuasion_oracle_impl(inst, true); }
PersuasionOracleResult persuasion_oracle_serial(const Instance& inst) {
    return persuasion_oracle_impl(inst, false);
}

RatioReport bounded_ratio_check(const Rational& oracle_utility, const Rational& solver_utility) {
    RatioReport report;
    if (solver_utility == 0) {
        if (oracle_utility == 0) {
            report.ratio = 1;
            return report;
        }
        report.infinite = true;
        return report;
    }
    report.ratio = oracle_utility / solver_utility;
    return report;
}

}  // namespace pwe
