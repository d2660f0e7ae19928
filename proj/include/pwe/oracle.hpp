#ifndef PWE_ORACLE_HPP
#define PWE_ORACLE_HPP

#include "pwe/instance.hpp"
#include "pwe/rational.hpp"
#include "pwe/schemes.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace pwe {

// Exact utility of a deterministic decision scheme, given as a bitmask of
// accepted signals. Priors are rescaled once to a common denominator; masks
// are then evaluated in integer arithmetic (64-bit fast path, GMP fallback).
class DelegationEvaluator {
  public:
    explicit DelegationEvaluator(const Instance& instance);

    Rational utility(std::uint64_t accept_mask) const;
    int num_signals() const { return m_; }

    // Best mask over [0, 2^m); ties resolve to the smallest mask.
    std::pair<Rational, std::uint64_t> scan_serial() const;
    std::pair<Rational, std::uint64_t> scan_parallel() const;

  private:
    int m_ = 0;
    std::vector<std::uint64_t> nbhd_;
    std::vector<char> acceptable_;
    bool fits64_ = false;
    std::vector<std::uint64_t> w64_;
    std::vector<mpz_class> wz_;
    mpz_class den_;

    std::uint64_t value64(std::uint64_t mask) const;
    mpz_class value_mpz(std::uint64_t mask) const;
};

struct DelegationOracleResult {
    DecisionScheme psi;
    Rational utility;
    std::uint64_t best_mask = 0;
};

// Enumerates all 2^m deterministic decision schemes; m <= 22.
DelegationOracleResult delegation_oracle(const Instance& instance);
DelegationOracleResult delegation_oracle_serial(const Instance& instance);

// Value of the two-action partition LP without materializing the scheme;
// nullopt when no scheme implements the partition. The empty accept set is
// feasible with value 0 by definition.
std::optional<Rational> partition_value(const Instance& instance, std::uint32_t accept_mask);

struct PersuasionOracleResult {
    SignalingScheme phi;
    Rational utility;
    std::uint32_t best_mask = 0;
};

// Maximizes the partition LP over all 2^m accept sets; m <= 18.
PersuasionOracleResult persuasion_oracle(const Instance& instance);
PersuasionOracleResult persuasion_oracle_serial(const Instance& instance);

struct RatioReport {
    bool infinite = false;
    Rational ratio;  // oracle / solver when finite
};

RatioReport bounded_ratio_check(const Rational& oracle_utility, const Rational& solver_utility);

}  // namespace pwe

#endif
