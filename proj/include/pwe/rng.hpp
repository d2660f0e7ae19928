#ifndef PWE_RNG_HPP
#define PWE_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace pwe {

// Deterministic random source. All randomness in the project flows from an
// explicit 64-bit seed through this class; mt19937_64 is fully specified by
// the standard and the uniform/normal transforms below are spelled out here,
// so identical seeds give identical results on every platform.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // Uniform integer in [0, bound). bound must be positive.
    std::uint64_t below(std::uint64_t bound) { return next_u64() % bound; }

    // Uniform double in [0, 1) with 53 random mantissa bits.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Standard normal via Box-Muller; pairs are cached.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        if (u1 <= 0.0) u1 = 0x1.0p-53;
        const double u2 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 6.283185307179586476925286766559 * u2;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

  private:
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// Derived seed for trial/sample k of a run with base seed s. Monte-Carlo
// loops use one Rng(derive_seed(s, k)) per trial so they can run in any
// order (or in parallel) without changing the result.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    return seed + index;
}

}  // namespace pwe

#endif
