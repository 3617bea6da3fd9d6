// Resolver for specification nondeterminism (channel delays, hostile signals,
// random initial conditions). Decisions are keyed: the same master seed and
// the same key string always yield the same value, independent of draw order,
// so runs that differ only in their pre-history replay identically inside the
// shared window.
#pragma once

#include "tcirc/qtime.hpp"

#include <cstdint>
#include <string>

namespace tcirc {

enum class Policy { Minimal, Maximal, Uniform };

Policy policy_from_string(const std::string& s);
std::string to_string(Policy p);

class Strategy {
  public:
    explicit Strategy(std::uint64_t seed, Policy policy = Policy::Uniform)
        : seed_(seed), policy_(policy) {}

    std::uint64_t seed() const { return seed_; }
    Policy policy() const { return policy_; }

    // Strategy with a stream derived from (seed, index); used for per-trial
    // reproducibility in sweeps.
    Strategy fork(std::uint64_t index) const;

    std::uint64_t bits(const std::string& key) const;
    // Uniform dyadic rational in [0,1) resp. (0,1].
    Rat unit(const std::string& key) const;
    Rat unit_pos(const std::string& key) const;
    // Policy-directed draw from [lo, hi]: Minimal -> lo, Maximal -> hi,
    // Uniform -> lo + u*(hi - lo).
    Time draw(const std::string& key, const Time& lo, const Time& hi) const;
    // Uniform over (lo, hi] regardless of policy (used where strictness is
    // required); Minimal/Maximal pick points near/at the ends.
    Time draw_above(const std::string& key, const Time& lo, const Time& hi) const;

    std::uint64_t uniform_int(const std::string& key, std::uint64_t n) const;  // in [0, n)

  private:
    std::uint64_t seed_;
    Policy policy_;
};

}  // namespace tcirc
