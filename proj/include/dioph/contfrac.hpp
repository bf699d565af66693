// Continued fractions: periodic expansion of sqrt(D) via the exact (P, Q)
// state recursion, finite expansions of rationals, convergents, and partial
// quotients of a real known only through a certified enclosure.

#pragma once

#include <cstddef>
#include <vector>

#include "dioph/hpreal.hpp"
#include "dioph/integer.hpp"

namespace dioph {

struct ContinuedFraction {
    // head holds the integer part (and, for rationals, every further term).
    std::vector<Integer> head;
    // Nonempty exactly for quadratic irrationals; repeats forever.
    std::vector<Integer> period;

    bool periodic() const { return !period.empty(); }
};

// Periodic expansion of sqrt(D); D >= 2 and not a perfect square.
ContinuedFraction cf_sqrt(const Integer& D);

// Finite expansion of num/den, den > 0, last term > 1 (canonical form).
ContinuedFraction cf_rational(const Integer& num, const Integer& den);

struct Convergent {
    Integer p, q;
};

// First `count` convergents, unrolling the period as needed. A rational with
// fewer terms yields fewer convergents.
std::vector<Convergent> convergents(const ContinuedFraction& cf, std::size_t count);

// Convergents of a real carried as a certified enclosure. Each partial
// quotient is emitted only while both endpoints agree on it, so every
// convergent returned is a true convergent of every real inside the
// enclosure, in particular of the represented value.
struct CertifiedConvergents {
    std::vector<Convergent> items;
    // false when the expansion stopped before reaching the requested
    // denominator.
    bool reached_target = false;
    // The enclosure was a point rational whose expansion terminated; more
    // precision cannot extend it.
    bool rational_exhausted = false;
};
// Collects convergents until the denominator exceeds q_target, then `extra`
// more of them.
CertifiedConvergents certified_convergents(const HPReal& x, const Integer& q_target, int extra = 0);

}  // namespace dioph
