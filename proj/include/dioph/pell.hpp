// Generalized Pellian equations t^2 - D s^2 = N: minimal unit solution,
// complete fundamental-solution lists, Nagell class equivalence, and bounded
// solution enumeration by unit multiplication.

#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "dioph/integer.hpp"

namespace dioph {

struct PellEquation {
    Integer D;  // positive non-square
    Integer N;  // nonzero

    static PellEquation make(const Integer& D, const Integer& N);
};

struct PellSolution {
    Integer t, s;

    bool operator==(const PellSolution& o) const { return t == o.t && s == o.s; }
};

struct UnitSolution {
    Integer T, U;  // smallest positive, T^2 - D U^2 = 1
};

// Smallest positive solution of t^2 - D s^2 = 1, from the continued fraction
// of sqrt(D). Results are memoized per D.
UnitSolution minimal_unit_solution(const Integer& D);

// Minimal positive solution of t^2 - D s^2 = -1 when the period is odd.
std::optional<PellSolution> negative_unit_solution(const Integer& D);

bool solves(const PellEquation& eq, const PellSolution& sol);

// Nagell's criterion: t t' == D s s' and t s' == t' s, both mod |N|.
// Both arguments must solve eq.
bool same_class(const PellSolution& a, const PellSolution& b, const PellEquation& eq);

// 2^omega(|N|): upper bound on the number of classes with gcd(t, s) = 1.
Integer class_count_bound(const Integer& N);

// Complete list of class representatives; each has the lowest nonnegative s
// of its class (ties on the sign of t resolved toward t >= 0 when both signs
// lie in one class). Sorted by (s, t).
std::vector<PellSolution> fundamental_solutions(const PellEquation& eq);

struct TaggedSolution {
    PellSolution sol;          // t >= 0, s > 0
    std::size_t class_index;   // into fundamental_solutions(eq)
};

// All solutions with 0 < s <= s_max and t >= 0, sorted by s, each tagged with
// the class of (t, s) itself. Generated from the fundamental solutions by
// unit multiplication.
std::vector<TaggedSolution> enumerate_solutions(const PellEquation& eq, const Integer& s_max);

// Class element stepping, exposed for tests: v * (T + U sqrt D) and its
// inverse.
PellSolution unit_multiply(const PellSolution& v, const UnitSolution& u, const Integer& D);
PellSolution unit_divide(const PellSolution& v, const UnitSolution& u, const Integer& D);

}  // namespace dioph
