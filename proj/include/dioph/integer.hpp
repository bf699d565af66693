// Exact integer utilities on top of GMP: perfect squares, primality, factoring.

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace dioph {

// Arbitrary-precision signed integer. Every integer quantity in the toolkit
// (tuple elements, Pell solutions, recurrence terms) lives here; there is no
// fixed-width fallback anywhere on a correctness path.
using Integer = mpz_class;

// Floor of the square root, n >= 0.
Integer isqrt_floor(const Integer& n);

// The exact square root iff n is a perfect square, otherwise nullopt.
// Throws std::domain_error for n < 0.
std::optional<Integer> isqrt_exact(const Integer& n);

bool is_square(const Integer& n);

struct Primality {
    bool prime = false;
    // true when decided by the fixed-witness Miller-Rabin set (valid below
    // 2^64); false when the probabilistic path (error < 2^-128) was used.
    bool deterministic = true;
};

// Primality with the regime flag. n < 2 is composite/unit, never an error.
Primality classify_prime(const Integer& n);
bool is_prime(const Integer& n);

// Prime factorization of |n|, n != 0, as (prime, exponent) pairs sorted by
// prime. Trial division plus Pollard-Brent rho; exact at any desk-scale size.
std::vector<std::pair<Integer, int>> factorize(const Integer& n);

// omega(|n|): number of distinct prime factors.
int distinct_prime_factors(const Integer& n);

}  // namespace dioph
