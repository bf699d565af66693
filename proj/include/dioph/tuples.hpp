// Diophantine tuples: membership and regularity predicates, the {2, b(k)}
// pair, the c-family of third elements, regular extensions d+-, and the
// brute-force extension search used as an independent oracle.

#pragma once

#include <array>
#include <vector>

#include "dioph/integer.hpp"
#include "dioph/pell.hpp"

namespace dioph {

// Every pairwise product increased by one must be a perfect square.
// Throws on duplicates or non-positive entries.
bool is_diophantine_tuple(const std::vector<Integer>& xs);

// (c - b - a)^2 == 4(ab + 1); inputs must form a Diophantine triple.
bool is_regular_triple(const Integer& a, const Integer& b, const Integer& c);

// (d + c - a - b)^2 == 4(ab + 1)(cd + 1); inputs must form a Diophantine
// quadruple (evaluated on the sorted set, the identity is permutation
// invariant for sorted entries).
bool is_regular_quadruple(const Integer& a, const Integer& b, const Integer& c, const Integer& d);

struct ExtensionPair {
    Integer d_plus, d_minus;
};

// d = a + b + c + 2(abc +- rst). Verifies the three product identities
// a d + 1 = (at +- rs)^2 etc. before returning.
ExtensionPair d_plus_minus(const Integer& a, const Integer& b, const Integer& c);

struct Pair2B {
    Integer k;  // >= 1
    Integer b;  // 2k(k+1)
    Integer r;  // 2k+1, with 2b + 1 = r^2
};

Pair2B pair_from_k(const Integer& k);

// The triple {2, b, c} with c drawn from the three closed-form families per
// sign. c may be smaller than b (nu = 1, sign -): triple() reorders.
struct TripleFamily {
    Pair2B pair;
    int nu = 1;    // 1, 2 or 3
    int sign = 1;  // +1 or -1
    Integer c;
    Integer s;  // 2c + 1 = s^2
    Integer t;  // bc + 1 = t^2

    std::vector<Integer> triple() const;  // sorted {2, b, c}
};

TripleFamily c_family(const Pair2B& pair, int nu, int sign);

// The regular quadruples {a, b, a+b+-2r, |4r(a+-r)(b+-r)|} of a pair; the
// minus branch is omitted when it degenerates (|a - b| = 2 gives c = 0).
std::vector<std::vector<Integer>> extend_pair_regular(const Integer& a, const Integer& b);

// b*r/12 equals the sum of the first k squares.
bool pyramidal_identity(const Integer& k);

struct Extension {
    Integer d;
    bool regular;
};

// Every d in (max(a,b,c), d_max] completing the triple to a quadruple.
// Enumerates z with cd + 1 = z^2 through the Pell structure of the (a, c)
// equation instead of scanning d linearly.
std::vector<Extension> brute_force_extensions(const Integer& a, const Integer& b, const Integer& c,
                                              const Integer& d_max);

}  // namespace dioph
