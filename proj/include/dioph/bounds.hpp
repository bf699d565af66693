// Certified analytic layer: the linear form in logarithms attached to an
// intersection case, height majorants, the lower/upper bound pair whose clash
// caps k, and the Dujella-Petho reduction engine that collapses the first
// bound on m to single digits.

#pragma once

#include <string>
#include <vector>

#include "dioph/contfrac.hpp"
#include "dioph/hpreal.hpp"
#include "dioph/recurrences.hpp"
#include "dioph/tuples.hpp"

namespace dioph {

struct LinearFormContext {
    TripleFamily fam;
    FundamentalCase fc;
    HPReal alpha, beta, gamma;
    HPReal log_alpha, log_beta, log_gamma;
    int nu = 1;
    int lambda = 0;
    long digits = 50;
};

// Encloses alpha = r + sqrt(2b), beta = s + sqrt(2c) and the case's gamma at
// the requested precision; certifies alpha, beta > 1 and gamma > 0.
LinearFormContext make_context(const TripleFamily& fam, const FundamentalCase& fc, long digits);

// Lambda = l log(alpha) - m log(beta) + log(gamma).
HPReal lambda_value(const LinearFormContext& ctx, const Integer& l, const Integer& m);

// Certifies |(l - lambda) log alpha - m log beta| < 2 sqrt(2) / sqrt(b).
bool check_two_log_gap(const TripleFamily& fam, const FundamentalCase& fc, const Integer& l,
                       const Integer& m, long digits_start, int retries = 4);

// Certifies 0 < Lambda < beta^(-2m) for a concrete intersection solution.
bool check_lambda_window(const TripleFamily& fam, const FundamentalCase& fc, const Integer& l,
                         const Integer& m, long digits_start, int retries = 4);

// 0.69 |Delta| sqrt(b) log(alpha); requires b > 4000.
HPReal lower_bound_m(const Integer& delta_abs, const Integer& b, const HPReal& alpha);

struct HeightBounds {
    HPReal h1, h2;
    Integer delta_lambda_abs;
    // X^4 - 4 s T_nu X^3 + (4 T_nu^2 + 8c + 2) X^2 - 4 s T_nu X + 1, the
    // expanded product over the four conjugates of alpha^nu / beta.
    std::array<Integer, 5> alpha1_minpoly;
    bool below_analytic_regime = false;  // k < 1000
};

HeightBounds heights(const LinearFormContext& ctx, const Integer& delta);

// Enclosure of the minimal polynomial evaluated at alpha^nu / beta; a correct
// implementation yields an interval containing zero.
HPReal alpha1_minpoly_residual(const LinearFormContext& ctx);

// Certifies (1/2) log(4 r b c) < (3/2) log alpha + log beta.
bool gamma_height_bound_holds(const LinearFormContext& ctx);

// 67578.15 (|Delta + lambda| + 3 + 2 nu) log(alpha) + 1351.57.
HPReal upper_bound_m(const LinearFormContext& ctx, const Integer& delta);

// Largest integer n with n - 0.07 < 289.264 (log n + 0.38)^2.
Integer b_prime_fixpoint(long digits);
// Largest integer n with log n + 0.38 <= 7.5.
Integer b_prime_small_branch(long digits);

struct BoundReport {
    Integer k;
    int nu, sign, lambda;
    Integer delta_abs;
    HPReal lower, upper;
    bool contradiction = false;  // certified lower >= upper
};

BoundReport branch_bound_report(const TripleFamily& fam, const FundamentalCase& fc,
                                const Integer& delta_abs, long digits);

// Certifies that for this k every (nu, lambda, |Delta| >= 1) branch has
// lower_bound_m >= upper_bound_m, i.e. no admissible m remains.
bool k_excluded_by_bounds(const Integer& k, long digits);

struct GlobalBound {
    HPReal sqrt_b_limit;
    Integer k_max;
};

// Combines the two bounds over nu <= nu_max, lambda in {-1,0,1}, |Delta| >= 1
// exactly as the ratio maximization dictates, and converts the certified
// sqrt(b) cap into an integer bound on k.
GlobalBound global_k_bound(long digits, int nu_max = 3);

struct ReductionParams {
    HPReal kappa, mu, A, B;
    Integer L;   // cap on the coefficient multiplying kappa
    Integer M;   // current bound on m
    long digits = 50;
    int skip = 0;  // convergents to pass over beyond the first admissible one
};

enum class BdStatus { NewBound, IncreaseQ, IncreasePrecision };

struct BdOutcome {
    BdStatus status;
    Integer bound;  // meaningful for NewBound
    Integer q_used;
};

// One Dujella-Petho step: pick the convergent p/q of kappa with q > 6L
// (skipping `skip` of them), form eps = ||mu q|| - L ||kappa q|| and, when
// eps is certified positive, cap m by log(A q / eps) / log B.
BdOutcome bd_reduce(const ReductionParams& params);

struct ReductionResult {
    Integer final_bound;
    int rounds = 0;
    bool converged = false;
    long digits_used = 0;
    std::vector<std::string> notes;
};

// Iterates bd_reduce from M0 until the bound reaches <= 3 or stabilizes;
// reports failure after five rounds.
ReductionResult reduce_case(const TripleFamily& fam, const FundamentalCase& fc, const Integer& M0,
                            long digits);

// First reduction input everywhere: 1.33 * 10^18.
const Integer& first_reduction_bound();

// Default working precision for a reduction from bound M.
long default_digits_for(const Integer& M);

}  // namespace dioph
